"""Command-line front end and the line-oriented circuit text format.

File layout (lowercase keywords, single spaces, '#' starts a comment)::

    qubits 11
    layout grid
    # unit p3 n=3
    map A[2] 2 0
    ...
    cx 0 4
    csx 4 5

Three comment forms carry metadata and survive a round trip: ``# unit``,
``# alias NAME BASE OFFSET`` and ``# mark LABEL OFFSET``.  Other comments
are ignored.
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .ir import Circuit, Gate, IRError, Kind, cancel_adjacent_pairs, gate_counts, lower, validate_connectivity
from .layout import GridLayout, LayoutError, RegisterMap
from .sim import SimError, load, run
from .verify import (UNITS, Params, VerifyError, complexity_fit, exhaustive_verify, get,
                     linearity_check, resolve, scaling_table)
from .verify import build as build_unit


class FormatError(ValueError):
    pass


# --- text format ------------------------------------------------------------------

def _fmt_value(v) -> str:
    return str(v)


def _parse_value(s: str):
    if s in ("True", "False"):
        return s == "True"
    try:
        return int(s)
    except ValueError:
        return s


def dumps(c: Circuit) -> str:
    """Canonical text of a lowered circuit with a grid layout."""
    if c.layout is None or c.registers is None:
        raise FormatError("only circuits with a layout and registers can be written")
    lines = [f"qubits {c.qubit_count}", "layout grid"]
    if c.meta:
        meta = dict(c.meta)
        head = f"# unit {meta.pop('unit', 'custom')}"
        lines.append(" ".join([head] + [f"{k}={_fmt_value(v)}" for k, v in meta.items()]))
    for alt, (base, k) in c.registers.aliases.items():
        lines.append(f"# alias {alt} {base} {k}")
    for q in range(c.qubit_count):
        name, sub = c.registers.label(q)
        row, col = c.layout.coord(q)
        lines.append(f"map {name}[{sub}] {row} {col}")
    for label, pos in c.markers:
        lines.append(f"# mark {label} {pos}")
    for g in c.gates:
        if g.kind is Kind.X:
            lines.append(f"x {g.target}")
        elif g.kind is Kind.CNOT:
            lines.append(f"cx {g.control} {g.target}")
        elif g.kind is Kind.CSX:
            lines.append(f"csx {g.control} {g.target}")
        else:
            raise FormatError(f"gate {g} is not lowered")
    return "\n".join(lines) + "\n"


def loads(text: str) -> Circuit:
    n = None
    coords: dict[int, tuple[int, int]] = {}
    cells: dict[str, dict[int, int]] = {}
    aliases: dict[str, tuple[str, int]] = {}
    markers: list[tuple[str, int]] = []
    meta: dict = {}
    gates: list[Gate] = []
    seen_layout = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        words = line.split()
        try:
            if words[0] == "#" or line.startswith("#"):
                words = line[1:].split()
                if words[:1] == ["unit"] and len(words) >= 2:
                    meta["unit"] = words[1]
                    for kv in words[2:]:
                        k, _, v = kv.partition("=")
                        meta[k] = _parse_value(v)
                elif words[:1] == ["alias"] and len(words) == 4:
                    aliases[words[1]] = (words[2], int(words[3]))
                elif words[:1] == ["mark"] and len(words) == 3:
                    markers.append((words[1], int(words[2])))
                continue
            key = words[0]
            if key == "qubits":
                n = int(words[1])
            elif key == "layout":
                if words[1:] != ["grid"]:
                    raise FormatError("only 'layout grid' is supported")
                seen_layout = True
            elif key == "map":
                name, _, rest = words[1].partition("[")
                sub = int(rest.rstrip("]"))
                q = len(coords)
                coords[q] = (int(words[2]), int(words[3]))
                cells.setdefault(name, {})[sub] = q
            elif key == "x" and len(words) == 2:
                gates.append(Gate(Kind.X, int(words[1])))
            elif key in ("cx", "csx") and len(words) == 3:
                kind = Kind.CNOT if key == "cx" else Kind.CSX
                gates.append(Gate(kind, int(words[2]), int(words[1])))
            else:
                raise FormatError(f"unknown statement {key!r}")
        except (ValueError, IndexError, IRError) as exc:
            raise FormatError(f"line {lineno}: {exc}") from None
    if n is None or not seen_layout:
        raise FormatError("missing 'qubits' or 'layout' header")
    if len(coords) != n:
        raise FormatError(f"{len(coords)} map lines for {n} qubits")
    try:
        layout = GridLayout(tuple(coords[q] for q in range(n)))
        return Circuit(n, tuple(gates), layout, RegisterMap(cells, aliases), tuple(markers), meta)
    except (IRError, LayoutError) as exc:
        raise FormatError(str(exc)) from None


# --- shared options -----------------------------------------------------------------

def _unit_options(f):
    opts = [
        click.option("--n", "n", type=int, default=None, help="Operand width N."),
        click.option("--m", "m", type=int, default=None, help="Divisor width M."),
        click.option("--variant", type=click.Choice(["I", "II", "III"]), default=None,
                     help="Adder variant, for the 'adder' alias."),
        click.option("--zero-safe", is_flag=True, help="Divider: extra flag digit for b = 0."),
        click.option("--with-remainder/--no-remainder", default=True,
                     help="Divider: keep the final add-back so A holds the remainder."),
        click.option("--literal", is_flag=True,
                     help="Multiplier/divider: add signed zero as written (wrong for b = 0)."),
        click.option("--carry-in", is_flag=True,
                     help="plus1-tilde: take the carry from C_0 instead of a hardwired one."),
    ]
    for o in reversed(opts):
        f = o(f)
    return f


def _params(n, m, variant, zero_safe, with_remainder, literal, carry_in) -> Params:
    return Params(n=n, m=m, variant=variant, zero_safe=zero_safe, with_remainder=with_remainder,
                  literal=literal, hardwired=not carry_in)


def _fail(msg: str, code: int = 1):
    click.echo(f"error: {msg}", err=True)
    sys.exit(code)


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Grid-local quantum arithmetic circuits built from X, CNOT and controlled sqrt(X)."""


@main.command()
@click.argument("unit")
@_unit_options
@click.option("-o", "out", type=click.Path(dir_okay=False), default=None, help="Output file.")
def build(unit, out, **kw):
    """Write the lowered circuit of UNIT in the text format."""
    try:
        u, p = resolve(unit, _params(**kw))
        c = lower(u.build(p))
    except (VerifyError, LayoutError, ValueError) as exc:
        _fail(str(exc), 2)
    bad = validate_connectivity(c)
    if bad:
        _fail(f"internal error: {len(bad)} long-range gates in {unit}")
    _emit(dumps(c), out)


def _read_file(path: str) -> Circuit:
    try:
        return loads(Path(path).read_text())
    except OSError as exc:
        _fail(f"cannot read {path}: {exc}", 2)
    except FormatError as exc:
        _fail(f"{path}: {exc}", 2)


def _meta_params(c: Circuit) -> Params:
    m = c.meta
    return Params(n=m.get("n"), m=m.get("m"), zero_safe=m.get("zero_safe", False),
                  with_remainder=m.get("with_remainder", True),
                  literal=m.get("literal", False), hardwired=m.get("hardwired", True))


def _signed(v: int, width: int) -> str:
    s = v - (1 << width) if v >> (width - 1) else v
    return f"{s} (0b{v:0{width}b})"


def _outputs(unit: str, c: Circuit, p: Params, st, case) -> list[str]:
    r = c.registers
    if unit == "divider":
        top = p.n + p.m if p.zero_safe else p.n + p.m - 1
        parts = [f"Q = {get(st, r, 'C', p.m, top)}"]
        if p.with_remainder:
            parts.append(f"R = {get(st, r, 'A', 0, p.m - 1)}")
        if p.zero_safe:
            parts.append(f"flag = {get(st, r, 'C', top, top)}")
        return [", ".join(parts)]
    got = UNITS[unit].read(c, p, st, case)
    if unit == "subtractor":
        w = p.n + 1
        return [f"A = {got['A']}", f"B = {_signed(got['B'], w)}", f"C = {_signed(got['C'], w)}"]
    return [f"{k} = {v}" for k, v in got.items()]


@main.command("run")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--set", "sets", multiple=True, metavar="NAME=VALUE", help="Input register value.")
def run_cmd(path, sets):
    """Simulate a circuit file on a basis input and print its outputs."""
    c = _read_file(path)
    unit = c.meta.get("unit")
    if unit not in UNITS:
        _fail(f"{path} has no known '# unit' line; cannot locate its registers", 2)
    p = _meta_params(c)
    u = UNITS[unit]
    case = {}
    for s in sets:
        k, eq, v = s.partition("=")
        if not eq:
            _fail(f"bad assignment {s!r}", 2)
        try:
            case[k.strip().lower()] = int(v, 0)
        except ValueError:
            _fail(f"bad value in {s!r}", 2)
    wanted = set(next(iter(u.cases(p))))
    if set(case) != wanted:
        _fail(f"{unit} takes exactly: " + ", ".join(f"--set {k.upper()}=..." for k in sorted(wanted)), 2)
    try:
        st = run(c, load(c.qubit_count, u.prepare(c, p, case)))
        lines = _outputs(unit, c, p, st, case)
    except VerifyError as exc:
        _fail(str(exc), 2)
    except SimError as exc:
        _fail(f"output is not classically definite: {exc}")
    for line in lines:
        click.echo(line)
    click.echo(f"support = {st.support}")


@main.command()
@click.argument("unit")
@_unit_options
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--trials", type=int, default=32, show_default=True, help="Superposition trials.")
@click.option("-o", "out", type=click.Path(dir_okay=False), default=None)
def verify(unit, fmt, seed, trials, out, **kw):
    """Exhaustive oracle check plus seeded superposition trials."""
    try:
        p = _params(**kw)
        reports = [exhaustive_verify(unit, p), linearity_check(unit, p, trials, seed)]
    except (VerifyError, LayoutError) as exc:
        _fail(str(exc), 2)
    if fmt == "json":
        text = json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True, default=str) + "\n"
    else:
        text = "\n\n".join(r.to_text() for r in reports) + "\n"
    _emit(text, out)
    if not all(r.passed for r in reports):
        sys.exit(1)


@main.command()
@click.argument("unit")
@_unit_options
@click.option("--cancel", is_flag=True, help="Drop adjacent identical self-inverse pairs first.")
@click.option("--lowered", is_flag=True, help="Count after lowering the SWAP/CSXDG macros.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
def count(unit, cancel, lowered, fmt, **kw):
    """Gate counts of UNIT."""
    try:
        u, p = resolve(unit, _params(**kw))
        c = u.build(p)
    except (VerifyError, LayoutError, ValueError) as exc:
        _fail(str(exc), 2)
    if lowered:
        c = lower(c)
    if cancel:
        c = cancel_adjacent_pairs(c)
    gc = gate_counts(c)
    if fmt == "json":
        click.echo(json.dumps({**gc.as_dict(), "qubits": c.qubit_count}, sort_keys=True))
        return
    parts = [f"CNOT {gc.cnot}", f"CSX {gc.csx}"]
    parts += [f"{k} {v}" for k, v in (("CSXDG", gc.csxdg), ("SWAP", gc.swap), ("X", gc.x)) if v]
    click.echo(", ".join(parts))


@main.command("check-layout")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
def check_layout(path):
    """List two-qubit gates between non-neighbouring grid points."""
    c = _read_file(path)
    bad = validate_connectivity(c)
    for i, g in bad:
        click.echo(f"gate {i}: {g} joins {c.layout.coord(g.control)} and {c.layout.coord(g.target)}")
    click.echo(f"{len(c.gates)} gates, {len(bad)} violations")
    if bad:
        sys.exit(1)


REPORT_UNITS = {"adders": ["p1", "p2", "p3"], "muldiv": ["multiplier", "divider"]}
REPORT_RANGES = {"p1": range(2, 9), "p2": range(2, 9), "p3": range(2, 9),
                 "multiplier": range(2, 7), "divider": range(2, 6)}


@main.command()
@click.option("-o", "out", type=click.Path(file_okay=False), default="report", show_default=True,
              help="Directory for the report and plots.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
def report(out, fmt):
    """Gate-count scaling table, fitted exponents and PNG plots."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    d = Path(out)
    d.mkdir(parents=True, exist_ok=True)
    data = {}
    for u, ns in REPORT_RANGES.items():
        rows = scaling_table(u, ns)
        sizes = [(n, build_unit(u, Params(n=n, m=n if u == "divider" else None)).qubit_count)
                 for n in ns]
        data[u] = {"points": rows, "exponent": complexity_fit(u, ns), "qubits": sizes}
    plots = []
    for group, units in REPORT_UNITS.items():
        fig, ax = plt.subplots(figsize=(5, 4))
        for u in units:
            ns, counts = zip(*data[u]["points"])
            ax.loglog(ns, counts, "o-", label=f"{u} (slope {data[u]['exponent']:.2f})")
        ax.set_xlabel("N" if group == "adders" else "N (divider: M = N)")
        ax.set_ylabel("two-qubit gates after lowering")
        ax.legend()
        ax.grid(True, which="both", alpha=0.3)
        fig.tight_layout()
        png = d / f"scaling_{group}.png"
        fig.savefig(png, dpi=120)
        plt.close(fig)
        plots.append(png.name)
    if fmt == "json":
        body = json.dumps({"units": data, "plots": plots}, indent=2, sort_keys=True) + "\n"
        name = "report.json"
    else:
        lines = ["unit N two_qubit_gates qubits"]
        for u, info in data.items():
            for (n, g), (_, q) in zip(info["points"], info["qubits"]):
                lines.append(f"{u} {n} {g} {q}")
        lines.append("")
        lines += [f"exponent {u} {info['exponent']:.3f}" for u, info in data.items()]
        lines += [f"plot {p}" for p in plots]
        body = "\n".join(lines) + "\n"
        name = "report.txt"
    (d / name).write_text(body)
    click.echo(body, nl=False)
    click.echo(f"wrote {d / name} and {', '.join(str(d / p) for p in plots)}")


if __name__ == "__main__":  # pragma: no cover
    main()
