"""Verification harness.

Every unit in ``UNITS`` knows how to build itself, enumerate its valid basis
inputs, load one into a state, predict the outputs from ``oracle`` and read
them back.  The checks below are generic over that description.
"""
from __future__ import annotations

import itertools
import json
import time
from dataclasses import asdict, dataclass, replace
from typing import Callable, Iterable, Sequence

import numpy as np

from . import adders, complement, muldiv
from .ir import Circuit, gate_counts, lower, validate_connectivity
from .layout import RegisterMap
from .oracle import ref_add, ref_divmod, ref_mul, ref_signed_complement, ref_sub
from .sim import SparseState, load, qubit_value, read_qubits, run, unitary_of

MAX_CASES = 1 << 16
AMP_TOL = 1e-9


class VerifyError(ValueError):
    pass


@dataclass(frozen=True)
class Params:
    n: int | None = None
    m: int | None = None
    variant: str | None = None
    zero_safe: bool = False
    with_remainder: bool = True
    literal: bool = False
    hardwired: bool = True

    def label(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


@dataclass(frozen=True)
class Failure:
    case: dict          # the full counterexample input
    expected: dict
    got: dict
    reason: str = "mismatch"


@dataclass(frozen=True)
class VerificationReport:
    unit: str
    params: dict
    cases_run: int
    failures: tuple[Failure, ...]
    ancilla_violations: int
    connectivity_violations: int
    gate_counts: dict
    elapsed: float
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_text(self, max_rows: int = 20) -> str:
        lines = [f"unit: {self.unit}",
                 "params: " + " ".join(f"{k}={v}" for k, v in sorted(self.params.items())),
                 f"cases_run: {self.cases_run}",
                 f"failures: {len(self.failures)}",
                 f"ancilla_violations: {self.ancilla_violations}",
                 f"connectivity_violations: {self.connectivity_violations}",
                 "gate_counts: " + " ".join(f"{k}={v}" for k, v in self.gate_counts.items()),
                 f"elapsed: {self.elapsed:.3f}s"]
        if self.seed is not None:
            lines.append(f"seed: {self.seed}")
        lines.append(f"result: {'PASS' if self.passed else 'FAIL'}")
        if self.failures:
            lines.append("reason | input | expected | got")
            for f in self.failures[:max_rows]:
                lines.append(f"{f.reason} | {_kv(f.case)} | {_kv(f.expected)} | {_kv(f.got)}")
            if len(self.failures) > max_rows:
                lines.append(f"... {len(self.failures) - max_rows} more")
        return "\n".join(lines)


def _kv(d: dict) -> str:
    return ",".join(f"{k}={v}" for k, v in d.items())


# --- register helpers -----------------------------------------------------------

def put(regs: RegisterMap, name: str, lo: int, value: int, width: int) -> dict[int, int]:
    """Bits of ``value`` on name[lo], name[lo+1], ... (least significant first)."""
    if not 0 <= value < 1 << width:
        raise VerifyError(f"{name}={value} does not fit in {width} bits")
    return {regs.qubit(name, lo + i): (value >> i) & 1 for i in range(width)}


def get(state: SparseState, regs: RegisterMap, name: str, lo: int, hi: int) -> int:
    return read_qubits(state, regs.span(name, hi, lo))


def cells(regs: RegisterMap, name: str, lo: int | None = None, hi: int | None = None) -> list[int]:
    subs = regs.cells[name]
    return [q for s, q in sorted(subs.items())
            if (lo is None or s >= lo) and (hi is None or s <= hi)]


# --- unit registry -----------------------------------------------------------------

Case = dict  # named integer inputs


@dataclass(frozen=True)
class Unit:
    name: str
    build: Callable[[Params], Circuit]
    cases: Callable[[Params], Iterable[Case]]
    prepare: Callable[[Circuit, Params, Case], dict]
    expect: Callable[[Params, Case], dict]
    read: Callable[[Circuit, Params, SparseState, Case], dict]
    ancillas: Callable[[Circuit, Params], list[int]]
    needs: tuple[str, ...] = ("n",)


def _need(p: Params, unit: Unit):
    for k in unit.needs:
        if getattr(p, k) is None:
            raise VerifyError(f"{unit.name} needs --{k}")


def _grid(**ranges) -> Iterable[Case]:
    keys = list(ranges)
    for vals in itertools.product(*(range(ranges[k]) for k in keys)):
        yield dict(zip(keys, vals))


# one-digit full adders: (a, b, c) -> sum on C, carry on C'
def _onebit(name, builder) -> Unit:
    def prepare(c, p, k):
        r = c.registers
        return {r.qubit("A", 0): k["a"], r.qubit("B", 0): k["b"], r.qubit("C", 0): k["c"]}

    def expect(p, k):
        t = k["a"] + k["b"] + k["c"]
        return {"A": k["a"], "B": k["b"], "sum": t & 1, "carry": t >> 1}

    def read(c, p, st, k):
        r = c.registers
        return {"A": get(st, r, "A", 0, 0), "B": get(st, r, "B", 0, 0),
                "sum": get(st, r, "C", 0, 0), "carry": get(st, r, "C", 1, 1)}

    return Unit(name, lambda p: builder(), lambda p: _grid(a=2, b=2, c=2), prepare, expect, read,
                lambda c, p: [c.registers.qubit("C", 2)], needs=())


def _ripple(name, builder) -> Unit:
    def prepare(c, p, k):
        r = c.registers
        return {**put(r, "A", 0, k["a"], p.n), **put(r, "B", 0, k["b"], p.n)}

    def read(c, p, st, k):
        r = c.registers
        return {"A": get(st, r, "A", 0, p.n - 1), "B": get(st, r, "B", 0, p.n - 1),
                "C": get(st, r, "C", 0, p.n)}

    return Unit(name, lambda p: builder(p.n), lambda p: _grid(a=1 << p.n, b=1 << p.n), prepare,
                lambda p, k: {"A": k["a"], "B": k["b"], "C": ref_add(k["a"], k["b"])}, read,
                lambda c, p: [c.registers.qubit("C", p.n + 1)])


def _p3() -> Unit:
    def prepare(c, p, k):
        r = c.registers
        return {**put(r, "A", 0, k["a"], p.n), **put(r, "B", 0, k["b"], p.n)}

    def read(c, p, st, k):
        r = c.registers
        return {"A": get(st, r, "A", 0, p.n - 1), "B": get(st, r, "B", 0, p.n)}

    return Unit("p3", lambda p: adders.build_p3(p.n), lambda p: _grid(a=1 << p.n, b=1 << p.n),
                prepare, lambda p, k: {"A": k["a"], "B": ref_add(k["a"], k["b"])}, read,
                lambda c, p: cells(c.registers, "C"))


def _p3_signed() -> Unit:
    def prepare(c, p, k):
        r = c.registers
        return {**put(r, "A", 0, k["a"], p.n), **put(r, "B", 0, k["b"], p.n)}

    def read(c, p, st, k):
        r = c.registers
        return {"A": get(st, r, "A", 0, p.n - 1), "B": get(st, r, "B", 0, p.n - 1)}

    return Unit("p3-signed", lambda p: adders.build_p3_signed(p.n),
                lambda p: _grid(a=1 << p.n, b=1 << p.n), prepare,
                lambda p, k: {"A": k["a"], "B": ref_add(k["a"], k["b"]) % (1 << p.n)}, read,
                lambda c, p: cells(c.registers, "C"))


def _uc() -> Unit:
    def prepare(c, p, k):
        r = c.registers
        return {r.qubit("A", 0): k["a"], r.qubit("B", 0): k["b"], r.qubit("C", 0): k["c"]}

    def read(c, p, st, k):
        r = c.registers
        return {"A": get(st, r, "A", 0, 0), "B": get(st, r, "B", 0, 0),
                "C": get(st, r, "C", 0, 0), "carry": get(st, r, "C", 1, 1)}

    return Unit("uc", lambda p: adders.build_uc(), lambda p: _grid(a=2, b=2, c=2), prepare,
                lambda p, k: {"A": k["a"], "B": k["b"], "C": k["c"],
                              "carry": int(k["a"] + k["b"] + k["c"] >= 2)},
                read, lambda c, p: [c.registers.qubit("C", 2)], needs=())


def _us() -> Unit:
    def prepare(c, p, k):
        r = c.registers
        return {r.qubit("A", 0): k["a"], r.qubit("B", 0): k["b"], r.qubit("C", 0): k["c"]}

    def read(c, p, st, k):
        r = c.registers
        return {n: get(st, r, n, 0, 0) for n in "ABC"}

    return Unit("us", lambda p: adders.build_us(), lambda p: _grid(a=2, b=2, c=2), prepare,
                lambda p, k: {"A": k["a"], "B": (k["a"] + k["b"] + k["c"]) & 1, "C": k["c"]},
                read, lambda c, p: [], needs=())


def _uc_tilde() -> Unit:
    def prepare(c, p, k):
        r = c.registers
        return {r.qubit("A", 0): k["a"], r.qubit("C", 0): k["c"]}

    def read(c, p, st, k):
        r = c.registers
        return {"A": get(st, r, "A", 0, 0), "C": get(st, r, "C", 0, 0), "and": get(st, r, "C", 1, 1)}

    return Unit("uc-tilde", lambda p: complement.build_uc_tilde(), lambda p: _grid(a=2, c=2),
                prepare, lambda p, k: {"A": k["a"], "C": k["c"], "and": k["a"] & k["c"]},
                read, lambda c, p: [c.registers.qubit("C", 2)], needs=())


def _single_a(name, builder, width, oracle, **extra) -> Unit:
    """Units acting on A alone with C as scratch."""
    def prepare(c, p, k):
        return put(c.registers, "A", 0, k["a"], width(p))

    def read(c, p, st, k):
        r = c.registers
        return {"A": get(st, r, "A", 0, max(r.cells["A"]))}

    return Unit(name, builder, lambda p: _grid(a=1 << width(p)), prepare,
                lambda p, k: {"A": oracle(p, k["a"])}, read,
                extra.get("ancillas", lambda c, p: cells(c.registers, "C")))


def _plus1_tilde() -> Unit:
    # Without the hardwired one, the carry is an input on C_0 and stays there.
    def cases(p):
        return _grid(a=1 << p.n, carry=1 if p.hardwired else 2)

    def prepare(c, p, k):
        r = c.registers
        return {**put(r, "A", 0, k["a"], p.n), r.qubit("C", 0): k["carry"]}

    def expect(p, k):
        inc = 1 if p.hardwired else k["carry"]
        return {"A": (k["a"] + inc) % (1 << p.n), "C0": k["carry"]}

    def read(c, p, st, k):
        r = c.registers
        return {"A": get(st, r, "A", 0, p.n - 1), "C0": get(st, r, "C", 0, 0)}

    return Unit("plus1-tilde", lambda p: complement.build_plus1_tilde(p.n, p.hardwired), cases,
                prepare, expect, read, lambda c, p: cells(c.registers, "C", lo=1))


def _uflip() -> Unit:
    def prepare(c, p, k):
        return put(c.registers, "A", 0, k["a"], p.n + 1)

    def expect(p, k):
        s = k["a"] >> p.n
        return {"A": k["a"] ^ (((1 << p.n) - 1) if s else 0), "C0": s}

    def read(c, p, st, k):
        r = c.registers
        return {"A": get(st, r, "A", 0, p.n), "C0": get(st, r, "C", 0, 0)}

    return Unit("uflip", lambda p: complement.build_uflip(p.n), lambda p: _grid(a=2 << p.n),
                prepare, expect, read, lambda c, p: cells(c.registers, "C", lo=1))


def _ures() -> Unit:
    def prepare(c, p, k):
        r = c.registers
        return {**put(r, "A", 0, k["a"], p.n + 1), r.qubit("C", 0): k["a"] >> p.n}

    def read(c, p, st, k):
        return {"A": get(st, c.registers, "A", 0, p.n)}

    return Unit("ures", lambda p: complement.build_ures(p.n), lambda p: _grid(a=2 << p.n),
                prepare, lambda p, k: {"A": k["a"]}, read, lambda c, p: cells(c.registers, "C"))


def _upm_oracle(p, a):
    s, m = a >> p.n, a & ((1 << p.n) - 1)
    return (s << p.n) | ref_signed_complement(s, m, p.n)


def _subtractor() -> Unit:
    def prepare(c, p, k):
        r = c.registers
        return {**put(r, "A", 0, k["a"], p.n), **put(r, "B", 0, k["b"], p.n)}

    def expect(p, k):
        w = p.n + 1
        return {"A": k["a"], "B": (-k["b"]) % (1 << w),
                "C": ref_sub(k["a"], k["b"]) % (1 << w)}

    def read(c, p, st, k):
        r = c.registers
        return {"A": get(st, r, "A", 0, p.n - 1), "B": get(st, r, "B", 0, p.n),
                "C": get(st, r, "C", 0, p.n)}

    return Unit("subtractor", lambda p: complement.build_subtractor(p.n),
                lambda p: _grid(a=1 << p.n, b=1 << p.n), prepare, expect, read,
                lambda c, p: [c.registers.qubit("C", p.n + 1)])


def _multiplier() -> Unit:
    def prepare(c, p, k):
        r = c.registers
        return {**put(r, "A", 0, k["a"], p.n), **put(r, "B", 0, k["b"], p.n)}

    def read(c, p, st, k):
        return {"C": get(st, c.registers, "C", 0, 2 * p.n)}

    def ancillas(c, p):
        r = c.registers
        return cells(r, "D") + cells(r, "E") + [r.qubit("C", -1)]

    return Unit("multiplier", lambda p: muldiv.build_multiplier(p.n, p.literal),
                lambda p: _grid(a=1 << p.n, b=1 << p.n), prepare,
                lambda p, k: {"C": ref_mul(k["a"], k["b"])}, read, ancillas)


def _div_top(p):
    return p.n + p.m if p.zero_safe else p.n + p.m - 1


def _divider() -> Unit:
    def prepare(c, p, k):
        r = c.registers
        return {**put(r, "A", 0, k["a"], p.n), **put(r, "B", 0, k["b"], p.m)}

    def expect(p, k):
        if k["b"] == 0:
            # no arithmetic reference; only the flag digit is specified
            return {"flag": 1} if p.zero_safe else {}
        q, rem = ref_divmod(k["a"], k["b"])
        out = {"Q": q}
        if p.with_remainder:
            out.update(R=rem, divisor=k["b"])
        if p.zero_safe:
            out["flag"] = 0
        return out

    def read(c, p, st, k):
        r = c.registers
        got = {}
        if k["b"] or p.zero_safe:
            got["Q"] = get(st, r, "C", p.m, _div_top(p))
        if p.zero_safe:
            got["flag"] = get(st, r, "C", p.n + p.m, p.n + p.m)
        if p.with_remainder and k["b"]:
            got["R"] = get(st, r, "A", 0, p.m - 1)
            got["divisor"] = get(st, r, "B'", -1, p.m - 2)
        if not k["b"]:
            got.pop("Q", None)
        return got

    def ancillas(c, p):
        r = c.registers
        return cells(r, "D'") + cells(r, "E") + cells(r, "C", hi=p.m - 1)

    def build(p):
        if p.m is None:
            raise VerifyError("divider needs --m")
        return muldiv.build_divider(p.n, p.m, p.zero_safe, p.with_remainder, p.literal)

    return Unit("divider", build, lambda p: _grid(a=1 << p.n, b=1 << p.m), prepare, expect, read,
                ancillas, needs=("n", "m"))


def _registry() -> dict[str, Unit]:
    units = [
        _onebit("p1-onebit", adders.build_p1_onebit),
        _onebit("p2-onebit", adders.build_p2_onebit),
        _ripple("p1", adders.build_p1),
        _ripple("p2", adders.build_p2),
        _p3(), _p3_signed(), _uc(), _us(), _uc_tilde(),
        _single_a("plus1", lambda p: complement.build_plus1(p.n), lambda p: p.n,
                  lambda p, a: a + 1),
        _plus1_tilde(),
        _single_a("negate", lambda p: complement.build_negate(p.n), lambda p: p.n,
                  lambda p, a: (-a) % (2 << p.n)),
        _uflip(), _ures(),
        _single_a("upm", lambda p: complement.build_upm(p.n), lambda p: p.n + 1, _upm_oracle),
        _subtractor(), _multiplier(), _divider(),
    ]
    return {u.name: u for u in units}


UNITS = _registry()
ADDER_VARIANTS = {"I": "p1", "II": "p2", "III": "p3"}


def resolve(unit: str, params: Params) -> tuple[Unit, Params]:
    """Look a unit up; ``adder`` plus a variant is an alias for p1/p2/p3."""
    if unit == "adder":
        if params.variant not in ADDER_VARIANTS:
            raise VerifyError("adder needs --variant I, II or III")
        unit = ADDER_VARIANTS[params.variant]
    if unit not in UNITS:
        raise VerifyError(f"unknown unit {unit!r}; choose from {', '.join(UNITS)}")
    u = UNITS[unit]
    _need(params, u)
    return u, params


def build(unit: str, params: Params) -> Circuit:
    u, p = resolve(unit, params)
    return u.build(p)


# --- checks ----------------------------------------------------------------------

def _basis(c: Circuit, u: Unit, p: Params, case: Case) -> SparseState:
    return load(c.qubit_count, u.prepare(c, p, case))


def exhaustive_verify(unit: str, params: Params = Params()) -> VerificationReport:
    """Simulate every valid basis input of the lowered circuit against the oracle."""
    u, p = resolve(unit, params)
    t0 = time.perf_counter()
    cases = list(itertools.islice(u.cases(p), MAX_CASES + 1))
    if len(cases) > MAX_CASES:
        raise VerifyError(f"more than {MAX_CASES} basis inputs; reduce N or M")
    c = lower(u.build(p))
    anc = u.ancillas(c, p)
    failures: list[Failure] = []
    anc_bad = 0
    conn = len(validate_connectivity(c))
    if conn:
        failures.append(Failure({}, {"violations": 0}, {"violations": conn}, "connectivity"))
    for case in cases:
        out = run(c, _basis(c, u, p, case))
        amps = list(out.amplitudes.values())
        if len(amps) != 1 or abs(amps[0] - 1) > AMP_TOL:
            failures.append(Failure(case, {"support": 1}, {"support": len(amps)}, "not a basis state"))
            continue
        dirty = [q for q in anc if qubit_value(out, q)]
        if dirty:
            anc_bad += 1
            labels = [f"{n}[{s}]" for n, s in map(c.registers.label, dirty)]
            failures.append(Failure(case, {"ancillas": 0}, {"dirty": " ".join(labels)}, "ancilla"))
        want, got = u.expect(p, case), u.read(c, p, out, case)
        if want != got:
            failures.append(Failure(case, want, got))
    return VerificationReport(u.name, p.label(), len(cases), tuple(failures), anc_bad, conn,
                              gate_counts(c).as_dict(), time.perf_counter() - t0)


def linearity_check(unit: str, params: Params = Params(), trials: int = 32, seed: int = 0,
                    max_terms: int = 4) -> VerificationReport:
    """Random superpositions of basis inputs must evolve branch by branch."""
    u, p = resolve(unit, params)
    t0 = time.perf_counter()
    c = lower(u.build(p))
    cases = list(u.cases(p))
    rng = np.random.default_rng(seed)
    failures = []
    for t in range(trials):
        k = int(rng.integers(1, min(max_terms, len(cases)) + 1))
        picks = rng.choice(len(cases), size=k, replace=False)
        amps = rng.normal(size=k) + 1j * rng.normal(size=k)
        amps /= np.linalg.norm(amps)
        states = [_basis(c, u, p, cases[i]) for i in picks]
        mixed = SparseState(c.qubit_count, {next(iter(s.amplitudes)): complex(a)
                                            for s, a in zip(states, amps)})
        whole = run(c, mixed)
        expected: dict[int, complex] = {}
        for s, a in zip(states, amps):
            for idx, v in run(c, s).amplitudes.items():
                expected[idx] = expected.get(idx, 0) + a * v
        if not whole.close_to(SparseState(c.qubit_count, expected), AMP_TOL):
            failures.append(Failure({"trial": t, "cases": [cases[i] for i in picks]},
                                    {"support": len(expected)}, {"support": whole.support},
                                    "superposition"))
    return VerificationReport(u.name, p.label(), trials, tuple(failures), 0, 0,
                              gate_counts(c).as_dict(), time.perf_counter() - t0, seed)


# --- matrix forms of the one-digit units --------------------------------------------
# Basis order for these checks: qubits A, B, C, C', C'' with A most significant.

_P = (1 + 1j) / 2
_M = (1 - 1j) / 2


def alpha(sign: str) -> np.ndarray:
    p, m = (_P, _M) if sign == "+" else (_M, _P)
    return np.array([[1, 0, 0, 0], [0, 0, p, m], [0, 1, 0, 0], [0, 0, m, p]], dtype=complex)


def beta(sign: str) -> np.ndarray:
    b = alpha(sign)
    b[0], b[2] = [0, 1, 0, 0], [1, 0, 0, 0]
    return b


P1_BLOCKS = {(0, 0): ("a", "-"), (1, 1): ("a", "-"), (2, 3): ("b", "-"), (3, 2): ("a", "+"),
             (4, 5): ("b", "-"), (5, 4): ("a", "+"), (6, 6): ("b", "+"), (7, 7): ("b", "+")}
UC_BLOCKS = {(k, k): blk for k, blk in enumerate(
    [("a", "-"), ("a", "-"), ("a", "+"), ("b", "-"), ("a", "+"), ("b", "-"), ("b", "+"), ("b", "+")])}


def block_matrix(blocks: dict) -> np.ndarray:
    u = np.zeros((32, 32), dtype=complex)
    for (r, c), (kind, sign) in blocks.items():
        u[4 * r:4 * r + 4, 4 * c:4 * c + 4] = (alpha if kind == "a" else beta)(sign)
    return u


def ref_index(order: Sequence[int], idx: int) -> int:
    """Internal basis index of the reference-ordered index ``idx`` (order[0] is the MSB qubit)."""
    w = len(order)
    return sum(((idx >> (w - 1 - k)) & 1) << q for k, q in enumerate(order))


def in_reference_order(c: Circuit, order: Sequence[int]) -> np.ndarray:
    u = unitary_of(c)
    perm = [ref_index(order, i) for i in range(1 << len(order))]
    return u[np.ix_(perm, perm)]


def _matrix_check(c: Circuit, blocks: dict, order: Sequence[int] | None) -> bool:
    order = adders.onebit_order(c) if order is None else list(order)
    return bool(np.allclose(in_reference_order(c, order), block_matrix(blocks), atol=AMP_TOL, rtol=0))


def matrix_check_p1(order: Sequence[int] | None = None) -> bool:
    return _matrix_check(adders.build_p1_onebit(), P1_BLOCKS, order)


def matrix_check_p2(order: Sequence[int] | None = None) -> bool:
    return _matrix_check(adders.build_p2_onebit(), P1_BLOCKS, order)


def matrix_check_uc(order: Sequence[int] | None = None) -> bool:
    return _matrix_check(adders.build_uc(), UC_BLOCKS, order)


# --- scaling --------------------------------------------------------------------------

def two_qubit_count(unit: str, params: Params) -> int:
    return gate_counts(lower(build(unit, params))).two_qubit_total


def complexity_fit(unit: str, ns: Sequence[int], params: Params = Params(),
                   m_equals_n: bool = True) -> float:
    """Slope of log(two-qubit gates) against log(N).

    For the divider the divisor width follows N unless ``m_equals_n`` is off.
    """
    ns = sorted(set(ns))
    if len(ns) < 4 or ns[0] < 1:
        raise VerifyError("need at least four distinct positive N values")
    counts = []
    for n in ns:
        p = replace(params, n=n, m=n if (unit == "divider" and m_equals_n) else params.m)
        counts.append(two_qubit_count(unit, p))
    slope, _ = np.polyfit(np.log(ns), np.log(counts), 1)
    return float(slope)


def scaling_table(unit: str, ns: Sequence[int], params: Params = Params()) -> list[tuple[int, int]]:
    out = []
    for n in ns:
        p = replace(params, n=n, m=n if unit == "divider" else params.m)
        out.append((n, two_qubit_count(unit, p)))
    return out
