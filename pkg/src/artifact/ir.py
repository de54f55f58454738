"""Gate-level IR over {X, CNOT, CSX} plus the CSXDG and SWAP macros."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Sequence

from .layout import GridLayout, RegisterMap


class IRError(ValueError):
    pass


class Kind(Enum):
    X = "x"
    CNOT = "cx"
    CSX = "csx"      # controlled sqrt(X)
    CSXDG = "csxdg"  # its inverse, i.e. controlled X^{3/2}
    SWAP = "swap"    # macro; lowered to 3 CNOTs, or 2 when one side is |0>


PRIMITIVE = frozenset({Kind.X, Kind.CNOT, Kind.CSX})
SELF_INVERSE = frozenset({Kind.X, Kind.CNOT, Kind.SWAP})
_INVERSE = {Kind.CSX: Kind.CSXDG, Kind.CSXDG: Kind.CSX}


@dataclass(frozen=True)
class Gate:
    kind: Kind
    target: int
    control: int | None = None
    # SWAP only: the *target* operand is known to hold |0> here.
    zero: bool = False

    def __post_init__(self):
        if self.kind is Kind.X:
            if self.control is not None:
                raise IRError("X takes no control")
        elif self.control is None:
            raise IRError(f"{self.kind.name} needs two operands")
        elif self.control == self.target:
            raise IRError("control and target must differ")
        if self.zero and self.kind is not Kind.SWAP:
            raise IRError("zero hint only applies to SWAP")

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.target,) if self.control is None else (self.control, self.target)

    def inverse(self) -> Gate:
        if self.kind in _INVERSE:
            return replace(self, kind=_INVERSE[self.kind])
        return self

    def __str__(self):
        if self.control is None:
            return f"{self.kind.value} {self.target}"
        return f"{self.kind.value} {self.control} {self.target}"


def x(q: int) -> Gate: return Gate(Kind.X, q)
def cx(c: int, t: int) -> Gate: return Gate(Kind.CNOT, t, c)
def csx(c: int, t: int) -> Gate: return Gate(Kind.CSX, t, c)
def csxdg(c: int, t: int) -> Gate: return Gate(Kind.CSXDG, t, c)


def swap(p: int, q: int, zero: bool = False) -> Gate:
    """SWAP p<->q.  ``zero=True`` asserts that q currently holds |0>."""
    return Gate(Kind.SWAP, q, p, zero)


def inverse(gates: Sequence[Gate]) -> list[Gate]:
    # A zero-hinted SWAP run backwards has |0> on the other side, so the
    # hint is only kept if it can be re-derived; dropping it is always safe.
    return [replace(g.inverse(), zero=False) if g.zero else g.inverse() for g in reversed(gates)]


@dataclass(frozen=True)
class Circuit:
    qubit_count: int
    gates: tuple[Gate, ...] = ()
    layout: GridLayout | None = None
    registers: RegisterMap | None = None
    # (label, gate offset): the state after gates[:offset] is checkpoint `label`.
    markers: tuple[tuple[str, int], ...] = ()
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.qubit_count < 1:
            raise IRError("qubit_count must be positive")
        for g in self.gates:
            for q in g.qubits:
                if not 0 <= q < self.qubit_count:
                    raise IRError(f"gate {g} operand out of range")
        if self.layout is not None and self.layout.size != self.qubit_count:
            raise IRError("layout does not cover every qubit")

    def __len__(self):
        return len(self.gates)

    def marker(self, label: str) -> int:
        for name, pos in self.markers:
            if name == label:
                return pos
        raise KeyError(label)

    def prefix(self, label_or_pos: str | int) -> Circuit:
        """Circuit truncated at a checkpoint label or gate offset."""
        pos = self.marker(label_or_pos) if isinstance(label_or_pos, str) else label_or_pos
        keep = tuple((n, p) for n, p in self.markers if p <= pos)
        return replace(self, gates=self.gates[:pos], markers=keep)

    def with_gates(self, gates: Iterable[Gate]) -> Circuit:
        return replace(self, gates=tuple(gates), markers=())


class Emitter:
    """Append-only gate buffer used by the circuit builders."""

    def __init__(self):
        self.gates: list[Gate] = []
        self.markers: list[tuple[str, int]] = []

    def x(self, q): self.gates.append(x(q))
    def cx(self, c, t): self.gates.append(cx(c, t))
    def csx(self, c, t): self.gates.append(csx(c, t))
    def csxdg(self, c, t): self.gates.append(csxdg(c, t))
    def swap(self, p, q, zero=False): self.gates.append(swap(p, q, zero))

    def extend(self, gates: Iterable[Gate]):
        self.gates.extend(gates)

    def mark(self, label: str):
        self.markers.append((label, len(self.gates)))

    def circuit(self, qubit_count: int, layout=None, registers=None, **meta) -> Circuit:
        return Circuit(qubit_count, tuple(self.gates), layout, registers, tuple(self.markers), meta)


def compose(a: Circuit, b: Circuit) -> Circuit:
    if a.qubit_count != b.qubit_count:
        raise IRError("cannot compose circuits of different widths")
    if a.layout is not None and b.layout is not None and a.layout != b.layout:
        raise IRError("incompatible layouts")
    regs = a.registers
    if regs is None:
        regs = b.registers
    elif b.registers is not None and b.registers is not regs:
        cells = {k: dict(v) for k, v in b.registers.cells.items()}
        for k, v in regs.cells.items():
            cells.setdefault(k, {}).update(v)
        regs = RegisterMap(cells, {**b.registers.aliases, **regs.aliases})
    shift = len(a.gates)
    marks = a.markers + tuple((n, p + shift) for n, p in b.markers)
    return Circuit(a.qubit_count, a.gates + b.gates, a.layout or b.layout, regs, marks,
                   {**b.meta, **a.meta})


def dagger(c: Circuit) -> Circuit:
    return replace(c, gates=tuple(inverse(c.gates)), markers=())


def lower_gate(g: Gate) -> list[Gate]:
    if g.kind is Kind.CSXDG:
        # X^{3/2} = X * X^{1/2}; the two controlled factors commute.
        return [cx(g.control, g.target), csx(g.control, g.target)]
    if g.kind is Kind.SWAP:
        p, q = g.control, g.target
        if g.zero:
            # q is |0>: p->q copies, q->p clears p.
            return [cx(p, q), cx(q, p)]
        return [cx(p, q), cx(q, p), cx(p, q)]
    return [g]


def lower(c: Circuit) -> Circuit:
    gates: list[Gate] = []
    marks = []
    it = iter(sorted(c.markers, key=lambda m: m[1]))
    pending = next(it, None)
    for i, g in enumerate(c.gates):
        while pending is not None and pending[1] == i:
            marks.append((pending[0], len(gates)))
            pending = next(it, None)
        gates.extend(lower_gate(g))
    while pending is not None:
        marks.append((pending[0], len(gates)))
        pending = next(it, None)
    return replace(c, gates=tuple(gates), markers=tuple(marks))


def validate_connectivity(c: Circuit) -> list[tuple[int, Gate]]:
    """(index, gate) for every two-qubit gate acting on non-adjacent qubits."""
    if c.layout is None:
        raise IRError("circuit has no layout attached")
    bad = []
    for i, g in enumerate(c.gates):
        if g.kind not in PRIMITIVE:
            raise IRError(f"unlowered gate {g} at {i}")
        if g.control is not None and not c.layout.adjacent(g.control, g.target):
            bad.append((i, g))
    return bad


def cancel_adjacent_pairs(c: Circuit) -> Circuit:
    """Drop pairs of identical self-inverse gates with nothing on their qubits in between.

    A stack per qubit holds the index of the last surviving gate touching it;
    a new gate cancels against the previous one iff that gate is identical and
    is the last survivor on every operand.  Cancellations cascade naturally.
    """
    alive: list[Gate | None] = []
    last: dict[int, list[int]] = {}
    for g in c.gates:
        qs = g.qubits
        prev = [last[q][-1] if last.get(q) else None for q in qs]
        j = prev[0]
        if (g.kind in SELF_INVERSE and j is not None and all(p == j for p in prev)
                and alive[j] == g and set(alive[j].qubits) == set(qs)):
            alive[j] = None
            for q in qs:
                last[q].pop()
            alive.append(None)
            continue
        for q in qs:
            last.setdefault(q, []).append(len(alive))
        alive.append(g)
    return c.with_gates(g for g in alive if g is not None)


@dataclass(frozen=True)
class GateCounts:
    x: int = 0
    cnot: int = 0
    csx: int = 0
    csxdg: int = 0
    swap: int = 0
    depth: int = 0

    @property
    def two_qubit_total(self) -> int:
        return self.cnot + self.csx + self.csxdg + self.swap

    @property
    def total(self) -> int:
        return self.x + self.two_qubit_total

    def as_dict(self) -> dict:
        return {"X": self.x, "CNOT": self.cnot, "CSX": self.csx, "CSXDG": self.csxdg,
                "SWAP": self.swap, "two_qubit": self.two_qubit_total, "depth": self.depth}


def gate_counts(c: Circuit) -> GateCounts:
    tally = {k: 0 for k in Kind}
    level: dict[int, int] = {}
    depth = 0
    for g in c.gates:
        tally[g.kind] += 1
        t = 1 + max(level.get(q, 0) for q in g.qubits)
        for q in g.qubits:
            level[q] = t
        depth = max(depth, t)
    return GateCounts(tally[Kind.X], tally[Kind.CNOT], tally[Kind.CSX],
                      tally[Kind.CSXDG], tally[Kind.SWAP], depth)
