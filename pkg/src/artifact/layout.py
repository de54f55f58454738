"""2D grid placements and named registers for the arithmetic units.

Every qubit sits at a (row, col) grid point.  The row of a qubit equals the
binary weight (subscript) of the register cell it holds, so rows may be
negative.  Two qubits may interact iff their Manhattan distance is 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


class LayoutError(ValueError):
    pass


@dataclass(frozen=True)
class GridLayout:
    """Coordinates indexed by dense qubit id."""
    coords: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if len(set(self.coords)) != len(self.coords):
            raise LayoutError("two qubits share a grid coordinate")
        for _, col in self.coords:
            if col < 0:
                raise LayoutError("column index must be non-negative")

    @property
    def size(self) -> int:
        return len(self.coords)

    def coord(self, q: int) -> tuple[int, int]:
        if not 0 <= q < len(self.coords):
            raise LayoutError(f"unknown qubit {q}")
        return self.coords[q]

    def adjacent(self, p: int, q: int) -> bool:
        (r1, c1), (r2, c2) = self.coord(p), self.coord(q)
        return abs(r1 - r2) + abs(c1 - c2) == 1

    def edges(self) -> list[tuple[int, int]]:
        where = {rc: q for q, rc in enumerate(self.coords)}
        out = []
        for q, (r, c) in enumerate(self.coords):
            for rc in ((r - 1, c), (r, c + 1)):
                if rc in where:
                    out.append((q, where[rc]))
        return out


@dataclass(frozen=True)
class RegisterMap:
    """Named registers.

    ``cells[name][subscript]`` is a qubit id.  ``aliases[alt] = (base, k)``
    declares ``alt[j]`` to be the same qubit as ``base[j + k]``; this is how
    the multiplier's A_j = B_{N+j} and the divider's primed columns are
    exposed without duplicating cells.
    """
    cells: dict[str, dict[int, int]]
    aliases: dict[str, tuple[str, int]] = field(default_factory=dict)

    def _resolve(self, name: str, sub: int) -> tuple[str, int]:
        if name in self.aliases:
            base, k = self.aliases[name]
            return base, sub + k
        return name, sub

    def has(self, name: str, sub: int) -> bool:
        base, s = self._resolve(name, sub)
        return s in self.cells.get(base, {})

    def qubit(self, name: str, sub: int) -> int:
        base, s = self._resolve(name, sub)
        try:
            return self.cells[base][s]
        except KeyError:
            raise LayoutError(f"no qubit {name}[{sub}]") from None

    def span(self, name: str, hi: int, lo: int) -> list[int]:
        """Qubits name[hi], name[hi-1], ..., name[lo] (most significant first)."""
        return [self.qubit(name, s) for s in range(hi, lo - 1, -1)]

    def names(self) -> list[str]:
        return list(self.cells)

    def subscripts(self, name: str) -> list[int]:
        return sorted(self.cells[name], reverse=True)

    def register(self, name: str) -> list[int]:
        """All qubits of a primary register, most significant first."""
        return [self.cells[name][s] for s in self.subscripts(name)]

    def label(self, q: int) -> tuple[str, int]:
        for name, sub_map in self.cells.items():
            for sub, qq in sub_map.items():
                if qq == q:
                    return name, sub
        raise LayoutError(f"qubit {q} belongs to no register")


def _build(columns: Sequence[tuple[str, Iterable[int]]],
           aliases: dict[str, tuple[str, int]] | None = None) -> tuple[GridLayout, RegisterMap]:
    # Ids are dense: left column first, top row first.
    coords: list[tuple[int, int]] = []
    cells: dict[str, dict[int, int]] = {}
    for col, (name, rows) in enumerate(columns):
        reg = cells.setdefault(name, {})
        for row in sorted(rows, reverse=True):
            reg[row] = len(coords)
            coords.append((row, col))
    return GridLayout(tuple(coords)), RegisterMap(cells, dict(aliases or {}))


def _positive(n: int, what: str = "N") -> None:
    if not isinstance(n, int) or n < 1:
        raise LayoutError(f"{what} must be a positive integer, got {n!r}")


def make_adder_layout(N: int, variant: str) -> tuple[GridLayout, RegisterMap]:
    """3N+2 qubits for the multi-bit adders.

    I:   columns A, C, B with C_{N+1..0} in the middle.
    II:  columns A, B, C.
    III: columns A (N rows), B (N+1 rows), C (N+1 rows).
    """
    _positive(N)
    a = range(N)
    if variant == "I":
        return _build([("A", a), ("C", range(N + 2)), ("B", a)])
    if variant == "II":
        return _build([("A", a), ("B", a), ("C", range(N + 2))])
    if variant == "III":
        return _build([("A", a), ("B", range(N + 1)), ("C", range(N + 1))])
    raise LayoutError(f"unknown adder variant {variant!r}")


def make_subtractor_layout(N: int) -> tuple[GridLayout, RegisterMap]:
    """3N+3 qubits: A_{N-1..0}, B_{N..0}, C_{N+1..0}."""
    _positive(N)
    return _build([("A", range(N)), ("B", range(N + 1)), ("C", range(N + 2))])


def make_plus1_layout(N: int, top: bool = True) -> tuple[GridLayout, RegisterMap]:
    """A_{N..0} beside C_{N+1..0} (2N+3 qubits); ``top=False`` drops C_{N+1}."""
    _positive(N)
    return _build([("A", range(N + 1)), ("C", range(N + 2 if top else N + 1))])


def make_multiplier_layout(N: int) -> tuple[GridLayout, RegisterMap]:
    """Columns D_{2N-1..-1}, [A_{N-1..0} over B_{N-1..-1}], C_{2N..-1}, E_{2N..-1}.

    The second column is stored as B_{2N-1..-1}; A_j is an alias of B_{N+j}.
    That is 8N+6 qubits (see the notes on the qubit count).
    """
    _positive(N)
    return _build([("D", range(-1, 2 * N)), ("B", range(-1, 2 * N)),
                   ("C", range(-1, 2 * N + 1)), ("E", range(-1, 2 * N + 1))],
                  {"A": ("B", N)})


def make_divider_layout(N: int, M: int, with_remainder: bool = False,
                        zero_safe: bool = False) -> tuple[GridLayout, RegisterMap]:
    """Five columns D'/D, B'/B, A/A', C/C', E/E' with rows 0..N+M.

    Primary names are the primed-bottom ones (D', B') and A, C, E, each with
    subscript equal to the row.  The upper-part names are aliases:
    D_j = D'_{j+N}, B_j = B'_{j+N}, A'_j = A_{j+N}, C'_j = C_{j+N},
    E'_j = E_{j+N}.  ``with_remainder`` adds D'_{-1}, B'_{-1}, A_{-1}, C_{-1};
    ``zero_safe`` adds D'_{N+M+1}, scratch for negating the top window.
    """
    _positive(N)
    _positive(M, "M")
    if M > N:
        raise LayoutError(f"divisor width M={M} exceeds dividend width N={N}")
    lo = -1 if with_remainder else 0
    rows = range(lo, N + M + 1)
    d_rows = range(lo, N + M + 2) if zero_safe else rows
    return _build([("D'", d_rows), ("B'", rows), ("A", rows), ("C", rows),
                   ("E", range(0, N + M + 1))],
                  {"D": ("D'", N), "B": ("B'", N), "A'": ("A", N),
                   "C'": ("C", N), "E'": ("E", N)})


def subscript_row_violations(layout: GridLayout, regs: RegisterMap) -> list[tuple[str, int]]:
    """Primary register cells whose row differs from their subscript."""
    return [(name, sub) for name, m in regs.cells.items()
            for sub, q in m.items() if layout.coord(q)[0] != sub]
