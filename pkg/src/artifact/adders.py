"""Adders built from X, CNOT and controlled-sqrt(X).

The carry logic never uses a Toffoli.  A carry is the majority of three
bits, and majority(a, b, c) equals 1 - [a = b = c] XOR'd with the sum, so it
is assembled from sqrt(X) rotations whose exponents add up to an integer.

Gate-list helpers (``*_gates``) take qubit ids and can be reused inside the
larger units; ``build_*`` functions wrap them with a layout.
"""
from __future__ import annotations

from typing import Sequence

from .ir import Circuit, Emitter, Gate, cx, csx, inverse, swap
from .layout import make_adder_layout, _build, _positive


# --- one-digit pieces -------------------------------------------------------

def _p1_onebit(e: Emitter, a, b, c, c1, c2, marks=False):
    # Park X^{(a^b)/2} on c2, using c1 as scratch for a^b.
    first = [cx(c, c1), cx(a, c), cx(b, c), cx(c, c1)]
    e.extend(first)
    e.csx(c1, c2)
    e.extend(reversed(first))
    if marks:
        e.mark("phi_I")
    e.cx(c2, c1)  # move the rotated bit up; c1 is |0> so two CNOTs suffice
    e.cx(c1, c2)
    if marks:
        e.mark("phi_II")
    e.extend([cx(a, c), csx(c, c1), cx(a, c)])
    if marks:
        e.mark("phi_III")
    e.extend([cx(b, c), csx(c, c1), cx(b, c)])
    if marks:
        e.mark("phi_IV")
    # c1 now holds [not a = b = c]; XOR in the sum bit to get the carry.
    e.extend([cx(b, c), cx(a, c), cx(c, c1)])


def _p2_head(e: Emitter, a, b, c, c1, c2, marks=False):
    """The part of the chain-connected adder that ends at the fourth checkpoint."""
    first = [cx(c, c1), cx(a, b), cx(b, c), cx(c, c1)]
    e.extend(first)
    e.csx(c1, c2)
    e.extend(reversed(first))
    if marks:
        e.mark("phi_I")
    e.cx(c2, c1)
    e.cx(c1, c2)
    if marks:
        e.mark("phi_II")
    # a^c is reached through b: b <- a^b, c <- a^c, then undo.
    e.extend([cx(b, c), cx(a, b), cx(b, c), csx(c, c1), cx(b, c), cx(a, b), cx(b, c)])
    if marks:
        e.mark("phi_III")
    e.extend([cx(b, c), csx(c, c1), cx(b, c)])
    if marks:
        e.mark("phi_IV")


def _p2_onebit(e: Emitter, a, b, c, c1, c2, marks=False):
    _p2_head(e, a, b, c, c1, c2, marks)
    e.extend([cx(a, b), cx(b, c), cx(a, b), cx(c, c1)])


def p1_onebit_gates(a, b, c, c1, c2) -> list[Gate]:
    e = Emitter()
    _p1_onebit(e, a, b, c, c1, c2)
    return e.gates


def p2_onebit_gates(a, b, c, c1, c2) -> list[Gate]:
    e = Emitter()
    _p2_onebit(e, a, b, c, c1, c2)
    return e.gates


def uc_gates(a, b, c, c1, c2) -> list[Gate]:
    """Carry unit: c1 <- majority(a, b, c); a, b, c and c2 come back unchanged."""
    e = Emitter()
    _p2_head(e, a, b, c, c1, c2)
    # c1 holds [not a = b = c]; XOR in a^b^c, computed on c and then undone.
    e.extend([cx(a, b), cx(b, c), cx(c, c1), cx(b, c), cx(a, b)])
    return e.gates


def us_gates(a, b, c) -> list[Gate]:
    """b <- a ^ b ^ c."""
    return [cx(c, b), cx(a, b)]


# --- multi-digit gate lists -------------------------------------------------
# Registers are passed least significant first: a[n] is the qubit of A_n.

def p_ripple_gates(a: Sequence[int], b: Sequence[int], c: Sequence[int], variant: str = "II") -> list[Gate]:
    """Out-of-place ripple adder; c needs len(a) + 2 qubits, the top one an ancilla."""
    n = len(a)
    if len(b) != n or len(c) != n + 2:
        raise ValueError("ripple adder needs |B| = |A| and |C| = |A| + 2")
    one = p1_onebit_gates if variant == "I" else p2_onebit_gates
    out = []
    for k in range(n):
        out += one(a[k], b[k], c[k], c[k + 1], c[k + 2])
    return out


def p3_gates(a: Sequence[int], b: Sequence[int], c: Sequence[int]) -> list[Gate]:
    """In-place adder: b <- a + b.

    Sizes: |a| = w, |b| = |c| = w + 1 with b[w] and all of c at |0>.  The top
    carry unit borrows b[w] as its scratch qubit; it is still |0> then and
    sits right next to c[w].
    """
    w = len(a)
    if len(b) != w + 1 or len(c) != w + 1:
        raise ValueError("in-place adder needs |B| = |C| = |A| + 1")
    out: list[Gate] = []
    for k in range(w):
        anc = c[k + 2] if k + 2 <= w else b[w]
        out += uc_gates(a[k], b[k], c[k], c[k + 1], anc)
    out.append(swap(c[w], b[w], zero=True))
    for k in range(w - 1, 0, -1):
        out += us_gates(a[k], b[k], c[k])
        out += inverse(uc_gates(a[k - 1], b[k - 1], c[k - 1], c[k], c[k + 1]))
    out.append(cx(a[0], b[0]))
    return out


def p3_signed_gates(a: Sequence[int], b: Sequence[int], c: Sequence[int]) -> list[Gate]:
    """In-place adder modulo 2^w: b <- (a + b) mod 2^w, with |a| = |b| = w, |c| = w + 1."""
    w = len(a)
    if len(b) != w or len(c) != w + 1:
        raise ValueError("signed adder needs |B| = |A| and |C| = |A| + 1")
    out: list[Gate] = []
    for k in range(w - 1):
        out += uc_gates(a[k], b[k], c[k], c[k + 1], c[k + 2])
    out += [cx(c[w - 1], b[w - 1]), cx(a[w - 1], b[w - 1])]
    if w == 1:
        return out  # the top digit is also the bottom one
    out += inverse(uc_gates(a[w - 2], b[w - 2], c[w - 2], c[w - 1], c[w]))
    for k in range(w - 2, 0, -1):
        out += us_gates(a[k], b[k], c[k])
        out += inverse(uc_gates(a[k - 1], b[k - 1], c[k - 1], c[k], c[k + 1]))
    out.append(cx(a[0], b[0]))
    return out


# --- circuit builders ---------------------------------------------------------

def _onebit_layout(variant: str):
    # One-digit versions of the adder grids: C, C', C'' stacked in rows 0..2.
    if variant == "I":
        return _build([("A", [0]), ("C", range(3)), ("B", [0])])
    return _build([("A", [0]), ("B", [0]), ("C", range(3))])


def _onebit(variant: str) -> Circuit:
    layout, regs = _onebit_layout(variant)
    q = lambda name, s=0: regs.qubit(name, s)
    e = Emitter()
    (_p1_onebit if variant == "I" else _p2_onebit)(
        e, q("A"), q("B"), q("C", 0), q("C", 1), q("C", 2), marks=True)
    return e.circuit(layout.size, layout, regs, unit="p1-onebit" if variant == "I" else "p2-onebit")


def build_p1_onebit() -> Circuit:
    """One-digit full adder on the star-shaped grid (A and B both touch C)."""
    return _onebit("I")


def build_p2_onebit() -> Circuit:
    """One-digit full adder on a chain A - B - C - C' - C''."""
    return _onebit("II")


def onebit_order(c: Circuit) -> list[int]:
    """Qubits A, B, C, C', C'' of a one-digit unit, most significant first."""
    r = c.registers
    return [r.qubit("A", 0), r.qubit("B", 0), r.qubit("C", 0), r.qubit("C", 1), r.qubit("C", 2)]


def _ripple(N: int, variant: str) -> Circuit:
    _positive(N)
    layout, regs = make_adder_layout(N, variant)
    a = [regs.qubit("A", k) for k in range(N)]
    b = [regs.qubit("B", k) for k in range(N)]
    c = [regs.qubit("C", k) for k in range(N + 2)]
    e = Emitter()
    for k in range(N):
        e.extend((p1_onebit_gates if variant == "I" else p2_onebit_gates)(a[k], b[k], c[k], c[k + 1], c[k + 2]))
        e.mark(f"digit{k}")
    return e.circuit(layout.size, layout, regs, unit="p1" if variant == "I" else "p2", n=N)


def build_p1(N: int) -> Circuit:
    return _ripple(N, "I")


def build_p2(N: int) -> Circuit:
    return _ripple(N, "II")


def _carry_layout():
    # A_n, B_n side by side; C_n, C_{n+1}, C_{n+2} up the third column.
    return _build([("A", [0]), ("B", [0]), ("C", range(3))])


def build_uc() -> Circuit:
    layout, regs = _carry_layout()
    a, b = regs.qubit("A", 0), regs.qubit("B", 0)
    c = [regs.qubit("C", k) for k in range(3)]
    return Circuit(layout.size, tuple(uc_gates(a, b, *c)), layout, regs, meta={"unit": "uc"})


def build_us() -> Circuit:
    layout, regs = _build([("A", [0]), ("B", [0]), ("C", [0])])
    return Circuit(3, tuple(us_gates(0, 1, 2)), layout, regs, meta={"unit": "us"})


def build_p3(N: int) -> Circuit:
    _positive(N)
    layout, regs = make_adder_layout(N, "III")
    gates = p3_gates([regs.qubit("A", k) for k in range(N)],
                     [regs.qubit("B", k) for k in range(N + 1)],
                     [regs.qubit("C", k) for k in range(N + 1)])
    return Circuit(layout.size, tuple(gates), layout, regs, meta={"unit": "p3", "n": N})


def build_p3_signed(N: int) -> Circuit:
    """Modular in-place adder on A_{N-1..0}, B_{N-1..0}, C_{N..0} (no B_N)."""
    _positive(N)
    layout, regs = _build([("A", range(N)), ("B", range(N)), ("C", range(N + 1))])
    gates = p3_signed_gates([regs.qubit("A", k) for k in range(N)],
                            [regs.qubit("B", k) for k in range(N)],
                            [regs.qubit("C", k) for k in range(N + 1)])
    return Circuit(layout.size, tuple(gates), layout, regs, meta={"unit": "p3-signed", "n": N})
