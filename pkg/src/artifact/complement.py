"""Two's-complement units: increment, negate, conditional complement, subtract."""
from __future__ import annotations

from typing import Sequence

from .adders import p_ripple_gates
from .ir import Circuit, Emitter, Gate, cx, csx, csxdg, inverse, swap, x
from .layout import _build, _positive, make_plus1_layout, make_subtractor_layout


def uc_tilde_gates(a, c2, c1, c) -> list[Gate]:
    """Half-adder carry: c1 <- a AND c.  Argument order follows the column top-down."""
    g = [cx(a, c), cx(c, c1), cx(a, c), cx(c, c1)]  # c1 <- a
    out = g + [csx(c1, c2)] + list(reversed(g))
    out += [cx(c2, c1), cx(c1, c2)]                # c1 <- X^{a/2}|0>, c2 <- |0>
    out += [csx(c, c1)]                            # exponent a/2 + c/2
    out += [cx(a, c), csxdg(c, c1), cx(a, c)]      # minus (a^c)/2 leaves a*c
    return out


def plus1_gates(a: Sequence[int], c: Sequence[int]) -> list[Gate]:
    """a[0..w] <- a[0..w-1] + 1 with the carry landing in a[w]; |c| = w + 2."""
    w = len(a) - 1
    if len(c) != w + 2:
        raise ValueError("increment needs |C| = |A| + 1")
    out = [x(c[0])]
    for k in range(w):
        out += uc_tilde_gates(a[k], c[k + 2], c[k + 1], c[k])
    out.append(swap(c[w], a[w], zero=True))
    for k in range(w - 1, 0, -1):
        out.append(cx(c[k], a[k]))
        out += inverse(uc_tilde_gates(a[k - 1], c[k + 1], c[k], c[k - 1]))
    out += [cx(c[0], a[0]), x(c[0])]
    return out


def plus1_tilde_gates(a: Sequence[int], c: Sequence[int], hardwired: bool = True) -> list[Gate]:
    """a <- (a + carry) mod 2^w with |c| >= w + 1.

    With ``hardwired`` the carry is a constant 1 written to and erased from
    c[0]; without it, c[0] already holds the carry and is left alone.
    """
    w = len(a)
    if len(c) < w + 1:
        raise ValueError("modular increment needs |C| >= |A| + 1")
    out = [x(c[0])] if hardwired else []
    for k in range(w - 1):
        out += uc_tilde_gates(a[k], c[k + 2], c[k + 1], c[k])
    for k in range(w - 1, 0, -1):
        out.append(cx(c[k], a[k]))
        out += inverse(uc_tilde_gates(a[k - 1], c[k + 1], c[k], c[k - 1]))
    out.append(cx(c[0], a[0]))
    if hardwired:
        out.append(x(c[0]))
    return out


def uflip_gates(a: Sequence[int], c0: int) -> list[Gate]:
    """a[k] ^= a[w] for k < w, and c0 <- a[w].  2w + 1 CNOTs."""
    w = len(a) - 1
    out = [cx(a[0], c0)]
    out += [cx(a[k + 1], a[k]) for k in range(0, w - 1)]       # a[k] ^= old a[k+1]
    out.append(cx(a[w], a[w - 1]))
    out += [cx(a[k + 1], a[k]) for k in range(w - 2, -1, -1)]  # a[k] ^= new a[k+1]
    out.append(cx(a[0], c0))
    return out


def ures_gates(sign: int, c: Sequence[int]) -> list[Gate]:
    """Clear c[0] == sign, relaying the sign down the otherwise-|0> column c."""
    w = len(c) - 1
    out = [cx(sign, c[w])]
    out += [cx(c[k], c[k - 1]) for k in range(w, 0, -1)]
    out += [cx(c[k + 1], c[k]) for k in range(1, w)]
    out.append(cx(sign, c[w]))
    return out


def upm_gates(a: Sequence[int], c: Sequence[int]) -> list[Gate]:
    """Conditional complement: a[0..w-1] <- -a mod 2^w when a[w] is set.  |c| = w + 1."""
    w = len(a) - 1
    if len(c) != w + 1:
        raise ValueError("conditional complement needs |C| = |A|")
    return (uflip_gates(a, c[0])
            + plus1_tilde_gates(a[:w], c, hardwired=False)
            + ures_gates(a[w], c))


# --- builders ------------------------------------------------------------------

def _span(regs, name, lo, hi):
    return [regs.qubit(name, k) for k in range(lo, hi + 1)]


def build_uc_tilde() -> Circuit:
    layout, regs = _build([("A", [0]), ("C", range(3))])
    a, c = regs.qubit("A", 0), _span(regs, "C", 0, 2)
    return Circuit(4, tuple(uc_tilde_gates(a, c[2], c[1], c[0])), layout, regs, meta={"unit": "uc-tilde"})


def build_plus1(N: int) -> Circuit:
    layout, regs = make_plus1_layout(N)
    gates = plus1_gates(_span(regs, "A", 0, N), _span(regs, "C", 0, N + 1))
    return Circuit(layout.size, tuple(gates), layout, regs, meta={"unit": "plus1", "n": N})


def build_plus1_tilde(N: int, hardwired: bool = True) -> Circuit:
    """Modular increment on A_{N-1..0} with C_{N..0}; A_N and C_{N+1} are not needed."""
    _positive(N)
    layout, regs = _build([("A", range(N)), ("C", range(N + 1))])
    gates = plus1_tilde_gates(_span(regs, "A", 0, N - 1), _span(regs, "C", 0, N), hardwired)
    return Circuit(layout.size, tuple(gates), layout, regs,
                   meta={"unit": "plus1-tilde", "n": N, "hardwired": hardwired})


def build_negate(N: int) -> Circuit:
    """Flip A_{N..0}, then add one modulo 2^{N+1}; C_{N+1..0} are scratch."""
    layout, regs = make_plus1_layout(N)
    a = _span(regs, "A", 0, N)
    gates = [x(q) for q in reversed(a)] + plus1_tilde_gates(a, _span(regs, "C", 0, N + 1))
    return Circuit(layout.size, tuple(gates), layout, regs, meta={"unit": "negate", "n": N})


def build_uflip(N: int) -> Circuit:
    layout, regs = make_plus1_layout(N, top=False)
    gates = uflip_gates(_span(regs, "A", 0, N), regs.qubit("C", 0))
    return Circuit(layout.size, tuple(gates), layout, regs, meta={"unit": "uflip", "n": N})


def build_ures(N: int) -> Circuit:
    layout, regs = make_plus1_layout(N, top=False)
    gates = ures_gates(regs.qubit("A", N), _span(regs, "C", 0, N))
    return Circuit(layout.size, tuple(gates), layout, regs, meta={"unit": "ures", "n": N})


def build_upm(N: int) -> Circuit:
    layout, regs = make_plus1_layout(N, top=False)
    gates = upm_gates(_span(regs, "A", 0, N), _span(regs, "C", 0, N))
    return Circuit(layout.size, tuple(gates), layout, regs, meta={"unit": "upm", "n": N})


def subtractor_gates(a, b, c) -> tuple[list[Gate], list[Gate]]:
    """(complement stage, add stage).  |a| = w, |b| = w + 1, |c| = w + 2."""
    w = len(a)
    comp = [x(q) for q in reversed(b)] + plus1_tilde_gates(b, c)
    add = p_ripple_gates(a, b[:w], c, "II") + [cx(b[w], c[w])]
    return comp, add


def build_subtractor(N: int) -> Circuit:
    """C_{N..0} <- A - B in (N+1)-bit two's complement.  B is left holding -b."""
    layout, regs = make_subtractor_layout(N)
    comp, add = subtractor_gates(_span(regs, "A", 0, N - 1), _span(regs, "B", 0, N),
                                 _span(regs, "C", 0, N + 1))
    e = Emitter()
    e.extend(comp)
    e.mark("complemented")
    e.extend(add)
    e.mark("difference")
    return e.circuit(layout.size, layout, regs, unit="subtractor", n=N)


def build_subtractor_cleanup(N: int) -> Circuit:
    """Undo the complement stage so B reads b again.

    The increment inside needs C at |0>, which is not the case right after
    the subtraction (C holds the difference).  Run it once the difference
    has been consumed and uncomputed.
    """
    layout, regs = make_subtractor_layout(N)
    comp, _ = subtractor_gates(_span(regs, "A", 0, N - 1), _span(regs, "B", 0, N),
                               _span(regs, "C", 0, N + 1))
    return Circuit(layout.size, tuple(inverse(comp)), layout, regs,
                   meta={"unit": "subtractor-cleanup", "n": N})
