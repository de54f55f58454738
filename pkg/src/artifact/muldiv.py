"""Long multiplication and long division on the grid.

Both units shift operands by moving qubit contents up and down a column, and
turn a conditional add into two unconditional ones: x*b = b/2 + (2x - 1)*b/2,
with the signed half prepared by the conditional complement.
"""
from __future__ import annotations

from .adders import p3_gates, p3_signed_gates
from .complement import plus1_tilde_gates, upm_gates
from .ir import Circuit, Emitter, Gate, cx, inverse, swap, x
from .layout import LayoutError, make_divider_layout, make_multiplier_layout, _positive


def _col(regs, name, lo, hi):
    """Qubits name[lo..hi], least significant first."""
    return [regs.qubit(name, k) for k in range(lo, hi + 1)]


# --- multiplier -----------------------------------------------------------------

def _rotate_down(regs, e: Emitter, hi, lo, log: list):
    """Move the content of B[hi] to B[lo], lifting everything in between by one row."""
    for k in range(hi, lo, -1):
        g = swap(regs.qubit("B", k), regs.qubit("B", k - 1))
        e.extend([g])
        log.append(g)


def _signed_overflow_fix(e: Emitter, regs, top, literal, sign):
    """Cancel the 2^top carry produced by adding b and -b.

    The carry appears exactly when the complemented magnitude is nonzero,
    which shows in its top bit B[top-1]; keying on the sign bit instead (the
    literal reading) also fires for -0 and corrupts the sum when b = 0.
    """
    c_top = regs.qubit("C", top)
    if literal:
        e.cx(sign, c_top)
        return
    w, via = regs.qubit("B", top - 1), regs.qubit("C", top - 1)
    e.extend([cx(w, via), cx(via, c_top), cx(w, via), cx(via, c_top)])


def _multiplier(N: int, literal: bool = False):
    _positive(N)
    layout, regs = make_multiplier_layout(N)
    e = Emitter()
    shifts: list[Gate] = []
    B = lambda lo, hi: _col(regs, "B", lo, hi)
    C = lambda lo, hi: _col(regs, "C", lo, hi)
    D = lambda lo, hi: _col(regs, "D", lo, hi)
    E = lambda lo, hi: _col(regs, "E", lo, hi)

    # b -> b/2: each swap pushes a fresh |0> up from B_{-1}.
    for k in range(0, N):
        g = swap(regs.qubit("B", k), regs.qubit("B", k - 1), zero=True)
        e.extend([g])
        shifts.append(g)
    # first half-term: C starts at 0, so copying is the same as adding
    for k in range(-1, N - 1):
        e.cx(regs.qubit("B", k), regs.qubit("C", k))
    sign = regs.qubit("A", 0)
    e.x(sign)
    upm = upm_gates(B(-1, N), D(-1, N))
    e.extend(upm)
    e.extend(p3_gates(B(-1, N - 1), C(-1, N), E(-1, N)))
    if literal:
        e.extend(inverse(upm))
        _signed_overflow_fix(e, regs, N, True, sign)
    else:
        _signed_overflow_fix(e, regs, N, False, sign)
        e.extend(inverse(upm))
    e.x(sign)
    e.mark("digit0")

    for n in range(1, N):
        # bring a_{n-1} down to the bottom; the multiplicand lands on B_{N+n-2..n-1}
        _rotate_down(regs, e, N + n - 1, n - 2, shifts)
        e.extend(p3_gates(B(n - 1, N + n - 1), C(n - 1, N + n), E(n - 1, N + n)))
        sign = regs.qubit("A", n)
        park = regs.qubit("D", N + n)
        e.x(sign)
        upm = upm_gates(B(n - 1, N + n), D(n - 1, N + n))
        e.extend(upm)
        e.swap(sign, park, zero=True)  # the adder below needs a |0> top digit
        e.extend(p3_gates(B(n - 1, N + n), C(n - 1, N + n + 1), E(n - 1, N + n + 1)))
        e.swap(park, sign, zero=True)
        if literal:
            e.extend(inverse(upm))
            _signed_overflow_fix(e, regs, N + n, True, sign)
        else:
            _signed_overflow_fix(e, regs, N + n, False, sign)
            e.extend(inverse(upm))
        e.x(sign)
        e.mark(f"digit{n}")

    _rotate_down(regs, e, 2 * N - 1, N - 2, shifts)
    return e, layout, regs, shifts


def build_multiplier(N: int, literal: bool = False) -> Circuit:
    """C_{2N..0} <- a * b.

    ``literal`` keys the overflow correction on the sign qubit, as the
    algorithm is written; that variant gives wrong products when b = 0.
    """
    e, layout, regs, _ = _multiplier(N, literal)
    return e.circuit(layout.size, layout, regs, unit="multiplier", n=N, literal=literal)


def cleanup_multiplier_inputs(N: int) -> Circuit:
    """Undo the operand rotations so A and B read a and b again."""
    _, layout, regs, shifts = _multiplier(N)
    return Circuit(layout.size, tuple(inverse(shifts)), layout, regs, meta={"unit": "multiplier-cleanup", "n": N})


# --- divider --------------------------------------------------------------------

def _signed_add(e: Emitter, b, a, c, park, literal):
    """a <- a + b mod 2^w for a conditionally complemented b.

    b[-1] holds the sign and b[:-1] the complemented field, whose own top bit
    starts at 0.  After complementing, that top bit equals the sign unless the
    magnitude is zero, where the sign would wrongly subtract 2^{w-1}.  So the
    sign is parked on the (|0>) complement scratch qubit and the field's top
    bit stands in for it during the addition.  ``literal`` adds the sign as is.
    """
    if literal:
        e.extend(p3_signed_gates(b, a, c))
        return
    e.swap(b[-1], park, zero=True)
    e.cx(b[-2], b[-1])
    e.extend(p3_signed_gates(b, a, c))
    e.cx(b[-2], b[-1])
    e.swap(park, b[-1], zero=True)


def _divider(N: int, M: int, zero_safe: bool, with_remainder: bool, literal: bool = False):
    _positive(N)
    _positive(M, "M")
    if M > N:
        raise LayoutError(f"divisor width M={M} exceeds dividend width N={N}")
    layout, regs = make_divider_layout(N, M, with_remainder, zero_safe)
    e = Emitter()
    shifts: list[Gate] = []
    Bp = lambda lo, hi: _col(regs, "B'", lo, hi)
    A = lambda lo, hi: _col(regs, "A", lo, hi)
    Dp = lambda lo, hi: _col(regs, "D'", lo, hi)
    anc = lambda lo, hi: _col(regs, "C", lo, hi) + [regs.qubit("E", hi)]

    if zero_safe:
        top = N  # dividend read as 0a: one more quotient digit, flags b = 0
    else:
        top = N - 1
        for j in range(M):
            g = swap(regs.qubit("B'", j + N), regs.qubit("B'", j + N - 1), zero=True)
            e.extend([g])
            shifts.append(g)

    for n in range(top, -1, -1):
        s = M + n
        sign_b, sign_a = regs.qubit("B'", s), regs.qubit("A", s)
        park, quot = regs.qubit("D'", s), regs.qubit("C", s)
        # trial subtraction of the aligned divisor
        if literal:
            e.x(sign_b)
            neg = upm_gates(Bp(n, s), Dp(n, s))
        else:
            # exact negation of 0b over M+1 bits, so that b = 0 stays 0
            neg = [x(q) for q in reversed(Bp(n, s))] + plus1_tilde_gates(Bp(n, s), Dp(n, s + 1))
        e.extend(neg)
        e.extend(p3_signed_gates(Bp(n, s), A(n, s), anc(n, s)))
        e.extend(inverse(neg))
        if literal:
            e.x(sign_b)
        if n == 0 and not with_remainder:
            # only the quotient digit is wanted: it is the inverted sign
            e.x(sign_a)
            e.swap(sign_a, quot, zero=True)
            e.mark(f"digit{n}")
            break
        # keep a copy of the sign (1 = went negative); the sum still needs it
        e.extend([cx(sign_a, sign_b), cx(sign_b, park), cx(sign_a, sign_b)])
        # shift the divisor down one row
        for j in range(M):
            g = swap(regs.qubit("B'", n + j), regs.qubit("B'", n + j - 1))
            e.extend([g])
            shifts.append(g)
        # add back b in two halves: b/2 now, then (2c - 1) b/2
        e.extend(p3_signed_gates(Bp(n - 1, s), A(n - 1, s), anc(n - 1, s)))
        e.swap(park, sign_b, zero=True)
        e.x(sign_b)
        upm = upm_gates(Bp(n - 1, s), Dp(n - 1, s))
        e.extend(upm)
        _signed_add(e, Bp(n - 1, s), A(n - 1, s), anc(n - 1, s), park, literal)
        e.extend(inverse(upm))
        # quotient digit: B' -> A -> C.  A_{M+n} is |0> only for b > 0, so the
        # first move stays a full swap.
        e.swap(sign_b, sign_a)
        e.swap(sign_a, quot, zero=True)
        e.mark(f"digit{n}")
    return e, layout, regs, shifts


def build_divider(N: int, M: int, zero_safe: bool = False, with_remainder: bool = True,
                  literal: bool = False) -> Circuit:
    """Quotient in C_{N+M-1..M} (C_{N+M..M} when zero_safe), remainder in A_{M-1..0}.

    ``literal`` forms every signed divisor term with the conditional
    complement and adds its sign bit as is; -0 then reads as -2^M, which only
    matters when b = 0.
    """
    e, layout, regs, _ = _divider(N, M, zero_safe, with_remainder, literal)
    return e.circuit(layout.size, layout, regs, unit="divider", n=N, m=M,
                     zero_safe=zero_safe, with_remainder=with_remainder, literal=literal)


def cleanup_divider_divisor(N: int, M: int, zero_safe: bool = False, with_remainder: bool = True) -> Circuit:
    """Shift the divisor back up to B_{M-1..0}."""
    _, layout, regs, shifts = _divider(N, M, zero_safe, with_remainder)
    return Circuit(layout.size, tuple(inverse(shifts)), layout, regs,
                   meta={"unit": "divider-cleanup", "n": N, "m": M})
