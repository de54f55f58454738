"""Classical reference arithmetic, computed with plain integers."""
from __future__ import annotations

from dataclasses import dataclass


class OracleError(ValueError):
    pass


@dataclass(frozen=True)
class BitVec:
    bits: tuple[int, ...]  # most significant first

    @property
    def width(self) -> int:
        return len(self.bits)

    @property
    def unsigned(self) -> int:
        v = 0
        for b in self.bits:
            v = 2 * v + b
        return v

    @classmethod
    def of(cls, value: int, width: int) -> BitVec:
        if not 0 <= value < 1 << width:
            raise OracleError(f"{value} does not fit in {width} bits")
        return cls(tuple((value >> k) & 1 for k in range(width - 1, -1, -1)))

    def __str__(self):
        return "".join(map(str, self.bits))


def twos_value(v: BitVec) -> int:
    if v.width < 1:
        raise OracleError("empty bit vector")
    n = v.width - 1
    return -(v.bits[0] << n) + sum(b << (n - k) for k, b in enumerate(v.bits) if k > 0)


def encode_twos(value: int, width: int) -> BitVec:
    lo, hi = -(1 << (width - 1)), 1 << (width - 1)
    if not lo <= value < hi:
        raise OracleError(f"{value} is outside [{lo}, {hi})")
    return BitVec.of(value % (1 << width), width)


def ref_add(a: int, b: int) -> int:
    return a + b


def ref_sub(a: int, b: int) -> int:
    return a - b


def ref_mul(a: int, b: int) -> int:
    return a * b


def ref_divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise OracleError("division by zero has no arithmetic reference")
    return divmod(a, b)


def full_adder(a: int, b: int, c: int) -> tuple[int, int]:
    """(sum, carry) of three bits."""
    t = a + b + c
    return t & 1, t >> 1


def ref_signed_complement(sign: int, magnitude: int, n: int) -> int:
    """Magnitude field after complementing a sign/magnitude pair.

    Non-negative inputs pass through; negative inputs become (-m) mod 2^n.
    For m > 0 this makes -2^n*sign + field == (1 - 2*sign)*m exactly; the
    sign=1, m=0 input has no exact image with the sign bit kept, and maps to 0.
    """
    return magnitude if not sign else (-magnitude) % (1 << n)


def ref_divzero_pattern(N: int, dividend: int, zero_safe: bool = False) -> tuple[BitVec, BitVec | None]:
    """Expected (quotient, remainder) bit patterns when the divisor is zero.

    Without the flag: quotient 1, ~a_{N-1}, ..., ~a_1 and remainder 0...01
    (returned with an N-bit width; the caller trims to the divisor width).
    With the flag: quotient 1, 0, ~a_{N-1}, ..., ~a_1 and no remainder claim.
    """
    a = BitVec.of(dividend, N)
    inv = tuple(1 - b for b in a.bits[:-1])
    if zero_safe:
        return BitVec((1, 0) + inv), None
    return BitVec((1,) + inv), BitVec.of(1, N)
