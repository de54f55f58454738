import pytest
from hypothesis import given, strategies as st

from artifact.oracle import (BitVec, OracleError, encode_twos, full_adder, ref_add, ref_divmod,
                             ref_divzero_pattern, ref_mul, ref_signed_complement, ref_sub, twos_value)


@pytest.mark.parametrize("w", range(1, 9))
def test_twos_round_trip_exhaustive(w):
    for v in range(1 << w):
        bv = BitVec.of(v, w)
        assert encode_twos(twos_value(bv), w) == bv
    for s in range(-(1 << (w - 1)), 1 << (w - 1)):
        assert twos_value(encode_twos(s, w)) == s


@given(st.integers(1, 16).flatmap(lambda w: st.tuples(st.just(w), st.integers(0, (1 << w) - 1))))
def test_negation_is_flip_plus_one(wx):
    w, raw = wx
    x = twos_value(BitVec.of(raw, w))
    flipped = (~raw) & ((1 << w) - 1)
    assert BitVec.of((-x) % (1 << w), w) == BitVec.of((flipped + 1) % (1 << w), w)


def test_trivial_references():
    assert ref_add(5, 3) == 8
    assert ref_sub(2, 5) == -3
    assert ref_mul(6, 7) == 42
    assert ref_divmod(7, 3) == (2, 1)


def test_divmod_rejects_zero():
    with pytest.raises(OracleError):
        ref_divmod(3, 0)


@pytest.mark.parametrize("a,b,c", [(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)])
def test_full_adder(a, b, c):
    s, carry = full_adder(a, b, c)
    assert 2 * carry + s == a + b + c


def test_bitvec_errors_and_rendering():
    with pytest.raises(OracleError):
        BitVec.of(8, 3)
    with pytest.raises(OracleError):
        encode_twos(4, 3)
    assert str(BitVec.of(5, 4)) == "0101"


@pytest.mark.parametrize("sign,mag,n,out", [(0, 5, 3, 5), (1, 2, 3, 6), (1, 0, 3, 0), (1, 7, 3, 1)])
def test_signed_complement(sign, mag, n, out):
    assert ref_signed_complement(sign, mag, n) == out


def test_divzero_pattern_examples():
    # 1, ~a_2 = 0, ~a_1 = 1; the pattern itself fixes this value
    q, r = ref_divzero_pattern(3, 0b101)
    assert (q.unsigned, r.unsigned) == (0b101, 0b001)
    q, r = ref_divzero_pattern(2, 0b11, zero_safe=True)
    assert q.unsigned == 0b100 and r is None
    q, r = ref_divzero_pattern(1, 1)
    assert (q.bits, r.bits) == ((1,), (1,))
