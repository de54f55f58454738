import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from artifact.adders import (build_p1, build_p1_onebit, build_p2, build_p2_onebit, build_p3,
                             build_p3_signed, build_uc, build_us, onebit_order)
from artifact.ir import gate_counts, lower, validate_connectivity
from artifact.oracle import encode_twos, full_adder, ref_add, twos_value, BitVec
from artifact.verify import get, in_reference_order

from conftest import simulate, single, zeros

BITS3 = list(itertools.product((0, 1), repeat=3))


@pytest.mark.parametrize("builder", [build_p1_onebit, build_p2_onebit])
@pytest.mark.parametrize("a,b,c", BITS3)
def test_onebit_truth_table(builder, a, b, c, read):
    circ = builder()
    out = simulate(circ, {("A", 0, 1): a, ("B", 0, 1): b, ("C", 0, 1): c})
    r = circ.registers
    s, carry = full_adder(a, b, c)
    single(out)
    assert (read(out, r, "A", 0, 0), read(out, r, "B", 0, 0)) == (a, b)
    assert (read(out, r, "C", 0, 0), read(out, r, "C", 1, 1), read(out, r, "C", 2, 2)) == (s, carry, 0)


def test_onebit_example():
    circ = build_p1_onebit()
    out = simulate(circ, {("A", 0, 1): 1, ("B", 0, 1): 0, ("C", 0, 1): 1})
    r = circ.registers
    idx = single(out)
    assert [(idx >> r.qubit("C", k)) & 1 for k in range(3)] == [0, 1, 0]


def test_p2_matrix_equals_p1():
    u1 = in_reference_order(build_p1_onebit(), onebit_order(build_p1_onebit()))
    u2 = in_reference_order(build_p2_onebit(), onebit_order(build_p2_onebit()))
    assert np.allclose(u1, u2, atol=1e-9)


@pytest.mark.parametrize("a,b,c", BITS3)
def test_uc_carry(a, b, c, read):
    circ = build_uc()
    out = simulate(circ, {("A", 0, 1): a, ("B", 0, 1): b, ("C", 0, 1): c})
    r = circ.registers
    assert read(out, r, "C", 1, 1) == full_adder(a, b, c)[1]
    assert (read(out, r, "A", 0, 0), read(out, r, "B", 0, 0), read(out, r, "C", 0, 0)) == (a, b, c)
    assert zeros(out, [r.qubit("C", 2)])


@pytest.mark.parametrize("a,b,c", BITS3)
def test_us_sum(a, b, c, read):
    circ = build_us()
    out = simulate(circ, {("A", 0, 1): a, ("B", 0, 1): b, ("C", 0, 1): c})
    assert read(out, circ.registers, "B", 0, 0) == full_adder(a, b, c)[0]


def test_us_counts():
    assert gate_counts(build_us()).cnot == 2


def test_uc_counts():
    gc = gate_counts(build_uc())
    assert (gc.cnot, gc.csx) == (23, 3)


@pytest.mark.parametrize("builder", [build_p1, build_p2])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_out_of_place_adders_exhaustive(builder, n, read):
    circ = builder(n)
    r = circ.registers
    for a in range(1 << n):
        for b in range(1 << n):
            out = simulate(circ, {("A", 0, n): a, ("B", 0, n): b})
            assert zeros(out, [r.qubit("C", n + 1)])
            assert read(out, r, "C", 0, n) == ref_add(a, b)
            assert (read(out, r, "A", 0, n - 1), read(out, r, "B", 0, n - 1)) == (a, b)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_p3_exhaustive(n, read):
    circ = build_p3(n)
    r = circ.registers
    for a in range(1 << n):
        for b in range(1 << n):
            out = simulate(circ, {("A", 0, n): a, ("B", 0, n): b})
            assert zeros(out, r.register("C"))
            assert read(out, r, "B", 0, n) == ref_add(a, b)
            assert read(out, r, "A", 0, n - 1) == a


def test_p3_example(read):
    circ = build_p3(2)
    out = simulate(circ, {("A", 0, 2): 2, ("B", 0, 2): 1})
    assert read(out, circ.registers, "B", 0, 2) == 3


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_p3_signed_exhaustive(n, read):
    circ = build_p3_signed(n)
    r = circ.registers
    for a in range(1 << n):
        for b in range(1 << n):
            out = simulate(circ, {("A", 0, n): a, ("B", 0, n): b})
            assert zeros(out, r.register("C"))
            total = twos_value(BitVec.of(a, n)) + twos_value(BitVec.of(b, n))
            assert read(out, r, "B", 0, n - 1) == total % (1 << n)


def test_p3_signed_opposites_cancel(read):
    circ = build_p3_signed(3)
    out = simulate(circ, {("A", 0, 3): 2, ("B", 0, 3): encode_twos(-2, 3).unsigned})
    assert read(out, circ.registers, "B", 0, 2) == 0


@pytest.mark.parametrize("x", range(8))
def test_p3_signed_plus_zero(x, read):
    circ = build_p3_signed(3)
    out = simulate(circ, {("A", 0, 3): 0, ("B", 0, 3): x})
    assert read(out, circ.registers, "B", 0, 2) == x


@settings(max_examples=25, deadline=None)
@given(st.integers(5, 8).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(0, (1 << n) - 1), st.integers(0, (1 << n) - 1))))
def test_p3_random_wide(nab):
    n, a, b = nab
    circ = build_p3(n)
    out = simulate(circ, {("A", 0, n): a, ("B", 0, n): b})
    assert get(out, circ.registers, "B", 0, n) == a + b


@pytest.mark.parametrize("builder", [build_p1, build_p2, build_p3, build_p3_signed])
@pytest.mark.parametrize("n", [1, 2, 5, 8])
def test_adders_respect_the_grid(builder, n):
    circ = builder(n)
    assert circ.qubit_count == 3 * n + 2 or builder is build_p3_signed
    assert validate_connectivity(lower(circ)) == []


@pytest.mark.parametrize("builder", [build_p1, build_p2])
@pytest.mark.parametrize("n", [1, 4])
def test_ripple_counts_are_linear(builder, n):
    per = gate_counts(builder(1))
    gc = gate_counts(builder(n))
    assert (gc.cnot, gc.csx) == (n * per.cnot, n * per.csx)
