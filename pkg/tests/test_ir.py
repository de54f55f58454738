import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from artifact.adders import build_p1_onebit, build_p2_onebit, build_uc
from artifact.ir import (Circuit, Gate, IRError, Kind, cancel_adjacent_pairs, compose, csx, csxdg,
                         cx, dagger, gate_counts, inverse, lower, swap, validate_connectivity, x)
from artifact.layout import GridLayout
from artifact.sim import unitary_of


def test_gate_validation():
    with pytest.raises(IRError):
        Gate(Kind.CNOT, 1)
    with pytest.raises(IRError):
        cx(2, 2)
    with pytest.raises(IRError):
        Gate(Kind.X, 0, 1)
    with pytest.raises(IRError):
        Gate(Kind.CNOT, 1, 0, zero=True)


def test_inverse_pairs_csx_with_csxdg():
    assert csx(0, 1).inverse() == csxdg(0, 1)
    assert inverse([csx(0, 1), x(2)]) == [x(2), csxdg(0, 1)]


def test_inverse_drops_zero_hint():
    assert inverse([swap(0, 1, zero=True)]) == [swap(0, 1)]


@pytest.mark.parametrize("g,expected", [
    (swap(0, 1), [cx(0, 1), cx(1, 0), cx(0, 1)]),
    (swap(0, 1, zero=True), [cx(0, 1), cx(1, 0)]),
    (csxdg(0, 1), [cx(0, 1), csx(0, 1)]),
    (x(3), [x(3)]),
])
def test_lowering(g, expected):
    c = lower(Circuit(4, (g,)))
    assert list(c.gates) == expected


def test_csxdg_lowering_is_the_inverse():
    c = Circuit(2, (csx(0, 1),) + lower(Circuit(2, (csxdg(0, 1),))).gates)
    assert np.allclose(unitary_of(c), np.eye(4))


def test_marker_survives_lowering():
    c = build_p1_onebit()
    low = lower(c)
    assert low.marker("phi_I") == c.marker("phi_I")  # nothing to expand in front of it


@pytest.mark.parametrize("gates,kept", [
    ([x(0), x(0)], 0),
    ([cx(0, 1), cx(0, 1)], 0),
    ([cx(0, 1), cx(1, 0)], 2),
    ([cx(0, 1), x(1), cx(0, 1)], 3),
    ([cx(0, 1), cx(2, 3), cx(0, 1)], 1),       # disjoint gate in between
    ([x(0), cx(1, 2), cx(1, 2), x(0)], 0),     # cascade
    ([csx(0, 1), csx(0, 1)], 2),               # not self-inverse
])
def test_cancel_adjacent_pairs(gates, kept):
    assert len(cancel_adjacent_pairs(Circuit(4, tuple(gates))).gates) == kept


@pytest.mark.parametrize("builder,raw,cancelled", [
    (build_p1_onebit, (17, 3), (15, 3)),
    (build_p2_onebit, (22, 3), (20, 3)),
    (build_uc, (23, 3), (21, 3)),
])
def test_counts_before_and_after_cancellation(builder, raw, cancelled):
    c = builder()
    gc, gk = gate_counts(c), gate_counts(cancel_adjacent_pairs(c))
    assert (gc.cnot, gc.csx) == raw
    assert (gk.cnot, gk.csx) == cancelled
    assert np.allclose(unitary_of(c), unitary_of(cancel_adjacent_pairs(c)))


def test_gate_counts_depth():
    gc = gate_counts(Circuit(3, (x(0), cx(0, 1), x(2), cx(1, 2))))
    assert (gc.x, gc.cnot, gc.depth, gc.two_qubit_total) == (2, 2, 3, 2)


def test_connectivity_checks():
    layout = GridLayout(((0, 0), (0, 1), (0, 2)))
    assert validate_connectivity(Circuit(3, (cx(0, 1), cx(1, 2)), layout)) == []
    bad = validate_connectivity(Circuit(3, (cx(0, 2),), layout))
    assert bad == [(0, cx(0, 2))]
    with pytest.raises(IRError):
        validate_connectivity(Circuit(3, (swap(0, 1),), layout))


def test_prefix_and_compose():
    c = build_p1_onebit()
    head, pos = c.prefix("phi_II"), c.marker("phi_II")
    tail = c.with_gates(c.gates[pos:])
    assert compose(head, tail).gates == c.gates


def test_circuit_rejects_out_of_range():
    with pytest.raises(IRError):
        Circuit(2, (cx(0, 5),))


_gate = st.one_of(
    st.builds(x, st.integers(0, 2)),
    *[st.tuples(st.integers(0, 2), st.integers(0, 2)).filter(lambda t: t[0] != t[1]).map(
        lambda t, f=f: f(*t)) for f in (cx, csx, csxdg, swap)],
)


@settings(max_examples=60, deadline=None)
@given(st.lists(_gate, max_size=12))
def test_dagger_undoes_random_circuits(gates):
    c = Circuit(3, tuple(gates))
    assert np.allclose(unitary_of(compose(c, dagger(c))), np.eye(8), atol=1e-9)


@settings(max_examples=60, deadline=None)
@given(st.lists(_gate, max_size=12))
def test_lowering_and_cancelling_preserve_the_unitary(gates):
    c = Circuit(3, tuple(gates))
    u = unitary_of(c)
    assert np.allclose(unitary_of(lower(c)), u, atol=1e-9)
    assert np.allclose(unitary_of(cancel_adjacent_pairs(lower(c))), u, atol=1e-9)
