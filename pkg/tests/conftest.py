"""Shared helpers: load named registers, simulate, read registers back."""
import pytest

from artifact.ir import lower
from artifact.sim import load, run
from artifact.verify import get, put


def simulate(c, inputs, lowered=True):
    """inputs: {(name, lo, width): value}.  Returns the output state."""
    r = c.registers
    bits = {}
    for (name, lo, width), v in inputs.items():
        bits.update(put(r, name, lo, v, width))
    return run(lower(c) if lowered else c, load(c.qubit_count, bits))


def single(state):
    """Assert a single basis state with amplitude 1 and return its index."""
    assert state.support == 1
    (idx, amp), = state.amplitudes.items()
    assert abs(amp - 1) < 1e-9
    return idx


def zeros(state, qubits):
    idx = single(state)
    return all(not (idx >> q) & 1 for q in qubits)


@pytest.fixture
def read():
    return get
