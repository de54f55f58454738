"""Sparse statevector simulator for the restricted gate set.

A state is a dict {basis index: amplitude}; qubit q is bit q of the index.
X and CNOT permute entries, CSX splits an entry with control 1 into two.
The arithmetic circuits recombine every split, so basis inputs stay tiny.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .ir import Circuit, Gate, Kind
from .layout import RegisterMap

PRUNE = 1e-12
NORM_TOL = 1e-9
MAX_DENSE_QUBITS = 12

_P = (1 + 1j) / 2  # sqrt(X) = [[P, M], [M, P]]
_M = (1 - 1j) / 2


class SimError(ValueError):
    pass


@dataclass
class SparseState:
    qubit_count: int
    amplitudes: dict[int, complex]

    def norm2(self) -> float:
        return sum(abs(a) ** 2 for a in self.amplitudes.values())

    def copy(self) -> SparseState:
        return SparseState(self.qubit_count, dict(self.amplitudes))

    @property
    def support(self) -> int:
        return len(self.amplitudes)

    def bits(self, index: int) -> str:
        """Index rendered MSB (highest qubit) first."""
        return format(index, f"0{self.qubit_count}b")

    def close_to(self, other: SparseState, tol: float = 1e-9) -> bool:
        keys = set(self.amplitudes) | set(other.amplitudes)
        return all(abs(self.amplitudes.get(k, 0) - other.amplitudes.get(k, 0)) <= tol for k in keys)


def _index(qubit_count: int, bits: str | Sequence[int] | int) -> int:
    if isinstance(bits, int):
        if not 0 <= bits < 1 << qubit_count:
            raise SimError("basis index out of range")
        return bits
    bits = "".join(str(b) for b in bits) if not isinstance(bits, str) else bits
    if len(bits) != qubit_count or set(bits) - {"0", "1"}:
        raise SimError(f"bit pattern {bits!r} does not have width {qubit_count}")
    return int(bits, 2)


def basis_state(qubit_count: int, bits: str | Sequence[int] | int) -> SparseState:
    """Bits are written highest qubit first, so ``bits[-1]`` is qubit 0."""
    return SparseState(qubit_count, {_index(qubit_count, bits): 1 + 0j})


def superpose(qubit_count: int, terms: Iterable[tuple[complex, str | Sequence[int] | int]]) -> SparseState:
    amps: dict[int, complex] = {}
    for amp, bits in terms:
        k = _index(qubit_count, bits)
        if k in amps:
            raise SimError("duplicate basis pattern in superposition")
        amps[k] = complex(amp)
    st = SparseState(qubit_count, {k: a for k, a in amps.items() if abs(a) >= PRUNE})
    if abs(st.norm2() - 1) > NORM_TOL:
        raise SimError(f"amplitudes are not normalized (norm^2 = {st.norm2():.12g})")
    return st


def _renorm(amps: dict[int, complex]) -> dict[int, complex]:
    amps = {k: a for k, a in amps.items() if abs(a) >= PRUNE}
    n2 = sum(abs(a) ** 2 for a in amps.values())
    if abs(n2 - 1) > 1e-12 and n2 > 0:
        s = 1 / math.sqrt(n2)
        amps = {k: a * s for k, a in amps.items()}
    return amps


def _apply(amps: dict[int, complex], g: Gate) -> dict[int, complex]:
    t = 1 << g.target
    k = g.kind
    if k is Kind.X:
        return {i ^ t: a for i, a in amps.items()}
    c = 1 << g.control
    if k is Kind.CNOT:
        return {(i ^ t if i & c else i): a for i, a in amps.items()}
    if k is Kind.SWAP:
        out = {}
        for i, a in amps.items():
            if bool(i & c) != bool(i & t):
                i ^= c | t
            out[i] = a
        return out
    if k is Kind.CSX or k is Kind.CSXDG:
        p, m = (_P, _M) if k is Kind.CSX else (_M, _P)  # sqrt(X)^dagger swaps the entries
        out: dict[int, complex] = {}
        for i, a in amps.items():
            if i & c:
                out[i] = out.get(i, 0) + p * a
                out[i ^ t] = out.get(i ^ t, 0) + m * a
            else:
                out[i] = out.get(i, 0) + a
        return _renorm(out)
    raise SimError(f"unsupported gate {g}")


def apply(state: SparseState, gate: Gate) -> SparseState:
    for q in gate.qubits:
        if not 0 <= q < state.qubit_count:
            raise SimError(f"gate {gate} operand out of range")
    return SparseState(state.qubit_count, _apply(state.amplitudes, gate))


def run(circuit: Circuit, state: SparseState, max_support: int | None = None) -> SparseState:
    if circuit.qubit_count != state.qubit_count:
        raise SimError("circuit and state widths differ")
    amps = state.amplitudes
    for g in circuit.gates:
        amps = _apply(amps, g)
        if max_support is not None and len(amps) > max_support:
            raise SimError(f"support grew to {len(amps)} at gate {g}")
    return SparseState(state.qubit_count, amps)


def run_gates(gates: Iterable[Gate], state: SparseState) -> SparseState:
    amps = state.amplitudes
    for g in gates:
        amps = _apply(amps, g)
    return SparseState(state.qubit_count, amps)


def qubit_value(state: SparseState, q: int) -> int:
    """Bit value of qubit q, which must agree across the whole support."""
    vals = {(i >> q) & 1 for i in state.amplitudes}
    if len(vals) != 1:
        raise SimError(f"qubit {q} is not classically definite")
    return vals.pop()


def read_qubits(state: SparseState, qubits: Sequence[int]) -> int:
    """Unsigned value of the listed qubits, most significant first."""
    v = 0
    for q in qubits:
        v = (v << 1) | qubit_value(state, q)
    return v


def read_register(state: SparseState, registers: RegisterMap, name: str) -> int:
    return read_qubits(state, registers.register(name) if name in registers.cells
                       else [registers.qubit(name, s) for s in
                             sorted((s - registers.aliases[name][1]
                                     for s in registers.cells[registers.aliases[name][0]]),
                                    reverse=True)])


def load(qubit_count: int, assignment: dict[int, int]) -> SparseState:
    """Basis state with the given qubits set to 1 (every other qubit 0)."""
    idx = 0
    for q, v in assignment.items():
        if v:
            idx |= 1 << q
    return SparseState(qubit_count, {idx: 1 + 0j})


def unitary_of(circuit: Circuit) -> np.ndarray:
    n = circuit.qubit_count
    if n > MAX_DENSE_QUBITS:
        raise SimError(f"dense unitary limited to {MAX_DENSE_QUBITS} qubits, got {n}")
    dim = 1 << n
    u = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        out = run(circuit, SparseState(n, {col: 1 + 0j}))
        for row, a in out.amplitudes.items():
            u[row, col] = a
    return u
