from functools import reduce
from itertools import permutations, product
import numpy as np
import pytest
from qncsim.models.pauli import Basis, BellIndex, Pauli, PauliFrame, QubitId
from qncsim.services.pauli_core import (apply_pauli, classify_pair, clear_qubit, conjugate_cnot, conjugate_h,
                                        measurement_flips, pauli_mul)
from qncsim.services.stabilizer import StabilizerTableau
from qncsim.utils.errors import InvalidCircuitError

A, B, C, D = QubitId.A, QubitId.B, QubitId.C, QubitId.D

_I2 = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_Y = 1j * _X @ _Z
_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_P0 = np.array([[1, 0], [0, 0]], dtype=complex)
_P1 = np.array([[0, 0], [0, 1]], dtype=complex)
_MATRICES = {Pauli.I: _I2, Pauli.X: _X, Pauli.Y: _Y, Pauli.Z: _Z}


def _kron(ops):
    return reduce(np.kron, ops)


def _single(n, q, op):
    return _kron([op if k == q else _I2 for k in range(n)])


def _cnot(n, c, t):
    low = _kron([_P0 if k == c else _I2 for k in range(n)])
    high = _kron([_P1 if k == c else (_X if k == t else _I2) for k in range(n)])
    return low + high


def _dense_pauli(n, frame):
    return _kron([_MATRICES[frame.pauli(QubitId(k))] for k in range(n)])


def _proportional(a, b):
    """a = λb，|λ| = 1"""
    k = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    scale = a[k] / b[k]
    return np.isclose(abs(scale), 1.0) and np.allclose(a, scale * b)


def test_pauli_mul_is_xor_up_to_phase():
    assert pauli_mul(Pauli.X, Pauli.Z) is Pauli.Y
    assert pauli_mul(Pauli.Y, Pauli.Y) is Pauli.I
    assert pauli_mul(Pauli.Z, Pauli.Y) is Pauli.X
    assert pauli_mul(Pauli.I, Pauli.X) is Pauli.X


@pytest.mark.parametrize('before, after', [
    ({A: Pauli.X}, {A: Pauli.X, B: Pauli.X}),
    ({B: Pauli.Z}, {A: Pauli.Z, B: Pauli.Z}),
    ({A: Pauli.Z}, {A: Pauli.Z}),
    ({B: Pauli.X}, {B: Pauli.X}),
    ({A: Pauli.Y}, {A: Pauli.Y, B: Pauli.X}),
    ({B: Pauli.Y}, {A: Pauli.Z, B: Pauli.Y}),
])
def test_cnot_conjugation_rules(before, after):
    frame = conjugate_cnot(PauliFrame.from_paulis(before), A, B)
    assert frame == PauliFrame.from_paulis(after)


def test_cnot_with_same_qubit_is_rejected():
    with pytest.raises(InvalidCircuitError):
        conjugate_cnot(PauliFrame.identity(), C, C)


def test_hadamard_swaps_x_and_z():
    assert conjugate_h(PauliFrame.single(A, Pauli.X), A) == PauliFrame.single(A, Pauli.Z)
    assert conjugate_h(PauliFrame.single(A, Pauli.Y), A) == PauliFrame.single(A, Pauli.Y)
    assert conjugate_h(PauliFrame.single(B, Pauli.X), A) == PauliFrame.single(B, Pauli.X)


def test_measurement_flips_by_basis():
    frame = PauliFrame.from_paulis({A: Pauli.X, B: Pauli.Z, C: Pauli.Y})
    assert measurement_flips(frame, A, Basis.Z)
    assert not measurement_flips(frame, A, Basis.X)
    assert measurement_flips(frame, B, Basis.X)
    assert not measurement_flips(frame, B, Basis.Z)
    assert measurement_flips(frame, C, Basis.Z) and measurement_flips(frame, C, Basis.X)


def test_apply_and_clear():
    frame = apply_pauli(PauliFrame.single(A, Pauli.X), A, Pauli.Z)
    assert frame.pauli(A) is Pauli.Y
    assert clear_qubit(frame, A).is_identity


@pytest.mark.parametrize('paulis, expected', [
    ({}, BellIndex.PSI_PLUS),
    ({B: Pauli.X}, BellIndex.PHI_PLUS),
    ({A: Pauli.Z}, BellIndex.PSI_MINUS),
    ({A: Pauli.Z, B: Pauli.X}, BellIndex.PHI_MINUS),
    ({A: Pauli.X, B: Pauli.X}, BellIndex.PSI_PLUS),
    ({B: Pauli.Y}, BellIndex.PHI_MINUS),
])
def test_classify_pair(paulis, expected):
    assert classify_pair(PauliFrame.from_paulis(paulis), (A, B)) is expected


def test_frame_string_round_trip():
    frame = PauliFrame.from_paulis({A: Pauli.X, D: Pauli.Y, QubitId.N: Pauli.Z})
    assert PauliFrame.from_string(str(frame)) == frame
    assert frame.weight == 3
    assert frame.to_dict() == {'A': 'X', 'D': 'Y', 'N': 'Z'}


def test_frame_rejects_out_of_range_bits():
    with pytest.raises(ValueError):
        PauliFrame(1 << 14, 0)


def test_frame_propagation_matches_dense_oracle():
    rng = np.random.default_rng(7)
    n = 6
    for _ in range(1000):
        width = int(rng.integers(2, n + 1))
        gates = []
        for _ in range(int(rng.integers(1, 13))):
            if rng.random() < 0.4:
                gates.append(('H', int(rng.integers(width))))
            else:
                c, t = rng.choice(width, size=2, replace=False)
                gates.append(('CNOT', int(c), int(t)))
        q = QubitId(int(rng.integers(width)))
        frame = PauliFrame.single(q, Pauli(int(rng.integers(1, 4))))

        unitary = np.eye(2 ** n, dtype=complex)
        propagated = frame
        for gate in gates:
            if gate[0] == 'H':
                unitary = _single(n, gate[1], _H) @ unitary
                propagated = conjugate_h(propagated, QubitId(gate[1]))
            else:
                unitary = _cnot(n, gate[1], gate[2]) @ unitary
                propagated = conjugate_cnot(propagated, QubitId(gate[1]), QubitId(gate[2]))

        dense = unitary @ _dense_pauli(n, frame) @ unitary.conj().T
        assert _proportional(dense, _dense_pauli(n, propagated)), gates


def test_tableau_bell_pair_and_commutation():
    tableau = StabilizerTableau()
    tableau.h(A)
    tableau.cnot(A, B)
    assert tableau.commutes_with_stabilizers(PauliFrame.from_paulis({A: Pauli.X, B: Pauli.X}))
    assert not tableau.commutes_with_stabilizers(PauliFrame.single(B, Pauli.X))
    assert tableau.is_random_z(A)

    snapshot = tableau.copy()
    assert snapshot.bell_measure(A, B) == (0, 0)
    tableau.z(A)
    assert tableau.bell_measure(A, B) == (0, 1)


def test_tableau_forced_measurement_collapses_partner():
    tableau = StabilizerTableau()
    tableau.h(A)
    tableau.cnot(A, B)
    outcome, random = tableau.measure_z(A, forced=1)
    assert (outcome, random) == (1, True)
    assert tableau.measure_z(B) == (1, False)


def _frames(qubits):
    for paulis in product(Pauli, repeat=len(qubits)):
        yield PauliFrame.from_paulis(dict(zip(qubits, paulis)))


GATES = [('CNOT', c, t) for c, t in permutations((A, B, C), 2)] + [('H', q) for q in (A, B, C)]


def _gate_id(gate):
    return '-'.join(getattr(part, 'name', part) for part in gate)


def _conjugate(frame, gate):
    if gate[0] == 'H':
        return conjugate_h(frame, gate[1])
    return conjugate_cnot(frame, gate[1], gate[2])


@pytest.mark.parametrize('gate', GATES, ids=_gate_id)
def test_conjugation_is_linear(gate):
    frames = list(_frames((A, B, C)))
    for first in frames:
        image = _conjugate(first, gate)
        for second in frames:
            assert _conjugate(first ^ second, gate) == image ^ _conjugate(second, gate)


@pytest.mark.parametrize('gate', GATES, ids=_gate_id)
def test_conjugation_is_an_involution(gate):
    for frame in _frames((A, B, C)):
        assert _conjugate(_conjugate(frame, gate), gate) == frame


@pytest.mark.parametrize('pair', [(A, B), (B, C), (C, A)])
def test_classify_pair_ignores_common_pauli(pair):
    for frame in _frames(pair):
        expected = classify_pair(frame, pair)
        for pauli in Pauli:
            shifted = apply_pauli(apply_pauli(frame, pair[0], pauli), pair[1], pauli)
            assert classify_pair(shifted, pair) is expected
