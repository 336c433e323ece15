import re
import numpy as np
import pytest
from qncsim.models.circuit import GateStep, Slice, SlotTag, StepKind
from qncsim.models.error_model import ErrorModel, InitialKind
from qncsim.models.pauli import BellIndex, Pauli, PauliFrame, QubitId
from qncsim.services.circuit import (ES2_PAIRS, QNC_PAIRS, build_2es, build_qnc, build_step, created_pairs,
                                     find_slot, surviving_qubits, validate_circuit)
from qncsim.services.executor import (NULL_MODEL, branch_outcomes, execute, execute_faults, final_frame,
                                      validate_branch_independence)
from qncsim.services.pauli_core import classify_pair
from qncsim.services.serialization import dump_json, dump_text, parse_json, parse_text
from qncsim.utils.errors import InvalidArgumentError, InvalidCircuitError

A, B, C, D, E, F, G, H, I, J, K, L, M, N = tuple(QubitId)
X, Y, Z = Pauli.X, Pauli.Y, Pauli.Z
FINAL = ((A, F), (B, E))


def bell_classes(frame):
    return tuple(classify_pair(frame, pair) for pair in FINAL)


def expected_classes(paulis):
    return bell_classes(PauliFrame.from_paulis(paulis))


# 单个初始对目标成员上的错误 -> 末态残余
INITIAL_ERROR_TABLE = {
    (A, B): {X: {B: X}, Y: {A: Z, B: X}, Z: {A: Z}},
    (C, D): {X: {F: X, B: X}, Y: {A: Z, F: X, B: X}, Z: {A: Z}},
    (E, F): {X: {F: X}, Y: {F: X, E: Z}, Z: {E: Z}},
    (G, H): {X: {F: X, B: X}, Y: {F: X, B: X, E: Z}, Z: {E: Z}},
    (I, J): {X: {F: X, B: X}, Y: {A: Z, F: X, B: X, E: Z}, Z: {F: Z, E: Z}},
    (K, L): {X: {B: X}, Y: {A: Z, B: X, E: Z}, Z: {A: Z, E: Z}},
    (M, N): {X: {F: X}, Y: {A: Z, F: X, B: Z}, Z: {A: Z, B: Z}},
}

# CNOT(控制, 目标) 之后、错误所在比特 -> 末态残余
GATE_ERROR_TABLE = [
    ((A, C), A, {X: {A: X}, Y: {A: Y}, Z: {A: Z}}),
    ((A, C), C, {X: {B: X, F: X}, Y: {B: X, F: X}, Z: {}}),
    ((E, G), E, {X: {E: X}, Y: {E: Y}, Z: {E: Z}}),
    ((E, G), G, {X: {B: X, F: X}, Y: {B: X, F: X}, Z: {}}),
    ((D, I), D, {X: {}, Y: {A: Z}, Z: {A: Z}}),
    ((D, I), I, {X: {B: X, F: X}, Y: {B: X, E: Z, F: X}, Z: {E: Z}}),
    ((H, I), H, {X: {}, Y: {E: Z}, Z: {E: Z}}),
    ((H, I), I, {X: {B: X, F: X}, Y: {B: X, F: X}, Z: {}}),
    ((J, K), J, {X: {F: X}, Y: {A: Z, E: Z, F: X}, Z: {A: Z, E: Z}}),
    ((J, K), K, {X: {B: X}, Y: {B: X}, Z: {}}),
    ((J, M), J, {X: {}, Y: {A: Z, E: Z}, Z: {A: Z, E: Z}}),
    ((J, M), M, {X: {F: X}, Y: {F: X}, Z: {}}),
    ((L, B), L, {X: {}, Y: {A: Z, E: Z}, Z: {A: Z, E: Z}}),
    ((L, B), B, {X: {B: X}, Y: {B: Y}, Z: {B: Z}}),
    ((N, F), N, {X: {}, Y: {A: Z, E: Z}, Z: {A: Z, E: Z}}),
    ((N, F), F, {X: {F: X}, Y: {F: Y}, Z: {F: Z}}),
]


@pytest.fixture(scope='module')
def qnc():
    return build_qnc()


@pytest.fixture(scope='module')
def es2():
    return build_2es()


def test_qnc_structure(qnc):
    assert qnc.measurement_count == 10
    assert len(qnc.slices) == 20
    assert qnc.registers == ('c', 'g', 'i', 'k', 'm', 'l', 'n', 'j', 'd', 'h')
    assert qnc.final_pairs == FINAL
    assert qnc.pair_labels() == ['AF', 'BE']
    assert created_pairs(qnc) == list(QNC_PAIRS)
    assert surviving_qubits(qnc) == [A, B, E, F]


def test_qnc_error_slots(qnc):
    tags = [op.tag for _, op in qnc.error_slots()]
    assert tags.count(SlotTag.INIT) == 7
    assert tags.count(SlotTag.GATE) == 28
    assert tags.count(SlotTag.MEMORY) == 141


def test_2es_counts_two_swaps_per_cycle(es2):
    # 每次纠缠交换由一个Z测量和一个X测量组成
    measurements = es2.measurements()
    assert es2.measurement_count == 4
    assert sum(op.kind is StepKind.MEASURE_X for op in measurements) == 2
    assert es2.repetitions == 2
    assert es2.pair_labels() == ['CN#1', 'CN#2']
    assert created_pairs(es2) == list(ES2_PAIRS)
    assert sum(op.tag is SlotTag.MEMORY for _, op in es2.error_slots()) == 30


def test_idle_schedules():
    def memory(circuit):
        return sum(op.tag is SlotTag.MEMORY for _, op in circuit.error_slots())

    assert memory(build_qnc('none')) == 0
    assert 0 < memory(build_qnc('step')) < memory(build_qnc('slice'))
    with pytest.raises(InvalidArgumentError):
        build_qnc('sometimes')


def test_measurement_slot_precedes_readout(qnc):
    ops = qnc.slices[3].ops
    readout = next(k for k, op in enumerate(ops) if op.is_measurement)
    assert ops[readout - 1] == GateStep.slot(SlotTag.GATE, C)


def test_validate_rejects_reuse_after_measurement(qnc):
    broken = qnc.slices + (Slice(8, (GateStep.hadamard(C),)),)
    with pytest.raises(InvalidCircuitError):
        validate_circuit(type(qnc)(qnc.name, broken, qnc.registers, qnc.final_pairs))


def test_validate_rejects_unwritten_register():
    circuit = build_step('con')
    bad = Slice(1, (GateStep.cond_x(D, 'zz'),))
    with pytest.raises(InvalidCircuitError):
        validate_circuit(type(circuit)('bad', circuit.slices + (bad,), circuit.registers, ()))


def test_find_slot_missing_gate(qnc):
    with pytest.raises(InvalidCircuitError):
        find_slot(qnc, SlotTag.GATE, (C, A))


def test_ideal_execution_is_error_free(qnc, es2):
    rng = np.random.default_rng(3)
    outcome = execute(qnc, NULL_MODEL, rng)
    assert outcome.bells == (BellIndex.PSI_PLUS, BellIndex.PSI_PLUS)
    assert outcome.success
    assert len(outcome.outcome_bits) == 10
    assert execute(es2, NULL_MODEL, rng).bells == (BellIndex.PSI_PLUS, BellIndex.PSI_PLUS)


@pytest.mark.parametrize('pair', list(INITIAL_ERROR_TABLE))
@pytest.mark.parametrize('pauli', [X, Y, Z])
def test_initial_error_table(qnc, pair, pauli):
    slot = find_slot(qnc, SlotTag.INIT, pair)
    frame = final_frame(qnc, {slot: (Pauli.I, pauli)})
    assert bell_classes(frame) == expected_classes(INITIAL_ERROR_TABLE[pair][pauli])


@pytest.mark.parametrize('pair', list(INITIAL_ERROR_TABLE))
@pytest.mark.parametrize('pauli', [X, Y, Z])
def test_initial_error_on_control_member(qnc, pair, pauli):
    slot = find_slot(qnc, SlotTag.INIT, pair)
    frame = final_frame(qnc, {slot: (pauli, Pauli.I)})
    assert bell_classes(frame) == expected_classes(INITIAL_ERROR_TABLE[pair][pauli])


@pytest.mark.parametrize('gate, qubit, row', GATE_ERROR_TABLE)
@pytest.mark.parametrize('pauli', [X, Y, Z])
def test_gate_error_tables(qnc, gate, qubit, row, pauli):
    slot = find_slot(qnc, SlotTag.GATE, gate)
    paulis = (pauli, Pauli.I) if qubit == gate[0] else (Pauli.I, pauli)
    outcome = execute_faults(qnc, {slot: paulis})
    assert outcome.bells == expected_classes(row[pauli])


def test_injected_frame_matches_init_fault(qnc):
    injected = PauliFrame.from_paulis({D: Z, L: X})
    by_frame = execute_faults(qnc, {}, injected=injected)
    by_slots = execute_faults(qnc, {
        find_slot(qnc, SlotTag.INIT, (C, D)): (Pauli.I, Z),
        find_slot(qnc, SlotTag.INIT, (K, L)): (Pauli.I, X),
    })
    assert by_frame.bells == by_slots.bells


def test_qnc_branch_independence(qnc):
    outcomes = branch_outcomes(build_qnc('none'))
    assert len(outcomes) == 2 ** 10
    assert validate_branch_independence(qnc)


def test_2es_branch_independence():
    outcomes = branch_outcomes(build_2es(1))
    assert len(outcomes) == 2 ** 4
    assert set(outcomes) == {(BellIndex.PSI_PLUS,)}


@pytest.mark.parametrize('qubit', list(QubitId), ids=lambda q: q.name)
@pytest.mark.parametrize('pauli', [X, Y, Z])
def test_single_error_is_branch_independent_in_qnc(qubit, pauli):
    circuit = build_qnc('none')
    injected = PauliFrame.single(qubit, pauli)
    expected = execute_faults(circuit, {}, injected=injected).bells
    assert set(branch_outcomes(circuit, injected)) == {expected}


@pytest.mark.parametrize('qubit', sorted({q for pair in ES2_PAIRS for q in pair}), ids=lambda q: q.name)
@pytest.mark.parametrize('pauli', [X, Y, Z])
def test_single_error_is_branch_independent_in_2es(qubit, pauli):
    circuit = build_2es(1, 'none')
    injected = PauliFrame.single(qubit, pauli)
    expected = execute_faults(circuit, {}, injected=injected).bells
    assert set(branch_outcomes(circuit, injected)) == {expected}


@pytest.mark.parametrize('paulis', [{J: Z}, {B: X, N: Y}, {D: Y, H: X, L: Z}])
def test_branches_agree_with_frame_engine(paulis):
    circuit = build_qnc('none')
    injected = PauliFrame.from_paulis(paulis)
    expected = execute_faults(circuit, {}, injected=injected).bells
    assert set(branch_outcomes(circuit, injected)) == {expected}


def test_execute_is_reproducible_with_same_generator(qnc):
    model = ErrorModel(InitialKind.GENERAL_PAULI, 0.1, 0.02)
    first = execute(qnc, model, np.random.default_rng(11))
    second = execute(qnc, model, np.random.default_rng(11))
    assert first == second


@pytest.mark.parametrize('build', [build_qnc, lambda: build_2es(2, 'step'), lambda: build_step('fanout')])
def test_text_dump_round_trip(build):
    circuit = build()
    assert parse_text(dump_text(circuit)) == circuit


@pytest.mark.parametrize('build', [build_qnc, lambda: build_2es(1), lambda: build_qnc('none')])
def test_json_dump_round_trip(build):
    circuit = build()
    assert parse_json(dump_json(circuit)) == circuit


def test_text_dump_lists_measurements(qnc, es2):
    text = dump_text(qnc)
    assert sum(line.count('MZ') + line.count('MX') for line in text.splitlines() if '|' in line) == 10
    assert '# measurements_per_cycle: 4' in dump_text(es2)


TEXT_OP = re.compile(r'(H [A-N]|CNOT [A-N] [A-N]|ERR (init|gate|memory)( [A-N])+|M[ZX] [A-N] -> \w+'
                     r'|IF[XZ] [A-N] :( \w+)+)')


@pytest.mark.parametrize('build', [build_qnc, lambda: build_2es(1)])
def test_text_dump_grammar(build):
    lines = dump_text(build()).splitlines()
    body = [line for line in lines if not line.startswith('#')]
    assert [line.split(':')[0] for line in lines if line.startswith('#')][:4] == [
        '# circuit', '# repetitions', '# final', '# idle']
    for line in body:
        step, _, ops = line.partition('| ')
        assert step.isdigit(), line
        assert all(TEXT_OP.fullmatch(op) for op in ops.split('; ')), line


def test_parse_text_rejects_garbage():
    with pytest.raises(InvalidCircuitError):
        parse_text('# circuit: x\n1| CNOT A A\n')
    with pytest.raises(InvalidCircuitError):
        parse_text('1| MZ C c\n')
    with pytest.raises(InvalidCircuitError):
        parse_json('{"slices": [{"step": 0, "ops": [{"op": "H", "qubits": ["Q"]}]}]}')
