"""
单次试验执行、强制错误传播与测量分支独立性验证
"""
import logging
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple
import numpy as np
from qncsim.models.circuit import Circuit, SlotTag, StepKind, TrialOutcome
from qncsim.models.error_model import ErrorModel
from qncsim.models.pauli import BellIndex, Pauli, PauliFrame, QubitId
from qncsim.services.frame_engine import compile_program, simulate
from qncsim.services.stabilizer import StabilizerTableau

logger = logging.getLogger(__name__)

NULL_MODEL = ErrorModel()


def _injection_faults(circuit: Circuit, injected: Optional[PauliFrame]) -> Dict[int, Tuple[np.ndarray, np.ndarray]]:
    """把注入框架转换为各init槽上的强制错误"""
    faults = {}
    if injected is None or injected.is_identity:
        return faults
    for index, (_, op) in enumerate(circuit.error_slots()):
        if op.tag is not SlotTag.INIT:
            continue
        fx = np.array([(injected.x_bits >> q) & 1 for q in op.qubits], dtype=bool)
        fz = np.array([(injected.z_bits >> q) & 1 for q in op.qubits], dtype=bool)
        if fx.any() or fz.any():
            faults[index] = (fx, fz)
    return faults


def execute(circuit: Circuit, model: ErrorModel, rng: np.random.Generator,
            injected: Optional[PauliFrame] = None) -> TrialOutcome:
    """
    执行一次试验

    先为每个错误槽（各循环）抽取一个均匀随机数，再为每次测量抽取理想结果位。

    Args:
        circuit: 电路
        model: 错误模型
        rng: 本次试验独占的随机数生成器
        injected: 在建对之后叠加的框架

    Returns:
        TrialOutcome: 末态Bell类别与测量记录
    """
    program = compile_program(circuit, model)
    uniforms = rng.random(program.draws_per_trial)[np.newaxis, :]
    ideal = rng.integers(0, 2, size=program.num_registers * program.repetitions)
    result = simulate(program, 1, uniforms=uniforms, faults=_injection_faults(circuit, injected))
    recorded = ideal.astype(bool) ^ result.flips[0]
    return TrialOutcome(
        bells=tuple(BellIndex(int(b)) for b in result.bells[0]),
        outcome_bits=tuple(int(bit) for bit in recorded),
        labels=tuple(circuit.pair_labels()),
    )


def execute_faults(circuit: Circuit, faults: Mapping[int, Sequence[Pauli]],
                   injected: Optional[PauliFrame] = None) -> TrialOutcome:
    """
    无随机错误地执行电路，在指定错误槽上施加给定Pauli

    Args:
        circuit: 电路
        faults: 槽编号 -> 槽内各比特的Pauli
        injected: 在建对之后叠加的框架
    """
    forced = _injection_faults(circuit, injected)
    for index, paulis in faults.items():
        fx = np.array([Pauli(p).x for p in paulis], dtype=bool)
        fz = np.array([Pauli(p).z for p in paulis], dtype=bool)
        if index in forced:
            fx, fz = fx ^ forced[index][0], fz ^ forced[index][1]
        forced[index] = (fx, fz)
    result = simulate(compile_program(circuit, NULL_MODEL), 1, faults=forced)
    return TrialOutcome(
        bells=tuple(BellIndex(int(b)) for b in result.bells[0]),
        outcome_bits=tuple(int(bit) for bit in result.flips[0]),
        labels=tuple(circuit.pair_labels()),
    )


def final_frame(circuit: Circuit, faults: Mapping[int, Sequence[Pauli]]) -> PauliFrame:
    """强制错误传播后的末态框架（单循环电路）"""
    forced = {}
    for index, paulis in faults.items():
        forced[index] = (np.array([Pauli(p).x for p in paulis], dtype=bool),
                         np.array([Pauli(p).z for p in paulis], dtype=bool))
    result = simulate(compile_program(circuit, NULL_MODEL), 1, faults=forced)
    x_bits = sum(1 << q for q in range(result.x.shape[1]) if result.x[0, q])
    z_bits = sum(1 << q for q in range(result.z.shape[1]) if result.z[0, q])
    return PauliFrame(x_bits, z_bits)


def _walk(circuit: Circuit, injected: Optional[PauliFrame] = None,
          faults: Optional[Mapping[int, Sequence[Pauli]]] = None) -> Iterator[StabilizerTableau]:
    """
    在稳定子表上执行单循环电路，在每个随机测量处分叉，依次产出全部分支的末态

    条件校正依据真实测量结果作用真实的Pauli门。
    """
    faults = dict(faults or {})
    ops = []
    slot = 0
    for s in circuit.slices:
        for op in s.ops:
            ops.append((op, slot))
            slot += op.is_slot

    def walk(tableau: StabilizerTableau, pos: int, outcomes: Dict[str, int]) -> Iterator[StabilizerTableau]:
        while pos < len(ops):
            op, slot_index = ops[pos]
            qubits = [int(q) for q in op.qubits]
            pos += 1
            if op.kind is StepKind.HADAMARD:
                tableau.h(qubits[0])
            elif op.kind is StepKind.CNOT:
                tableau.cnot(*qubits)
            elif op.is_measurement:
                q = qubits[0]
                if op.kind is StepKind.MEASURE_X:
                    tableau.h(q)
                if tableau.is_random_z(q):
                    for bit in (0, 1):
                        branch = tableau.copy()
                        branch.measure_z(q, bit)
                        if op.kind is StepKind.MEASURE_X:
                            branch.h(q)
                        yield from walk(branch, pos, {**outcomes, op.register: bit})
                    return
                outcomes = {**outcomes, op.register: tableau.measure_z(q)[0]}
                if op.kind is StepKind.MEASURE_X:
                    tableau.h(q)
            elif op.kind in (StepKind.COND_X, StepKind.COND_Z):
                if sum(outcomes[r] for r in op.condition) & 1:
                    if op.kind is StepKind.COND_X:
                        tableau.x(qubits[0])
                    else:
                        tableau.z(qubits[0])
            else:
                if op.tag is SlotTag.INIT and injected is not None:
                    for q in qubits:
                        tableau.apply_pauli(q, injected.pauli(QubitId(q)))
                for q, pauli in zip(qubits, faults.get(slot_index, ())):
                    tableau.apply_pauli(q, Pauli(pauli))
        yield tableau

    return walk(StabilizerTableau(), 0, {})


def ideal_tableau(circuit: Circuit) -> StabilizerTableau:
    """全部随机测量取0时的理想末态"""
    return next(_walk(circuit))


def branch_outcomes(circuit: Circuit, injected: Optional[PauliFrame] = None,
                    faults: Optional[Mapping[int, Sequence[Pauli]]] = None) -> List[Optional[Tuple[BellIndex, ...]]]:
    """
    枚举单循环内全部测量分支，按分支顺序返回末态Bell类别元组

    末态对不处于Bell态时该分支记为None。
    """
    results = []
    for tableau in _walk(circuit, injected, faults):
        bells = []
        for a, b in circuit.final_pairs:
            parities = tableau.bell_measure(int(a), int(b))
            if parities is None:
                bells = None
                break
            bells.append(BellIndex.from_parities(*parities))
        results.append(tuple(bells) if bells is not None else None)
    return results


def validate_branch_independence(circuit: Circuit, injected: Optional[PauliFrame] = None) -> bool:
    """
    验证前馈校正使末态与测量分支无关（QNC共 2^10 个分支，2ES每循环 2^4 个）

    Returns:
        bool: 全部分支给出相同的末态Bell类别时为True
    """
    outcomes = set(branch_outcomes(circuit, injected))
    independent = len(outcomes) == 1 and None not in outcomes
    if not independent:
        logger.warning(f"电路 {circuit.name} 的末态依赖测量分支: {sorted(map(str, outcomes))}")
    return independent
