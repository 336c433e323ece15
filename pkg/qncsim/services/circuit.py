"""
QNC与2ES协议电路的构造与结构校验
"""
import logging
from typing import Dict, List, Optional, Sequence, Tuple
from qncsim.models.circuit import Circuit, GateStep, Slice, SlotTag, StepKind, IDLE_SCHEDULES
from qncsim.models.pauli import QubitId
from qncsim.utils.errors import InvalidArgumentError, InvalidCircuitError

logger = logging.getLogger(__name__)

A, B, C, D, E, F, G, H, I, J, K, L, M, N = tuple(QubitId)

QNC_PAIRS = ((A, B), (C, D), (E, F), (G, H), (I, J), (K, L), (M, N))
ES2_PAIRS = ((C, D), (I, J), (M, N))


class _Schedule:
    """按协议步骤收集未装饰的时间片"""

    def __init__(self):
        self.slices: List[Tuple[int, List[GateStep]]] = []

    def add(self, step: int, *ops: GateStep) -> '_Schedule':
        self.slices.append((step, list(ops)))
        return self

    def create_pairs(self, pairs: Sequence[Tuple[QubitId, QubitId]]) -> '_Schedule':
        """步骤0：每对先H后CNOT"""
        self.add(0, *(GateStep.hadamard(a) for a, _ in pairs))
        self.add(0, *(GateStep.cnot(a, b) for a, b in pairs))
        return self


def _decorate(step: int, ops: Sequence[GateStep]) -> List[GateStep]:
    """为门附加错误槽：建对CNOT用init槽，其余门之后、测量之前用gate槽"""
    decorated: List[GateStep] = []
    for op in ops:
        if op.kind is StepKind.CNOT:
            tag = SlotTag.INIT if step == 0 else SlotTag.GATE
            decorated += [op, GateStep.slot(tag, *op.qubits)]
        elif op.kind is StepKind.HADAMARD:
            # 建对的H与CNOT共用init信道
            decorated += [op] if step == 0 else [op, GateStep.slot(SlotTag.GATE, *op.qubits)]
        elif op.is_measurement:
            decorated += [GateStep.slot(SlotTag.GATE, *op.qubits), op]
        else:
            decorated += [op, GateStep.slot(SlotTag.GATE, *op.qubits)]
    return decorated


def _lifetimes(raw: Sequence[Tuple[int, List[GateStep]]]) -> Dict[QubitId, Tuple[int, int]]:
    """每个比特的存活区间 [首次作用, 测量或电路末尾]"""
    last = len(raw) - 1
    spans: Dict[QubitId, Tuple[int, int]] = {}
    for index, (_, ops) in enumerate(raw):
        for op in ops:
            for q in op.qubits:
                if q not in spans:
                    spans[q] = (index, last)
            if op.is_measurement:
                spans[op.qubits[0]] = (spans[op.qubits[0]][0], index)
    return spans


def _memory_slots(raw: Sequence[Tuple[int, List[GateStep]]], schedule: str) -> Dict[int, List[QubitId]]:
    """按空闲调度计算每个时间片末尾的memory槽"""
    if schedule not in IDLE_SCHEDULES:
        raise InvalidArgumentError(f"idle_schedule must be one of {', '.join(IDLE_SCHEDULES)}")
    slots: Dict[int, List[QubitId]] = {}
    if schedule == 'none':
        return slots
    spans = _lifetimes(raw)
    acted = [{q for op in ops for q in op.qubits} for _, ops in raw]

    if schedule == 'slice':
        for index in range(len(raw)):
            slots[index] = [q for q in sorted(spans) if spans[q][0] <= index <= spans[q][1] and q not in acted[index]]
        return slots

    steps: Dict[int, List[int]] = {}
    for index, (step, _) in enumerate(raw):
        steps.setdefault(step, []).append(index)
    for indices in steps.values():
        first, last = indices[0], indices[-1]
        busy = set().union(*(acted[i] for i in indices))
        slots[last] = [q for q in sorted(spans) if spans[q][0] <= first and spans[q][1] >= last and q not in busy]
    return slots


def _assemble(name: str, raw: _Schedule, final_pairs, repetitions: int, idle_schedule: str) -> Circuit:
    memory = _memory_slots(raw.slices, idle_schedule)
    slices = []
    registers = []
    for index, (step, ops) in enumerate(raw.slices):
        decorated = _decorate(step, ops)
        decorated += [GateStep.slot(SlotTag.MEMORY, q) for q in memory.get(index, [])]
        slices.append(Slice(step, tuple(decorated)))
        registers += [op.register for op in ops if op.is_measurement]
    circuit = Circuit(
        name=name,
        slices=tuple(slices),
        registers=tuple(registers),
        final_pairs=tuple(final_pairs),
        repetitions=repetitions,
        idle_schedule=idle_schedule,
    )
    validate_circuit(circuit)
    return circuit


def build_qnc(idle_schedule: str = 'slice') -> Circuit:
    """
    构造QNC完整电路（步骤0-7）

    Args:
        idle_schedule: 空闲错误调度 slice/step/none

    Returns:
        Circuit: 末态对为 (A,F) 与 (B,E)
    """
    raw = _Schedule().create_pairs(QNC_PAIRS)
    # 步骤1 Con^A_{C→D}, Con^E_{G→H}
    raw.add(1, GateStep.cnot(A, C), GateStep.cnot(E, G))
    raw.add(1, GateStep.measure_z(C, 'c'), GateStep.measure_z(G, 'g'))
    raw.add(1, GateStep.cond_x(D, 'c'), GateStep.cond_x(H, 'g'))
    # 步骤2 Add^{D,H}_{I→J}
    raw.add(2, GateStep.cnot(D, I))
    raw.add(2, GateStep.cnot(H, I))
    raw.add(2, GateStep.measure_z(I, 'i'))
    raw.add(2, GateStep.cond_x(J, 'i'))
    # 步骤3 Fanout^J_{K→L,M→N}
    raw.add(3, GateStep.cnot(J, K))
    raw.add(3, GateStep.cnot(J, M))
    raw.add(3, GateStep.measure_z(K, 'k'), GateStep.measure_z(M, 'm'))
    raw.add(3, GateStep.cond_x(L, 'k'), GateStep.cond_x(N, 'm'))
    # 步骤4 跨越瓶颈
    raw.add(4, GateStep.cnot(L, B), GateStep.cnot(N, F))
    # 步骤5 Rem_{L→J}, Rem_{N→J}
    raw.add(5, GateStep.measure_x(L, 'l'), GateStep.measure_x(N, 'n'))
    raw.add(5, GateStep.cond_z(J, 'l', 'n'))
    # 步骤6 RemAdd_{J→D,H}
    raw.add(6, GateStep.measure_x(J, 'j'))
    raw.add(6, GateStep.cond_z(D, 'j'), GateStep.cond_z(H, 'j'))
    # 步骤7 Rem_{D→A}, Rem_{H→E}
    raw.add(7, GateStep.measure_x(D, 'd'), GateStep.measure_x(H, 'h'))
    raw.add(7, GateStep.cond_z(A, 'd'), GateStep.cond_z(E, 'h'))
    return _assemble('qnc', raw, ((A, F), (B, E)), 1, idle_schedule)


def build_2es(cycles: int = 2, idle_schedule: str = 'slice') -> Circuit:
    """
    构造2ES电路，每个循环重新建立CD、IJ、MN并得到 (C,N)

    Args:
        cycles: 循环次数 1 或 2
        idle_schedule: 空闲错误调度
    """
    if cycles not in (1, 2):
        raise InvalidArgumentError(f"cycles must be 1 or 2, got {cycles}")
    raw = _Schedule().create_pairs(ES2_PAIRS)
    # ES^{(C,D)}_{(I,J)} = Rem_{D→C} Con^D_{I→J}
    raw.add(1, GateStep.cnot(D, I))
    raw.add(1, GateStep.measure_z(I, 'i'))
    raw.add(1, GateStep.cond_x(J, 'i'))
    raw.add(1, GateStep.measure_x(D, 'd'))
    raw.add(1, GateStep.cond_z(C, 'd'))
    # ES^{(C,J)}_{(M,N)}
    raw.add(2, GateStep.cnot(J, M))
    raw.add(2, GateStep.measure_z(M, 'm'))
    raw.add(2, GateStep.cond_x(N, 'm'))
    raw.add(2, GateStep.measure_x(J, 'j'))
    raw.add(2, GateStep.cond_z(C, 'j'))
    return _assemble('2es', raw, ((C, N),), cycles, idle_schedule)


STEP_KINDS = ('con', 'add', 'fanout')


def build_step(kind: str) -> Circuit:
    """构造单独的编码操作电路（无末态Bell对），用于步骤保真度的枚举"""
    if kind == 'con':
        raw = _Schedule().create_pairs(((A, B), (C, D)))
        raw.add(1, GateStep.cnot(A, C))
        raw.add(1, GateStep.measure_z(C, 'c'))
        raw.add(1, GateStep.cond_x(D, 'c'))
    elif kind == 'add':
        raw = _Schedule().create_pairs(((E, F), (G, H), (I, J)))
        raw.add(1, GateStep.cnot(F, I))
        raw.add(1, GateStep.cnot(H, I))
        raw.add(1, GateStep.measure_z(I, 'i'))
        raw.add(1, GateStep.cond_x(J, 'i'))
    elif kind == 'fanout':
        raw = _Schedule().create_pairs(((I, J), (K, L), (M, N)))
        raw.add(1, GateStep.cnot(J, K))
        raw.add(1, GateStep.cnot(J, M))
        raw.add(1, GateStep.measure_z(K, 'k'), GateStep.measure_z(M, 'm'))
        raw.add(1, GateStep.cond_x(L, 'k'), GateStep.cond_x(N, 'm'))
    else:
        raise InvalidArgumentError(f"unknown step kind {kind!r}")
    return _assemble(kind, raw, (), 1, 'none')


def created_pairs(circuit: Circuit) -> List[Tuple[QubitId, QubitId]]:
    """电路在步骤0建立的Bell对（按init槽顺序）"""
    return [tuple(op.qubits) for _, op in circuit.error_slots() if op.tag is SlotTag.INIT]


def surviving_qubits(circuit: Circuit) -> List[QubitId]:
    """未被测量的比特"""
    touched = {q for s in circuit.slices for op in s.ops for q in op.qubits}
    measured = {op.qubits[0] for op in circuit.measurements()}
    return sorted(touched - measured)


def find_slot(circuit: Circuit, tag: SlotTag, qubits: Sequence[QubitId], occurrence: int = 0) -> int:
    """
    查找装饰指定门的错误槽编号

    Args:
        circuit: 电路
        tag: 槽标签
        qubits: 槽作用的比特（CNOT为 (控制, 目标)）
        occurrence: 第几次出现

    Returns:
        int: 槽编号
    """
    wanted = tuple(qubits)
    matches = [index for index, (_, op) in enumerate(circuit.error_slots()) if op.tag is tag and op.qubits == wanted]
    if occurrence >= len(matches):
        names = ' '.join(QubitId(q).name for q in wanted)
        raise InvalidCircuitError(f"no {tag.value} slot on {names} in circuit {circuit.name}")
    return matches[occurrence]


def validate_circuit(circuit: Circuit) -> None:
    """校验电路结构不变量，失败时抛出 InvalidCircuitError"""
    if circuit.repetitions < 1:
        raise InvalidCircuitError("repetitions must be at least 1")
    written = set()
    measured = set()
    order: List[str] = []
    for index, s in enumerate(circuit.slices):
        seen = set()
        written_here = []
        for op in s.ops:
            for q in op.qubits:
                if q in measured:
                    raise InvalidCircuitError(f"slice {index}: qubit {q.name} used after measurement")
            if op.is_slot:
                if op.tag is None or len(op.qubits) not in (1, 2):
                    raise InvalidCircuitError(f"slice {index}: malformed error slot")
                continue
            if op.kind is StepKind.CNOT and (len(op.qubits) != 2 or op.qubits[0] == op.qubits[1]):
                raise InvalidCircuitError(f"slice {index}: CNOT needs two distinct qubits")
            if op.kind is not StepKind.CNOT and len(op.qubits) != 1:
                raise InvalidCircuitError(f"slice {index}: {op.kind.value} acts on one qubit")
            for q in op.qubits:
                if q in seen:
                    raise InvalidCircuitError(f"slice {index}: qubit {q.name} appears twice")
                seen.add(q)
            if op.kind in (StepKind.COND_X, StepKind.COND_Z):
                if not op.condition:
                    raise InvalidCircuitError(f"slice {index}: conditioned correction without registers")
                missing = [r for r in op.condition if r not in written]
                if missing:
                    raise InvalidCircuitError(f"slice {index}: register {missing[0]} not written by an earlier slice")
            if op.is_measurement:
                if not op.register or op.register in written or op.register in written_here:
                    raise InvalidCircuitError(f"slice {index}: register {op.register!r} missing or reused")
                written_here.append(op.register)
                order.append(op.register)
                measured.add(op.qubits[0])
        written.update(written_here)
    if tuple(order) != circuit.registers:
        raise InvalidCircuitError("register list does not match measurement order")
    for a, b in circuit.final_pairs:
        if a == b or a in measured or b in measured:
            raise InvalidCircuitError(f"final pair {a.name}{b.name} is not a live pair")
