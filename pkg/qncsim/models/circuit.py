from dataclasses import dataclass
from enum import Enum
from typing import Dict, Any, List, Optional, Tuple
from qncsim.models.pauli import QubitId, BellIndex


class StepKind(Enum):
    """门步骤类型，值为文本格式中的助记符"""
    HADAMARD = 'H'
    CNOT = 'CNOT'
    MEASURE_Z = 'MZ'
    MEASURE_X = 'MX'
    COND_X = 'IFX'
    COND_Z = 'IFZ'
    ERROR_SLOT = 'ERR'


class SlotTag(Enum):
    """错误槽标签，运行时由错误模型解析"""
    INIT = 'init'
    GATE = 'gate'
    MEMORY = 'memory'


IDLE_SCHEDULES = ('slice', 'step', 'none')


@dataclass(frozen=True)
class GateStep:
    """电路中的单个步骤"""
    kind: StepKind
    qubits: Tuple[QubitId, ...]
    register: Optional[str] = None
    condition: Tuple[str, ...] = ()
    tag: Optional[SlotTag] = None

    @staticmethod
    def hadamard(q: QubitId) -> 'GateStep':
        return GateStep(StepKind.HADAMARD, (q,))

    @staticmethod
    def cnot(control: QubitId, target: QubitId) -> 'GateStep':
        return GateStep(StepKind.CNOT, (control, target))

    @staticmethod
    def measure_z(q: QubitId, register: str) -> 'GateStep':
        return GateStep(StepKind.MEASURE_Z, (q,), register=register)

    @staticmethod
    def measure_x(q: QubitId, register: str) -> 'GateStep':
        return GateStep(StepKind.MEASURE_X, (q,), register=register)

    @staticmethod
    def cond_x(q: QubitId, *registers: str) -> 'GateStep':
        return GateStep(StepKind.COND_X, (q,), condition=tuple(registers))

    @staticmethod
    def cond_z(q: QubitId, *registers: str) -> 'GateStep':
        return GateStep(StepKind.COND_Z, (q,), condition=tuple(registers))

    @staticmethod
    def slot(tag: SlotTag, *qubits: QubitId) -> 'GateStep':
        return GateStep(StepKind.ERROR_SLOT, tuple(qubits), tag=tag)

    @property
    def is_slot(self) -> bool:
        return self.kind is StepKind.ERROR_SLOT

    @property
    def is_measurement(self) -> bool:
        return self.kind in (StepKind.MEASURE_Z, StepKind.MEASURE_X)

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式"""
        data: Dict[str, Any] = {'op': self.kind.value, 'qubits': [q.name for q in self.qubits]}
        if self.register is not None:
            data['register'] = self.register
        if self.condition:
            data['condition'] = list(self.condition)
        if self.tag is not None:
            data['tag'] = self.tag.value
        return data

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> 'GateStep':
        """从字典创建步骤"""
        tag = data.get('tag')
        return GateStep(
            kind=StepKind(data['op']),
            qubits=tuple(QubitId.parse(q) for q in data['qubits']),
            register=data.get('register'),
            condition=tuple(data.get('condition', ())),
            tag=SlotTag(tag) if tag is not None else None,
        )


@dataclass(frozen=True)
class Slice:
    """时间片：所属协议步骤编号与有序步骤"""
    step: int
    ops: Tuple[GateStep, ...]

    def acted_qubits(self) -> Tuple[QubitId, ...]:
        return tuple(q for op in self.ops if not op.is_slot for q in op.qubits)


@dataclass(frozen=True)
class Circuit:
    """时间分片的Clifford电路"""
    name: str
    slices: Tuple[Slice, ...]
    registers: Tuple[str, ...]
    final_pairs: Tuple[Tuple[QubitId, QubitId], ...]
    repetitions: int = 1
    idle_schedule: str = 'slice'

    @property
    def measurement_count(self) -> int:
        """每个循环的测量次数"""
        return sum(1 for s in self.slices for op in s.ops if op.is_measurement)

    def measurements(self) -> List[GateStep]:
        return [op for s in self.slices for op in s.ops if op.is_measurement]

    def error_slots(self) -> List[Tuple[int, GateStep]]:
        """按执行顺序列出 (所在时间片, 错误槽)，列表下标即槽编号"""
        return [(index, op) for index, s in enumerate(self.slices) for op in s.ops if op.is_slot]

    def pair_labels(self) -> List[str]:
        """末态Bell对标签，多循环时附加循环编号"""
        labels = [f"{a.name}{b.name}" for a, b in self.final_pairs]
        if self.repetitions == 1:
            return labels
        return [f"{label}#{cycle + 1}" for cycle in range(self.repetitions) for label in labels]


@dataclass(frozen=True)
class TrialOutcome:
    """单次试验结果"""
    bells: Tuple[BellIndex, ...]
    outcome_bits: Tuple[int, ...] = ()
    labels: Tuple[str, ...] = ()

    @property
    def m(self) -> bool:
        """第一个末态对（AF或首个循环的CN）是否有错误"""
        return self.bells[0].is_error

    @property
    def n(self) -> bool:
        """第二个末态对（BE或第二个循环的CN）是否有错误"""
        return len(self.bells) > 1 and self.bells[1].is_error

    @property
    def success(self) -> bool:
        return not any(b.is_error for b in self.bells)
