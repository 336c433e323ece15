from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import Dict, Any, Iterable, Mapping, Tuple


class Pauli(IntEnum):
    """单比特Pauli算符（去相位），值的低位为X分量，高位为Z分量"""
    I = 0
    X = 1
    Z = 2
    Y = 3

    @property
    def x(self) -> int:
        return self.value & 1

    @property
    def z(self) -> int:
        return self.value >> 1

    @staticmethod
    def from_bits(x: int, z: int) -> 'Pauli':
        return Pauli((x & 1) | ((z & 1) << 1))


# 双比特信道的枚举顺序 σ⁰..σ³
PAULI_ORDER = (Pauli.I, Pauli.X, Pauli.Y, Pauli.Z)


class QubitId(IntEnum):
    """蝴蝶网络上的14个量子比特"""
    A = 0
    B = 1
    C = 2
    D = 3
    E = 4
    F = 5
    G = 6
    H = 7
    I = 8
    J = 9
    K = 10
    L = 11
    M = 12
    N = 13

    @staticmethod
    def parse(label: str) -> 'QubitId':
        try:
            return QubitId[label.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown qubit label {label!r}")


NUM_QUBITS = len(QubitId)
FULL_MASK = (1 << NUM_QUBITS) - 1

# 初始Bell对，第一个为H+CNOT的控制比特
INITIAL_PAIRS: Tuple[Tuple[QubitId, QubitId], ...] = (
    (QubitId.A, QubitId.B),
    (QubitId.C, QubitId.D),
    (QubitId.E, QubitId.F),
    (QubitId.G, QubitId.H),
    (QubitId.I, QubitId.J),
    (QubitId.K, QubitId.L),
    (QubitId.M, QubitId.N),
)


class Basis(Enum):
    """测量基"""
    Z = 'Z'
    X = 'X'


class BellIndex(IntEnum):
    """末态Bell对的错误类别，值为 x宇称 + 2*z宇称"""
    PSI_PLUS = 0
    PHI_PLUS = 1
    PSI_MINUS = 2
    PHI_MINUS = 3

    @property
    def label(self) -> str:
        return _BELL_LABELS[self]

    @property
    def is_error(self) -> bool:
        return self is not BellIndex.PSI_PLUS

    @staticmethod
    def from_parities(x_parity: int, z_parity: int) -> 'BellIndex':
        return BellIndex((x_parity & 1) | ((z_parity & 1) << 1))


_BELL_LABELS = {
    BellIndex.PSI_PLUS: 'PsiPlus',
    BellIndex.PHI_PLUS: 'PhiPlus',
    BellIndex.PSI_MINUS: 'PsiMinus',
    BellIndex.PHI_MINUS: 'PhiMinus',
}


@dataclass(frozen=True)
class PauliFrame:
    """Pauli框架：14比特X/Z错误位向量"""
    x_bits: int = 0
    z_bits: int = 0

    def __post_init__(self):
        if not (0 <= self.x_bits <= FULL_MASK and 0 <= self.z_bits <= FULL_MASK):
            raise ValueError("frame bits exceed the 14-qubit register")

    @staticmethod
    def identity() -> 'PauliFrame':
        return PauliFrame(0, 0)

    @staticmethod
    def single(qubit: QubitId, pauli: Pauli) -> 'PauliFrame':
        return PauliFrame(pauli.x << qubit, pauli.z << qubit)

    @staticmethod
    def from_paulis(paulis: Mapping[QubitId, Pauli]) -> 'PauliFrame':
        """从 {比特: Pauli} 映射构造"""
        frame = PauliFrame()
        for qubit, pauli in paulis.items():
            frame = frame ^ PauliFrame.single(QubitId(qubit), Pauli(pauli))
        return frame

    @staticmethod
    def from_string(text: str) -> 'PauliFrame':
        """从14字符串（如 'IXZ...'）构造"""
        if len(text) != NUM_QUBITS:
            raise ValueError(f"frame string must have {NUM_QUBITS} characters")
        return PauliFrame.from_paulis({QubitId(i): Pauli[ch] for i, ch in enumerate(text.upper())})

    def pauli(self, qubit: QubitId) -> Pauli:
        return Pauli.from_bits(self.x_bits >> qubit, self.z_bits >> qubit)

    def restricted(self, qubits: Iterable[QubitId]) -> 'PauliFrame':
        mask = 0
        for q in qubits:
            mask |= 1 << q
        return PauliFrame(self.x_bits & mask, self.z_bits & mask)

    def __xor__(self, other: 'PauliFrame') -> 'PauliFrame':
        return PauliFrame(self.x_bits ^ other.x_bits, self.z_bits ^ other.z_bits)

    @property
    def is_identity(self) -> bool:
        return self.x_bits == 0 and self.z_bits == 0

    @property
    def weight(self) -> int:
        return bin(self.x_bits | self.z_bits).count('1')

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式，仅列出非平凡比特"""
        return {q.name: self.pauli(q).name for q in QubitId if self.pauli(q) is not Pauli.I}

    def __str__(self) -> str:
        return ''.join(self.pauli(q).name for q in QubitId)
