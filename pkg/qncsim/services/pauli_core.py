"""
Pauli代数与Pauli框架在Clifford门和测量下的传播（不跟踪相位）
"""
from typing import Tuple
from qncsim.models.pauli import Pauli, PauliFrame, QubitId, BellIndex, Basis
from qncsim.utils.errors import InvalidCircuitError


def pauli_mul(a: Pauli, b: Pauli) -> Pauli:
    """去相位的Pauli乘积"""
    return Pauli(a.value ^ b.value)


def conjugate_cnot(frame: PauliFrame, control: QubitId, target: QubitId) -> PauliFrame:
    """
    CNOT共轭：X从控制比特传到目标比特，Z从目标比特传到控制比特

    Args:
        frame: 输入框架
        control: 控制比特
        target: 目标比特

    Returns:
        PauliFrame: 传播后的框架
    """
    if control == target:
        raise InvalidCircuitError(f"CNOT control and target are both {QubitId(control).name}")
    x_bits = frame.x_bits ^ (((frame.x_bits >> control) & 1) << target)
    z_bits = frame.z_bits ^ (((frame.z_bits >> target) & 1) << control)
    return PauliFrame(x_bits, z_bits)


def conjugate_h(frame: PauliFrame, q: QubitId) -> PauliFrame:
    """Hadamard共轭：交换q的X位和Z位"""
    mask = 1 << q
    swap = (frame.x_bits ^ frame.z_bits) & mask
    return PauliFrame(frame.x_bits ^ swap, frame.z_bits ^ swap)


def measurement_flips(frame: PauliFrame, q: QubitId, basis: Basis) -> bool:
    """测量结果是否被翻转：Z基看X位，X基看Z位"""
    if basis is Basis.Z:
        return bool((frame.x_bits >> q) & 1)
    return bool((frame.z_bits >> q) & 1)


def apply_pauli(frame: PauliFrame, q: QubitId, pauli: Pauli) -> PauliFrame:
    """在框架上叠加一个单比特Pauli"""
    return frame ^ PauliFrame.single(q, pauli)


def clear_qubit(frame: PauliFrame, q: QubitId) -> PauliFrame:
    """测量后移除比特q上的框架位"""
    mask = ~(1 << q)
    return PauliFrame(frame.x_bits & mask, frame.z_bits & mask)


def classify_pair(frame: PauliFrame, pair: Tuple[QubitId, QubitId]) -> BellIndex:
    """按两比特的X宇称和Z宇称判定Bell态类别"""
    a, b = pair
    x_parity = ((frame.x_bits >> a) ^ (frame.x_bits >> b)) & 1
    z_parity = ((frame.z_bits >> a) ^ (frame.z_bits >> b)) & 1
    return BellIndex.from_parities(x_parity, z_parity)
