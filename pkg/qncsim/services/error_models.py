"""
初始Bell对与局部操作的Pauli错误信道：采样、枚举与运行时槽解析
"""
from collections import namedtuple
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple
import numpy as np
from qncsim.models.circuit import SlotTag
from qncsim.models.error_model import ErrorModel, InitialKind, WeightedFrame
from qncsim.models.pauli import Pauli, PAULI_ORDER, PauliFrame, QubitId, BellIndex, INITIAL_PAIRS
from qncsim.services.pauli_core import classify_pair
from qncsim.utils.errors import InvalidArgumentError, InvalidModelError

# 运行时信道：kind 为 depolarize1 / depolarize2 / flip_x / flip_z
Channel = namedtuple('Channel', ['kind', 'p', 'qubits'])

CONVENTIONS = ('channel', 'pair')


def _require_probability(p: float, name: str = 'p') -> float:
    if not 0.0 <= p <= 1.0:
        raise InvalidArgumentError(f"{name}={p} is outside [0, 1]")
    return float(p)


def bell_pair_mixture(p: float) -> Dict[BellIndex, float]:
    """
    建对CNOT经过CNOT_ε信道后的Bell态权重

    Args:
        p: 双比特信道错误概率

    Returns:
        dict: PsiPlus, PsiMinus, PhiPlus, PhiMinus 的权重
    """
    p = _require_probability(p)
    other = 4.0 * p / 15.0
    return {
        BellIndex.PSI_PLUS: 1.0 - 4.0 * p / 5.0,
        BellIndex.PSI_MINUS: other,
        BellIndex.PHI_PLUS: other,
        BellIndex.PHI_MINUS: other,
    }


def reduce_cnot_channel(p: float) -> Dict[BellIndex, float]:
    """枚举CNOT_ε的16种Pauli对，在理想建对之后按Bell类别累加"""
    p = _require_probability(p)
    weights = {bell: 0.0 for bell in BellIndex}
    for k, (first, second) in enumerate(product(PAULI_ORDER, repeat=2)):
        weight = 1.0 - p if k == 0 else p / 15.0
        frame = PauliFrame.from_paulis({QubitId.A: first, QubitId.B: second})
        weights[classify_pair(frame, (QubitId.A, QubitId.B))] += weight
    return weights


def local_error_bits(u: np.ndarray, p: float) -> Tuple[np.ndarray, np.ndarray]:
    """由均匀随机数批量生成单比特退极化错误的 (x位, z位)，顺序 X, Y, Z"""
    hit = u < p
    if p <= 0:
        return hit, hit
    k = np.minimum((u * (3.0 / p)).astype(np.int64), 2)
    return hit & (k <= 1), hit & (k >= 1)


def cnot_error_bits(u: np.ndarray, p: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """由均匀随机数批量生成双比特退极化错误的 (xa, za, xb, zb)，15种非平凡Pauli对等概率"""
    hit = u < p
    if p <= 0:
        return hit, hit, hit, hit
    k = np.minimum((u * (15.0 / p)).astype(np.int64), 14) + 1
    first, second = k // 4, k % 4
    # PAULI_ORDER 下标：1=X, 2=Y, 3=Z
    return (hit & ((first == 1) | (first == 2)), hit & (first >= 2),
            hit & ((second == 1) | (second == 2)), hit & (second >= 2))


def sample_local_error(p: float, rng: np.random.Generator) -> Pauli:
    """以概率 1-p 返回 I，否则 X、Y、Z 各 p/3"""
    x, z = local_error_bits(np.array([rng.random()]), _require_probability(p))
    return Pauli.from_bits(int(x[0]), int(z[0]))


def sample_cnot_error(p: float, rng: np.random.Generator) -> Tuple[Pauli, Pauli]:
    """以概率 1-p 返回 (I,I)，否则15种非平凡Pauli对各 p/15"""
    xa, za, xb, zb = cnot_error_bits(np.array([rng.random()]), _require_probability(p))
    return Pauli.from_bits(int(xa[0]), int(za[0])), Pauli.from_bits(int(xb[0]), int(zb[0]))


def member_paulis(model: ErrorModel) -> Dict[Pauli, float]:
    """初始对中指定成员上的Pauli及其权重"""
    p = model.p_init
    if model.initial_kind is InitialKind.Z_ONLY:
        return {Pauli.I: 1.0 - p, Pauli.Z: p}
    if model.initial_kind is InitialKind.X_ONLY:
        return {Pauli.I: 1.0 - p, Pauli.X: p}
    if model.initial_kind is InitialKind.GENERAL_PAULI:
        mixture = bell_pair_mixture(p)
        return {
            Pauli.I: mixture[BellIndex.PSI_PLUS],
            Pauli.X: mixture[BellIndex.PHI_PLUS],
            Pauli.Y: mixture[BellIndex.PHI_MINUS],
            Pauli.Z: mixture[BellIndex.PSI_MINUS],
        }
    raise InvalidModelError("initial_kind none has nothing to enumerate")


def initial_configurations(model: ErrorModel, num_pairs: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    枚举每对指定成员上的Pauli组合

    Returns:
        (configs, weights): configs 形状 (N, num_pairs)，元素为 Pauli 值；weights 为组合概率
    """
    options = member_paulis(model)
    paulis = np.array([int(p) for p in options], dtype=np.int8)
    weights = np.array(list(options.values()), dtype=float)
    index = np.array(list(product(range(len(paulis)), repeat=num_pairs)), dtype=np.int64)
    return paulis[index], np.prod(weights[index], axis=1)


def enumerate_initial(model: ErrorModel,
                      pairs: Sequence[Tuple[QubitId, QubitId]] = INITIAL_PAIRS) -> List[WeightedFrame]:
    """
    枚举初始错误框架（ZOnly/XOnly 2^k 个，GeneralPauli 4^k 个）

    Args:
        model: 错误模型
        pairs: 初始Bell对，缺省为QNC的七对

    Returns:
        list: WeightedFrame 列表
    """
    configs, weights = initial_configurations(model, len(pairs))
    member = 1 if model.init_member == 'target' else 0
    frames = []
    for row, weight in zip(configs, weights):
        paulis = {pair[member]: Pauli(int(code)) for pair, code in zip(pairs, row)}
        frames.append(WeightedFrame(PauliFrame.from_paulis(paulis), float(weight)))
    return frames


def channel_probability(F: float, kind: InitialKind, convention: str = 'channel') -> float:
    """
    把输入保真度换算为初始信道概率

    channel: p = 1 - F；pair（仅GeneralPauli）：1 - 4p/5 = F
    """
    _require_probability(F, 'F')
    if convention not in CONVENTIONS:
        raise InvalidArgumentError(f"convention must be channel or pair, got {convention!r}")
    if convention == 'pair' and kind is InitialKind.GENERAL_PAULI:
        p = 1.25 * (1.0 - F)
        if p > 1.0:
            raise InvalidArgumentError(f"pair fidelity {F} is below 0.2 and cannot be reached")
        return p
    return 1.0 - F


def input_fidelity(p: float, kind: InitialKind, convention: str = 'channel') -> float:
    """channel_probability 的逆换算"""
    _require_probability(p, 'p_init')
    if convention not in CONVENTIONS:
        raise InvalidArgumentError(f"convention must be channel or pair, got {convention!r}")
    if convention == 'pair' and kind is InitialKind.GENERAL_PAULI:
        return 1.0 - 0.8 * p
    return 1.0 - p


def pair_fidelity(p: float, kind: InitialKind) -> float:
    """初始Bell对的实际保真度"""
    if kind is InitialKind.GENERAL_PAULI:
        return bell_pair_mixture(p)[BellIndex.PSI_PLUS]
    if kind is InitialKind.NONE:
        return 1.0
    return 1.0 - p


def resolve_channel(model: ErrorModel, tag: SlotTag, qubits: Tuple[QubitId, ...]) -> Optional[Channel]:
    """把错误槽解析为具体信道；概率为0时返回None"""
    if tag is SlotTag.INIT:
        p = model.p_init
        if p == 0 or model.initial_kind is InitialKind.NONE:
            return None
        if model.initial_kind is InitialKind.GENERAL_PAULI:
            return Channel('depolarize2', p, qubits)
        member = qubits[1] if model.init_member == 'target' else qubits[0]
        kind = 'flip_z' if model.initial_kind is InitialKind.Z_ONLY else 'flip_x'
        return Channel(kind, p, (member,))
    p = model.p_memory if tag is SlotTag.MEMORY else model.p_gate
    if p == 0:
        return None
    return Channel('depolarize2' if len(qubits) == 2 else 'depolarize1', p, qubits)
