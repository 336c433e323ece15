"""
解析计算：保真度多项式、穷举精确分布、相关系数与阈值
"""
import logging
from functools import lru_cache
from itertools import product
from typing import Dict, FrozenSet, List, NamedTuple, Sequence, Tuple
import numpy as np
from scipy.optimize import bisect
from qncsim.models.circuit import Circuit, SlotTag
from qncsim.models.distribution import CorrelationTable, JointDistribution, Protocol
from qncsim.models.error_model import ErrorModel, InitialKind
from qncsim.models.pauli import BellIndex, Pauli
from qncsim.services.circuit import build_2es, build_qnc, build_step, STEP_KINDS, surviving_qubits
from qncsim.services.error_models import channel_probability, initial_configurations, pair_fidelity
from qncsim.services.executor import NULL_MODEL, final_frame, ideal_tableau
from qncsim.services.frame_engine import compile_program, faults_from_rows, simulate
from qncsim.utils.errors import InvalidArgumentError, InvalidModelError, NoThresholdError

logger = logging.getLogger(__name__)

SOURCES = ('enumeration', 'closed-form')


class CurvePoint(NamedTuple):
    """保真度曲线上的一点"""
    F: float
    pair_fidelity: float
    probs: Tuple[float, float, float, float]
    joint_fidelity: float


class Discrepancy(NamedTuple):
    """书面公式与穷举结果不一致的条目"""
    name: str
    printed: float
    oracle: float


def _check_fidelity(F: float) -> float:
    if not 0.0 <= F <= 1.0:
        raise InvalidArgumentError(f"F={F} is outside [0, 1]")
    return float(F)


# ---- 闭式多项式 ----

def qnc_z_joint(F: float) -> Tuple[float, float, float, float]:
    """
    QNC在仅Z错误下的 (P00, P01, P10, P11)，按书面多项式逐项求值

    Args:
        F: 初始Bell对保真度

    Returns:
        tuple: m、n 分别为AF、BE是否有错误
    """
    F = _check_fidelity(F)
    q = 1.0 - F
    p00 = F ** 7 + 5 * F ** 5 * q ** 2 + 12 * F ** 4 * q ** 3 + 7 * F ** 3 * q ** 4 + 4 * F ** 2 * q ** 5 + 3 * F * q ** 6
    p01 = (2 * F ** 6 * q + 6 * F ** 5 * q ** 2 + 8 * F ** 4 * q ** 3 + 8 * F ** 3 * q ** 4
           + 6 * F ** 2 * q ** 5 + 2 * F * q ** 6)
    p11 = 3 * F ** 6 * q + 4 * F ** 5 * q ** 2 + 7 * F ** 4 * q ** 3 + 12 * F ** 3 * q ** 4 + 5 * F ** 2 * q ** 5 + q ** 7
    return p00, p01, p01, p11


def qnc_z_joint_reduced(F: float) -> Tuple[float, float, float, float]:
    """以 s = 2F-1 表示的化简形式"""
    s = 2.0 * _check_fidelity(F) - 1.0
    p00 = (1 + s ** 4 + 2 * s ** 5) / 4
    p01 = (1 - s ** 4) / 4
    p11 = (1 + s ** 4 - 2 * s ** 5) / 4
    return p00, p01, p01, p11


def es2_single(F: float) -> Tuple[float, float]:
    """2ES单循环的 (P0, P1)"""
    F = _check_fidelity(F)
    q = 1.0 - F
    return F ** 3 + 3 * F * q ** 2, 3 * F ** 2 * q + q ** 3


def _pauli_t(p: float) -> float:
    if not 0.0 <= p <= 1.0:
        raise InvalidArgumentError(f"p={p} is outside [0, 1]")
    return 1.0 - 16.0 * p / 15.0


def qnc_pauli_joint(p: float) -> float:
    """QNC在一般Pauli初始错误下两对均无错误的概率，t = 1 - 16p/15"""
    t = _pauli_t(p)
    return (1 + 2 * t ** 4 + 4 * t ** 5 + 7 * t ** 6 + 2 * t ** 7) / 16


def es2_pauli_single(p: float) -> float:
    """2ES单循环在一般Pauli初始错误下的成功概率"""
    t = _pauli_t(p)
    return (1 + 3 * t ** 3) / 4


# ---- 编码步骤保真度 ----

def step_fidelities(F: float) -> Dict[str, float]:
    """各编码步骤的书面保真度公式"""
    F = _check_fidelity(F)
    q = 1.0 - F
    return {
        'con_z': 1.0 - 2.0 * F * q,
        'add_z': F ** 3 + q ** 3,
        'add_x': F ** 3,
        'fanout_z': F ** 3,
        'fanout_x': F ** 3 - q ** 3,
    }


@lru_cache(maxsize=8)
def _error_free_patterns(kind: str, pauli: Pauli) -> Tuple[int, FrozenSet[Tuple[int, ...]]]:
    """单步电路中不改变末态的初始错误组合（每对目标成员上有或无该Pauli）"""
    circuit = build_step(kind)
    tableau = ideal_tableau(circuit)
    survivors = surviving_qubits(circuit)
    init_slots = [index for index, (_, op) in enumerate(circuit.error_slots()) if op.tag is SlotTag.INIT]
    clean = set()
    for pattern in product((0, 1), repeat=len(init_slots)):
        faults = {slot: (Pauli.I, pauli if bit else Pauli.I) for slot, bit in zip(init_slots, pattern)}
        frame = final_frame(circuit, faults).restricted(survivors)
        if tableau.commutes_with_stabilizers(frame):
            clean.add(pattern)
    return len(init_slots), frozenset(clean)


def step_oracle(F: float) -> Dict[str, float]:
    """
    穷举单步电路得到的步骤保真度

    末态框架与理想末态的全部稳定子对易时视为无错误。

    Returns:
        dict: con_z, con_x, add_z, add_x, fanout_z, fanout_x
    """
    F = _check_fidelity(F)
    result = {}
    for kind in STEP_KINDS:
        for pauli in (Pauli.Z, Pauli.X):
            width, clean = _error_free_patterns(kind, pauli)
            result[f"{kind}_{pauli.name.lower()}"] = sum(
                F ** (width - sum(pattern)) * (1.0 - F) ** sum(pattern) for pattern in clean
            )
    return result


def step_discrepancies(F: float, tol: float = 1e-12) -> List[Discrepancy]:
    """书面步骤公式中与穷举结果不一致的项"""
    printed = step_fidelities(F)
    oracle = step_oracle(F)
    return [
        Discrepancy(name, value, oracle[name])
        for name, value in printed.items() if abs(value - oracle[name]) > tol
    ]


# ---- 穷举精确分布 ----

def protocol_circuit(protocol: Protocol, idle_schedule: str = 'slice', cycles: int = 2) -> Circuit:
    """协议对应的电路"""
    protocol = Protocol.parse(protocol)
    if protocol is Protocol.QNC:
        return build_qnc(idle_schedule)
    return build_2es(cycles, idle_schedule)


@lru_cache(maxsize=16)
def _outcome_table(protocol: Protocol, kind: InitialKind, member: str) -> Tuple[np.ndarray, np.ndarray, Tuple[str, ...]]:
    """
    枚举初始错误组合在单循环电路上的末态编码

    Returns:
        (configs, codes, labels): 组合、对应的4进制末态编码、末态对标签
    """
    circuit = protocol_circuit(protocol, 'none', cycles=1)
    position = 1 if member == 'target' else 0
    slot_qubits = {
        index: position for index, (_, op) in enumerate(circuit.error_slots()) if op.tag is SlotTag.INIT
    }
    # 组合的排列只取决于类型，概率取占位值
    configs, _ = initial_configurations(ErrorModel(kind, 0.5, init_member=member), len(slot_qubits))
    result = simulate(compile_program(circuit, NULL_MODEL), len(configs), faults=faults_from_rows(slot_qubits, configs))
    logger.debug(f"{protocol.value}/{kind.value}: 枚举 {len(configs)} 个初始错误组合")
    return configs, result.outcome_codes(), tuple(circuit.pair_labels())


def _require_initial_only(model: ErrorModel) -> None:
    if not model.is_gate_free:
        raise InvalidModelError("exact enumeration needs p_gate = p_memory = 0")
    if model.initial_kind is InitialKind.NONE:
        raise InvalidModelError("exact enumeration needs an initial error kind (z, x or pauli)")


def exact_distribution(protocol: Protocol, model: ErrorModel) -> JointDistribution:
    """
    穷举初始错误得到末态Bell类别的精确联合分布

    全部测量取理想结果0；前馈使末态与分支无关（见 validate_branch_independence）。

    Args:
        protocol: QNC 或 2ES
        model: 仅含初始错误的模型

    Returns:
        JointDistribution: 2ES 为两个独立循环的乘积分布
    """
    protocol = Protocol.parse(protocol)
    _require_initial_only(model)
    configs, codes, labels = _outcome_table(protocol, model.initial_kind, model.init_member)
    _, weights = initial_configurations(model, configs.shape[1])
    width = len(labels)
    totals = np.bincount(codes, weights=weights, minlength=4 ** width)

    if protocol is Protocol.QNC:
        probs = {
            (BellIndex(code % 4), BellIndex(code // 4)): float(totals[code]) for code in range(4 ** width)
        }
        return JointDistribution(protocol, labels, probs)

    cycle = {BellIndex(code): float(totals[code]) for code in range(4)}
    probs = {(first, second): cycle[first] * cycle[second] for first in BellIndex for second in BellIndex}
    return JointDistribution(protocol, (f"{labels[0]}#1", f"{labels[0]}#2"), probs, cycle_probs=cycle)


def pattern_chart(protocol: Protocol, model: ErrorModel) -> List[Dict[str, object]]:
    """
    每个初始错误组合的末态分类表

    Returns:
        list: 每行含 pattern（按初始对顺序的Pauli字母）、probability、各末态对类别、m、n
    """
    protocol = Protocol.parse(protocol)
    _require_initial_only(model)
    configs, codes, labels = _outcome_table(protocol, model.initial_kind, model.init_member)
    _, weights = initial_configurations(model, configs.shape[1])
    rows = []
    for config, code, weight in zip(configs, codes, weights):
        bells = [BellIndex((int(code) >> (2 * k)) & 3) for k in range(len(labels))]
        rows.append({
            'pattern': ''.join(Pauli(int(p)).name for p in config),
            'probability': float(weight),
            'bells': [b.label for b in bells],
            'm': int(bells[0].is_error),
            'n': int(len(bells) > 1 and bells[1].is_error),
        })
    return rows


def polynomial_discrepancies(F: float, tol: float = 1e-12) -> List[Discrepancy]:
    """书面 P_{m,n} 与 P0/P1 多项式中与穷举结果不一致的项"""
    F = _check_fidelity(F)
    found = []
    model = ErrorModel(InitialKind.Z_ONLY, 1.0 - F)
    collapsed = exact_distribution(Protocol.QNC, model).collapse()
    for (m, n), printed in zip(((0, 0), (0, 1), (1, 0), (1, 1)), qnc_z_joint(F)):
        if abs(printed - collapsed[(m, n)]) > tol:
            found.append(Discrepancy(f"P{m}{n}", printed, collapsed[(m, n)]))
    cycle = exact_distribution(Protocol.ES2, model).cycle_probs
    oracle_p0 = cycle[BellIndex.PSI_PLUS]
    for name, printed, oracle in zip(('P0', 'P1'), es2_single(F), (oracle_p0, 1.0 - oracle_p0)):
        if abs(printed - oracle) > tol:
            found.append(Discrepancy(name, printed, oracle))
    return found


# ---- 相关系数 ----

def correlation_at(F: float, source: str = 'polynomial') -> CorrelationTable:
    """
    AF与BE错误的列联表与相关系数

    Args:
        F: 初始保真度
        source: polynomial 使用书面多项式，enumeration 使用穷举分布

    Raises:
        UndefinedCorrelationError: 某个边缘概率为0
    """
    F = _check_fidelity(F)
    if source == 'polynomial':
        a, b, c, d = qnc_z_joint(F)
    elif source == 'enumeration':
        collapsed = exact_distribution(Protocol.QNC, ErrorModel(InitialKind.Z_ONLY, 1.0 - F)).collapse()
        a, b, c, d = collapsed[(0, 0)], collapsed[(0, 1)], collapsed[(1, 0)], collapsed[(1, 1)]
    else:
        raise InvalidArgumentError(f"source must be polynomial or enumeration, got {source!r}")
    return CorrelationTable.from_joint(a, b, c, d)


# ---- 联合保真度与阈值 ----

def _closed_form(protocol: Protocol, kind: InitialKind, F: float, p: float) -> Tuple[Tuple[float, ...], float]:
    if kind is InitialKind.GENERAL_PAULI:
        if protocol is Protocol.QNC:
            # 仅有联合保真度的闭式
            joint = qnc_pauli_joint(p)
            return (joint, float('nan'), float('nan'), float('nan')), joint
        single = es2_pauli_single(p)
        return (single * single, single * (1 - single), (1 - single) * single, (1 - single) ** 2), single * single
    if protocol is Protocol.QNC:
        probs = qnc_z_joint(F)
        return probs, probs[0]
    p0, p1 = es2_single(F)
    return (p0 * p0, p0 * p1, p1 * p0, p1 * p1), p0 * p0


def curve_point(protocol: Protocol, kind: InitialKind, F: float, convention: str = 'channel',
                source: str = 'enumeration') -> CurvePoint:
    """
    给定初始保真度下的末态分布概要

    Args:
        protocol: QNC 或 2ES
        kind: 初始错误类型
        F: 输入保真度
        convention: channel 时 p = 1-F；pair 时初始对保真度等于F（仅一般Pauli）
        source: enumeration 或 closed-form
    """
    protocol = Protocol.parse(protocol)
    kind = InitialKind.parse(kind)
    if kind is InitialKind.NONE:
        raise InvalidModelError("initial kind none has a constant output; choose z, x or pauli")
    p = channel_probability(F, kind, convention)
    fidelity = pair_fidelity(p, kind)
    if source == 'closed-form':
        probs, joint = _closed_form(protocol, kind, F, p)
        return CurvePoint(F, fidelity, tuple(probs), joint)
    if source != 'enumeration':
        raise InvalidArgumentError(f"source must be one of {', '.join(SOURCES)}, got {source!r}")
    distribution = exact_distribution(protocol, ErrorModel(kind, p))
    collapsed = distribution.collapse()
    probs = (collapsed[(0, 0)], collapsed[(0, 1)], collapsed[(1, 0)], collapsed[(1, 1)])
    return CurvePoint(F, fidelity, probs, distribution.joint_fidelity)


def joint_fidelity(protocol: Protocol, kind: InitialKind, F: float, convention: str = 'channel',
                   source: str = 'enumeration') -> float:
    """两个末态对均为PsiPlus的概率"""
    return curve_point(protocol, kind, F, convention, source).joint_fidelity


def joint_fidelity_curve(protocol: Protocol, kind: InitialKind, grid: Sequence[float],
                         convention: str = 'channel', source: str = 'enumeration') -> List[CurvePoint]:
    return [curve_point(protocol, kind, F, convention, source) for F in grid]


def find_threshold(protocol: Protocol, kind: InitialKind, convention: str = 'channel',
                   lo: float = 0.5, hi: float = 1.0, xtol: float = 1e-6,
                   level: float = 0.5) -> float:
    """
    二分查找联合保真度穿越 level 的输入保真度

    Raises:
        NoThresholdError: 区间端点处未变号
    """
    protocol = Protocol.parse(protocol)
    kind = InitialKind.parse(kind)
    if not 0.0 <= lo < hi <= 1.0:
        raise InvalidArgumentError(f"threshold bracket [{lo}, {hi}] is not inside [0, 1]")

    def excess(F: float) -> float:
        return joint_fidelity(protocol, kind, F, convention) - level

    low, high = excess(lo), excess(hi)
    if low * high > 0:
        raise NoThresholdError(
            f"{protocol.value}/{kind.value}: joint fidelity does not cross {level} in [{lo}, {hi}]"
        )
    threshold = float(bisect(excess, lo, hi, xtol=xtol))
    logger.info(f"阈值 {protocol.value}/{kind.value}/{convention}: F = {threshold:.6f}")
    return threshold

