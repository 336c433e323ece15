from dataclasses import dataclass
from enum import Enum
from math import sqrt
from typing import Dict, Any, Optional, Tuple
from qncsim.models.pauli import BellIndex
from qncsim.utils.errors import InvalidArgumentError, UndefinedCorrelationError


class Protocol(Enum):
    """协议，值为CLI中的 --protocol 取值"""
    QNC = 'qnc'
    ES2 = '2es'

    @staticmethod
    def parse(value) -> 'Protocol':
        if isinstance(value, Protocol):
            return value
        aliases = {'QNC': 'qnc', 'ES2': '2es', '2ES': '2es', 'es2': '2es'}
        try:
            return Protocol(aliases.get(value, value))
        except ValueError:
            raise InvalidArgumentError(f"protocol must be qnc or 2es; got {value!r}")


@dataclass(frozen=True)
class JointDistribution:
    """
    末态Bell类别的联合分布

    QNC 以 (AF, BE) 为键；2ES 以两个独立循环的 (CN#1, CN#2) 为键，
    cycle_probs 保存单循环分布。
    """
    protocol: Protocol
    labels: Tuple[str, ...]
    probs: Dict[Tuple[BellIndex, ...], float]
    cycle_probs: Optional[Dict[BellIndex, float]] = None

    @property
    def joint_fidelity(self) -> float:
        """两个末态对均无错误的概率"""
        return self.probs.get((BellIndex.PSI_PLUS,) * len(self.labels), 0.0)

    @property
    def total(self) -> float:
        return sum(self.probs.values())

    def collapse(self) -> Dict[Tuple[int, int], float]:
        """按 (m, n) 错误标志合并"""
        collapsed = {(0, 0): 0.0, (0, 1): 0.0, (1, 0): 0.0, (1, 1): 0.0}
        for key, prob in self.probs.items():
            collapsed[(int(key[0].is_error), int(key[1].is_error))] += prob
        return collapsed

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式"""
        return {
            'protocol': self.protocol.value,
            'labels': list(self.labels),
            'probs': [
                {'bells': [b.label for b in key], 'probability': prob}
                for key, prob in sorted(self.probs.items())
            ],
            'jointFidelity': self.joint_fidelity,
        }


@dataclass(frozen=True)
class CorrelationTable:
    """AF与BE错误的2x2列联表及相关系数"""
    a: float
    b: float
    c: float
    d: float
    e: float
    f: float
    g: float
    h: float
    phi: float

    @staticmethod
    def from_joint(a: float, b: float, c: float, d: float) -> 'CorrelationTable':
        """
        由联合概率构造列联表

        Args:
            a: AF、BE均无错误
            b: 仅BE有错误
            c: 仅AF有错误
            d: 均有错误
        """
        e, f, g, h = a + b, c + d, a + c, b + d
        for name, value in (('e', e), ('f', f), ('g', g), ('h', h)):
            if value <= 0.0:
                raise UndefinedCorrelationError(name, value)
        phi = (a * d - b * c) / sqrt(e * f * g * h)
        return CorrelationTable(a, b, c, d, e, f, g, h, phi)

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式"""
        return {key: getattr(self, key) for key in ('a', 'b', 'c', 'd', 'e', 'f', 'g', 'h', 'phi')}
