from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Any, Optional
from qncsim.models.pauli import PauliFrame
from qncsim.utils.errors import InvalidArgumentError


class InitialKind(Enum):
    """初始Bell对错误类型，值为CLI中的 --model 取值"""
    NONE = 'none'
    Z_ONLY = 'z'
    X_ONLY = 'x'
    GENERAL_PAULI = 'pauli'

    @staticmethod
    def parse(value) -> 'InitialKind':
        if isinstance(value, InitialKind):
            return value
        aliases = {'None': 'none', 'ZOnly': 'z', 'XOnly': 'x', 'GeneralPauli': 'pauli'}
        try:
            return InitialKind(aliases.get(value, value))
        except ValueError:
            raise InvalidArgumentError(f"initial_kind must be one of none, z, x, pauli; got {value!r}")


INIT_MEMBERS = ('target', 'control')


def _check_probability(name: str, value) -> Optional[str]:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        return f"{name} must be a number"
    if not 0.0 <= float(value) <= 1.0:
        return f"{name}={value} is outside [0, 1]"
    return None


@dataclass(frozen=True)
class ErrorModel:
    """
    错误模型：初始Bell对信道与局部操作错误概率

    p_memory 缺省等于 p_gate。
    """
    initial_kind: InitialKind = InitialKind.NONE
    p_init: float = 0.0
    p_gate: float = 0.0
    p_memory: Optional[float] = None
    init_member: str = 'target'

    def __post_init__(self):
        object.__setattr__(self, 'initial_kind', InitialKind.parse(self.initial_kind))
        if self.p_memory is None:
            object.__setattr__(self, 'p_memory', self.p_gate)
        problems = [
            problem for problem in (
                _check_probability('p_init', self.p_init),
                _check_probability('p_gate', self.p_gate),
                _check_probability('p_memory', self.p_memory),
            ) if problem
        ]
        if self.init_member not in INIT_MEMBERS:
            problems.append(f"init_member must be target or control, got {self.init_member!r}")
        if problems:
            raise InvalidArgumentError('; '.join(problems))

    @property
    def is_gate_free(self) -> bool:
        return self.p_gate == 0 and self.p_memory == 0

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式（JSON配置中的model块）"""
        return {
            'initial_kind': self.initial_kind.value,
            'p_init': self.p_init,
            'p_gate': self.p_gate,
            'p_memory': self.p_memory,
            'init_member': self.init_member,
        }

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> 'ErrorModel':
        """从字典创建错误模型，未知字段视为错误"""
        unknown = sorted(set(data) - {'initial_kind', 'p_init', 'p_gate', 'p_memory', 'init_member'})
        if unknown:
            raise InvalidArgumentError(f"unknown model field(s): {', '.join(unknown)}")
        return ErrorModel(
            initial_kind=InitialKind.parse(data.get('initial_kind', 'none')),
            p_init=data.get('p_init', 0.0),
            p_gate=data.get('p_gate', 0.0),
            p_memory=data.get('p_memory'),
            init_member=data.get('init_member', 'target'),
        )


@dataclass(frozen=True)
class WeightedFrame:
    """带概率的初始错误框架"""
    frame: PauliFrame = field(default_factory=PauliFrame.identity)
    probability: float = 1.0
