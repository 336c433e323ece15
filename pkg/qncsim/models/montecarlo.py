from dataclasses import dataclass, field
from typing import Dict, Any, Tuple
from qncsim.models.circuit import IDLE_SCHEDULES
from qncsim.models.distribution import Protocol
from qncsim.models.error_model import ErrorModel
from qncsim.models.pauli import BellIndex
from qncsim.utils.errors import InvalidArgumentError

SEED_LIMIT = 2 ** 64

_CONFIG_FIELDS = ('protocol', 'model', 'seed', 'target_error_events', 'max_trials', 'batch_size', 'idle_schedule')


def _is_count(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


@dataclass(frozen=True)
class McConfig:
    """蒙特卡洛运行配置"""
    protocol: Protocol = Protocol.QNC
    model: ErrorModel = field(default_factory=ErrorModel)
    seed: int = 0
    target_error_events: int = 20000
    max_trials: int = 10 ** 8
    batch_size: int = 10000
    idle_schedule: str = 'slice'

    def __post_init__(self):
        object.__setattr__(self, 'protocol', Protocol.parse(self.protocol))
        problems = []
        if not _is_count(self.seed) or not 0 <= self.seed < SEED_LIMIT:
            problems.append(f"seed must be an integer in [0, 2^64), got {self.seed!r}")
        if not _is_count(self.target_error_events) or self.target_error_events < 1:
            problems.append(f"target_error_events must be >= 1, got {self.target_error_events!r}")
        if not _is_count(self.batch_size) or self.batch_size < 1:
            problems.append(f"batch_size must be >= 1, got {self.batch_size!r}")
        if not _is_count(self.max_trials) or (_is_count(self.batch_size) and self.max_trials < self.batch_size):
            problems.append(f"max_trials must be >= batch_size, got {self.max_trials!r}")
        if self.idle_schedule not in IDLE_SCHEDULES:
            problems.append(f"idle_schedule must be one of {', '.join(IDLE_SCHEDULES)}, got {self.idle_schedule!r}")
        if problems:
            raise InvalidArgumentError('; '.join(problems))

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式（JSON配置）"""
        return {
            'protocol': self.protocol.value,
            'model': self.model.to_dict(),
            'seed': self.seed,
            'target_error_events': self.target_error_events,
            'max_trials': self.max_trials,
            'batch_size': self.batch_size,
            'idle_schedule': self.idle_schedule,
        }

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> 'McConfig':
        """从字典创建配置，未知字段视为错误"""
        unknown = sorted(set(data) - set(_CONFIG_FIELDS))
        if unknown:
            raise InvalidArgumentError(f"unknown config field(s): {', '.join(unknown)}")
        values = {key: data[key] for key in _CONFIG_FIELDS if key in data}
        if 'model' in values:
            if not isinstance(values['model'], dict):
                raise InvalidArgumentError("model must be an object")
            values['model'] = ErrorModel.from_dict(values['model'])
        return McConfig(**values)


@dataclass(frozen=True)
class McEstimate:
    """
    蒙特卡洛估计结果

    counts 以末态BellIndex元组为键；elapsed 与 throughput 不参与相等比较。
    """
    protocol: Protocol
    seed: int
    trials_run: int
    error_events: int
    counts: Dict[Tuple[BellIndex, ...], int]
    elapsed: float = field(default=0.0, compare=False)
    throughput: float = field(default=0.0, compare=False)

    @property
    def joint_success_prob(self) -> float:
        if self.trials_run == 0:
            return 0.0
        return 1.0 - self.error_events / self.trials_run

    @property
    def stderr(self) -> float:
        if self.trials_run == 0:
            return 0.0
        p = self.joint_success_prob
        return (p * (1.0 - p) / self.trials_run) ** 0.5

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式"""
        return {
            'protocol': self.protocol.value,
            'seed': self.seed,
            'trials': self.trials_run,
            'errorEvents': self.error_events,
            'jointSuccess': self.joint_success_prob,
            'stderr': self.stderr,
            'counts': {'/'.join(b.label for b in key): count for key, count in sorted(self.counts.items())},
            'elapsed': self.elapsed,
            'throughput': self.throughput,
        }


@dataclass(frozen=True)
class SweepPoint:
    """门保真度扫描中的一点"""
    initial_F: float
    gate_F: float
    estimate: McEstimate

    @property
    def gate_infidelity(self) -> float:
        return 1.0 - self.gate_F
