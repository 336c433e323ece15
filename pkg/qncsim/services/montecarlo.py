"""
蒙特卡洛估计：按试验编号派生随机数，批量执行，批边界停止，结果与并行度无关
"""
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from itertools import islice
from typing import Iterator, List, Optional, Sequence, Tuple
import numpy as np
from qncsim.models.distribution import Protocol
from qncsim.models.error_model import ErrorModel, InitialKind
from qncsim.models.montecarlo import McConfig, McEstimate, SweepPoint
from qncsim.models.pauli import BellIndex
from qncsim.services.analytic import protocol_circuit
from qncsim.services.error_models import channel_probability
from qncsim.services.frame_engine import Program, compile_program, simulate
from qncsim.utils.errors import InvalidArgumentError, NoThresholdError
from qncsim.utils.ranges import grid

logger = logging.getLogger(__name__)


def trial_generator(seed: int, index: int) -> np.random.Generator:
    """第 index 次试验独占的随机数生成器，只由 (seed, index) 决定"""
    return np.random.Generator(np.random.Philox(key=seed, counter=index << 192))


@lru_cache(maxsize=32)
def _program(protocol: Protocol, idle_schedule: str, model: ErrorModel) -> Program:
    return compile_program(protocol_circuit(protocol, idle_schedule), model)


def run_batch(protocol: Protocol, idle_schedule: str, model: ErrorModel, seed: int,
              start: int, size: int) -> np.ndarray:
    """
    执行编号 [start, start+size) 的试验

    Returns:
        np.ndarray: 各末态编码的计数
    """
    program = _program(protocol, idle_schedule, model)
    uniforms = np.empty((size, program.draws_per_trial))
    for row in range(size):
        uniforms[row] = trial_generator(seed, start + row).random(program.draws_per_trial)
    codes = simulate(program, size, uniforms=uniforms).outcome_codes()
    return np.bincount(codes, minlength=4 ** program.outcome_width)


def _batches(config: McConfig) -> Iterator[Tuple[int, int]]:
    """按需生成 (start, size)"""
    start = 0
    while start < config.max_trials:
        size = min(config.batch_size, config.max_trials - start)
        yield start, size
        start += size


def _estimate(config: McConfig, counts: np.ndarray, trials: int, elapsed: float) -> McEstimate:
    width = 2
    table = {
        tuple(BellIndex((code >> (2 * k)) & 3) for k in range(width)): int(count)
        for code, count in enumerate(counts) if count
    }
    return McEstimate(
        protocol=config.protocol,
        seed=config.seed,
        trials_run=trials,
        error_events=trials - int(counts[0]),
        counts=table,
        elapsed=elapsed,
        throughput=trials / elapsed if elapsed > 0 else 0.0,
    )


def run(config: McConfig, workers: int = 1) -> McEstimate:
    """
    运行蒙特卡洛估计

    在首个使错误事件数达到目标或试验数达到上限的批次末尾停止。

    Args:
        config: 运行配置
        workers: 进程数，1 表示在当前进程内执行

    Returns:
        McEstimate: 估计结果，与 workers 无关
    """
    if workers < 1:
        raise InvalidArgumentError(f"workers must be >= 1, got {workers}")
    began = time.perf_counter()
    args = (config.protocol, config.idle_schedule, config.model, config.seed)
    counts = np.zeros(16, dtype=np.int64)
    trials = 0
    batches = _batches(config)

    def absorb(batch_counts: np.ndarray, size: int) -> bool:
        nonlocal counts, trials
        counts = counts + batch_counts
        trials += size
        logger.debug(f"批次完成: trials={trials} errors={trials - int(counts[0])}")
        return trials - int(counts[0]) >= config.target_error_events

    if workers == 1:
        for start, size in batches:
            if absorb(run_batch(*args, start, size), size):
                break
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            while True:
                wave = list(islice(batches, workers))
                if not wave:
                    break
                futures = [pool.submit(run_batch, *args, start, size) for start, size in wave]
                done = False
                for future, (_, size) in zip(futures, wave):
                    if absorb(future.result(), size):
                        done = True
                        break
                if done:
                    # 停止批次之后的结果丢弃
                    for future in futures:
                        future.cancel()
                    break

    elapsed = time.perf_counter() - began
    estimate = _estimate(config, counts, trials, elapsed)
    logger.info(
        f"{config.protocol.value}: {estimate.trials_run} trials, {estimate.error_events} errors, "
        f"success={estimate.joint_success_prob:.6f}±{estimate.stderr:.6f}, "
        f"{estimate.throughput:.0f} trials/s"
    )
    return estimate


def point_seed(seed: int, index: int) -> int:
    """扫描中第 index 个点的独立种子"""
    return int(np.random.SeedSequence([seed, index]).generate_state(1, np.uint64)[0])


def sweep_gate_fidelity(protocol: Protocol, initial_F: float = 0.95, gate_F_from: float = 0.980,
                        gate_F_to: float = 1.000, step: float = 0.001, seed: int = 0,
                        initial_kind: InitialKind = InitialKind.GENERAL_PAULI, convention: str = 'channel',
                        workers: int = 1, target_error_events: int = 20000, max_trials: int = 10 ** 8,
                        batch_size: int = 10000, idle_schedule: str = 'slice',
                        gate_grid: Optional[Sequence[float]] = None) -> List[SweepPoint]:
    """
    扫描局部操作保真度，p_memory = p_gate = 1 - gate_F

    Args:
        gate_grid: 显式给出的门保真度网格，优先于 gate_F_from/gate_F_to/step

    Returns:
        list: 按网格顺序的 SweepPoint
    """
    protocol = Protocol.parse(protocol)
    initial_kind = InitialKind.parse(initial_kind)
    p_init = channel_probability(initial_F, initial_kind, convention)
    points = []
    if gate_grid is None:
        gate_grid = grid(gate_F_from, gate_F_to, step)
    for index, gate_F in enumerate(gate_grid):
        p_gate = round(1.0 - gate_F, 12)
        config = McConfig(
            protocol=protocol,
            model=ErrorModel(initial_kind, p_init, p_gate, p_gate),
            seed=point_seed(seed, index),
            target_error_events=target_error_events,
            max_trials=max_trials,
            batch_size=batch_size,
            idle_schedule=idle_schedule,
        )
        points.append(SweepPoint(initial_F, gate_F, run(config, workers)))
    return points


def crossing_infidelity(points: Sequence[SweepPoint], level: float = 0.5) -> Optional[float]:
    """
    联合成功概率下降到 level 时的门错误率（相邻点线性插值）

    Returns:
        float 或 None（扫描范围内未穿越）
    """
    ordered = sorted(points, key=lambda point: point.gate_infidelity)
    for previous, current in zip(ordered, ordered[1:]):
        y0, y1 = previous.estimate.joint_success_prob, current.estimate.joint_success_prob
        if y0 >= level > y1:
            x0, x1 = previous.gate_infidelity, current.gate_infidelity
            return x0 + (y0 - level) * (x1 - x0) / (y0 - y1)
    return None


def tolerance_ratio(qnc_points: Sequence[SweepPoint], es2_points: Sequence[SweepPoint],
                    level: float = 0.5) -> float:
    """2ES与QNC可容忍门错误率之比"""
    qnc = crossing_infidelity(qnc_points, level)
    es2 = crossing_infidelity(es2_points, level)
    if qnc is None or es2 is None or qnc == 0:
        raise NoThresholdError(f"sweep does not cross joint success {level} for both protocols")
    return es2 / qnc
