"""
lo:hi:step 形式的网格解析
"""
from typing import List
from qncsim.utils.errors import InvalidArgumentError


def grid(lo: float, hi: float, step: float, lower: float = 0.0, upper: float = 1.0) -> List[float]:
    """
    生成闭区间 [lo, hi] 上步长为 step 的网格，数值按12位小数取整

    Raises:
        InvalidArgumentError: 区间颠倒、步长非正或超出 [lower, upper]
    """
    if step <= 0:
        raise InvalidArgumentError(f"step must be positive, got {step}")
    if lo > hi:
        raise InvalidArgumentError(f"range start {lo} exceeds end {hi}")
    if lo < lower or hi > upper:
        raise InvalidArgumentError(f"range {lo}:{hi} is outside [{lower}, {upper}]")
    count = int((hi - lo) / step + 1e-9) + 1
    return [round(lo + k * step, 12) for k in range(count)]


def parse_range(text: str, lower: float = 0.0, upper: float = 1.0) -> List[float]:
    """解析 'lo:hi:step'，单个数值视为只含一点的网格"""
    parts = text.split(':')
    try:
        values = [float(part) for part in parts]
    except ValueError:
        raise InvalidArgumentError(f"range {text!r} is not lo:hi:step")
    if len(values) == 1:
        return grid(values[0], values[0], 1.0, lower, upper)
    if len(values) != 3:
        raise InvalidArgumentError(f"range {text!r} is not lo:hi:step")
    return grid(values[0], values[1], values[2], lower, upper)
