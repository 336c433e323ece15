class QncError(Exception):
    """模拟器异常基类"""
    exit_code = 3

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class InvalidArgumentError(QncError):
    """参数错误（范围、概率、配置字段）"""
    exit_code = 2


class InvalidCircuitError(QncError):
    """电路结构错误"""
    exit_code = 2


class InvalidModelError(QncError):
    """错误模型不适用于当前操作"""
    exit_code = 2


class UndefinedCorrelationError(QncError):
    """边缘概率退化，相关系数无定义"""

    def __init__(self, marginal: str, value: float):
        super().__init__(f"degenerate marginal {marginal}={value!r}: correlation undefined")
        self.marginal = marginal


class NoThresholdError(QncError):
    """区间内联合保真度未穿过阈值"""
