from flask import Blueprint

# 命令蓝图，命令直接注册在顶层
analytic_bp = Blueprint('analytic', __name__, cli_group=None)
correlate_bp = Blueprint('correlate', __name__, cli_group=None)
threshold_bp = Blueprint('threshold', __name__, cli_group=None)
enumerate_bp = Blueprint('enumerate', __name__, cli_group=None)
circuit_bp = Blueprint('circuit', __name__, cli_group=None)
mc_bp = Blueprint('mc', __name__, cli_group=None)
sweep_bp = Blueprint('sweep', __name__, cli_group=None)

# 导入各命令模块以完成注册
from qncsim.commands import analytic, correlate, threshold, enumeration, circuit, mc, sweep
