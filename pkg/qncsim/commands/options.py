"""
各命令共用的click选项
"""
import click
from qncsim.models.circuit import IDLE_SCHEDULES
from qncsim.models.error_model import INIT_MEMBERS
from qncsim.services.error_models import CONVENTIONS

MODEL_CHOICES = ('z', 'x', 'pauli')


def output_options(f):
    """--out 与 --format csv/json"""
    f = click.option('--format', 'fmt', type=click.Choice(['csv', 'json']), default='csv',
                     show_default=True, help='输出格式')(f)
    f = click.option('--out', type=click.Path(dir_okay=False), default=None,
                     help='输出文件，相对路径基于 OUTPUT_DIR')(f)
    return f


def protocol_option(default: str = 'qnc', allow_both: bool = False):
    choices = ['qnc', '2es', 'both'] if allow_both else ['qnc', '2es']
    return click.option('--protocol', type=click.Choice(choices), default=default, show_default=True,
                        help='协议')


def model_option(default: str = 'z', extra=()):
    return click.option('--model', 'model_kind', type=click.Choice(list(MODEL_CHOICES) + list(extra)),
                        default=default, show_default=True, help='初始Bell对错误类型')


def convention_option(f):
    return click.option('--convention', type=click.Choice(list(CONVENTIONS)), default='channel',
                        show_default=True, help='保真度换算：channel 为 p=1-F，pair 为初始对保真度=F')(f)


def member_option(f):
    return click.option('--member', type=click.Choice(list(INIT_MEMBERS)), default='target',
                        show_default=True, help='ZOnly/XOnly 错误所在的成员')(f)


def idle_option(f):
    return click.option('--idle-schedule', type=click.Choice(list(IDLE_SCHEDULES)), default=None,
                        help='空闲错误调度，缺省取 IDLE_SCHEDULE 配置')(f)


def protocols(value: str):
    """把 --protocol 取值展开为协议列表"""
    return ['qnc', '2es'] if value == 'both' else [value]
