from functools import wraps
import click
from flask import current_app
from qncsim.utils.errors import QncError
from qncsim.utils.response import CommandError


def handle_command_errors(action: str):
    """
    命令错误处理装饰器

    把领域异常、输出失败与未预期异常统一转换为 CommandError。

    Args:
        action: 日志中使用的操作名称
    """
    def decorator(f):
        @wraps(f)
        def decorated_function(*args, **kwargs):
            try:
                return f(*args, **kwargs)
            except QncError as e:
                current_app.logger.info(f"{action}失败: {e.message}")
                raise CommandError(e.message, e.exit_code)
            except click.ClickException:
                raise
            except OSError as e:
                current_app.logger.info(f"{action}写出失败: {str(e)}")
                raise CommandError(f"cannot write output: {e}", 3)
            except Exception as e:
                current_app.logger.error(f"{action}错误: {str(e)}")
                raise CommandError(f"internal error: {e}", 3)
        return decorated_function
    return decorator
