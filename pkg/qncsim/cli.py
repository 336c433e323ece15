"""
命令行入口：qncsim <command>，失败时向stderr输出一行JSON错误
"""
import sys
from typing import Optional, Sequence
import click
from flask.cli import FlaskGroup
from qncsim import create_app
from qncsim.utils.response import error_line

cli = FlaskGroup(
    name='qncsim',
    create_app=create_app,
    add_default_commands=False,
    add_version_option=False,
    help='量子网络编码（QNC）与两次纠缠交换（2ES）的错误模拟器',
)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    运行命令并返回退出码

    Returns:
        int: 0 成功，2 参数错误，3 运行失败
    """
    try:
        result = cli.main(args=list(argv) if argv is not None else None, prog_name='qncsim',
                          standalone_mode=False)
    except click.ClickException as e:
        code = 2 if isinstance(e, click.UsageError) else e.exit_code
        click.echo(error_line(code, e.format_message()), err=True)
        return code
    except click.exceptions.Abort:
        click.echo(error_line(3, 'aborted'), err=True)
        return 3
    return result if isinstance(result, int) else 0


if __name__ == '__main__':
    sys.exit(main())
