import json
from typing import Any, Dict, Optional
import click


def success_envelope(data: Any = None, meta: Optional[Dict[str, Any]] = None, message: str = "success") -> dict:
    """
    统一成功输出格式

    Args:
        data: 数据
        meta: 元数据
        message: 消息

    Returns:
        dict: 输出字典
    """
    return {
        "code": 0,
        "message": message,
        "meta": meta or {},
        "data": data
    }


def error_envelope(code: int, message: str, data: Any = None) -> dict:
    """
    统一错误输出格式

    Args:
        code: 退出码
        message: 错误消息
        data: 额外数据
    """
    return {
        "code": code,
        "message": message,
        "data": data
    }


def error_line(code: int, message: str) -> str:
    """单行紧凑JSON形式的错误"""
    flat = ' '.join(str(message).split())
    return json.dumps(error_envelope(code, flat), ensure_ascii=False, separators=(',', ':'))


class CommandError(click.ClickException):
    """命令失败：以错误信封输出一行并以给定退出码退出"""

    def __init__(self, message: str, exit_code: int = 3):
        super().__init__(message)
        self.exit_code = exit_code

    def show(self, file=None) -> None:
        click.echo(error_line(self.exit_code, self.format_message()), file=file, err=True)
