"""
CSV/JSON 结果输出，带 # 元数据头
"""
import csv
import io
import json
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence
import click
from flask import current_app
from qncsim.utils.response import success_envelope


def _cell(value: Any) -> str:
    if value is None:
        return ''
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, float) and math.isnan(value):
        return None
    return value


def build_meta(command: str, config: Dict[str, Any], seed: Optional[int] = None,
               idle_schedule: Optional[str] = None, **extra: Any) -> Dict[str, Any]:
    """元数据：工具版本、命令、完整参数回显、种子与空闲调度"""
    from qncsim import __version__

    meta = {
        'tool': f"qncsim {__version__}",
        'command': command,
        'config': config,
        'seed': seed,
        'idle_schedule': idle_schedule,
    }
    meta.update(extra)
    return meta


def render_csv(columns: Sequence[str], rows: Sequence[Sequence[Any]], meta: Dict[str, Any]) -> str:
    buffer = io.StringIO()
    for key, value in meta.items():
        text = json.dumps(value, sort_keys=True, separators=(',', ':')) if isinstance(value, dict) else _cell(value)
        buffer.write(f"# {key}: {text}\n")
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(value) for value in row])
    return buffer.getvalue()


def render_json(columns: Sequence[str], rows: Sequence[Sequence[Any]], meta: Dict[str, Any]) -> str:
    data = {'columns': list(columns), 'rows': [[_json_value(v) for v in row] for row in rows]}
    return json.dumps(success_envelope(data, meta), ensure_ascii=False, indent=2) + '\n'


def resolve_target(command: str, ext: str, out: Optional[str]) -> Optional[Path]:
    """
    输出位置：--out，相对路径基于 OUTPUT_DIR；否则 OUTPUT_DIR/<命令>.<扩展名>；都没有时为标准输出
    """
    output_dir = current_app.config.get('OUTPUT_DIR')
    if out:
        path = Path(out)
        if not path.is_absolute() and output_dir:
            path = Path(output_dir) / path
        return path
    if output_dir:
        return Path(output_dir) / f"{command}.{ext}"
    return None


def emit(command: str, text: str, ext: str, out: Optional[str]) -> Optional[Path]:
    """写出文本；OSError 交由命令的错误处理"""
    target = resolve_target(command, ext, out)
    if target is None:
        click.echo(text, nl=False)
        return None
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text, encoding='utf-8')
    current_app.logger.info(f"已写入 {target}")
    return target


def write_table(command: str, columns: Sequence[str], rows: List[Sequence[Any]], meta: Dict[str, Any],
                fmt: str = 'csv', out: Optional[str] = None) -> Optional[Path]:
    """
    按格式输出表格

    Args:
        command: 命令名
        columns: 列名
        rows: 数据行
        meta: build_meta 的结果
        fmt: csv 或 json
        out: 输出路径
    """
    text = render_csv(columns, rows, meta) if fmt == 'csv' else render_json(columns, rows, meta)
    return emit(command, text, fmt, out)
