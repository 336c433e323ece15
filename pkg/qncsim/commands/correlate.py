import click
from qncsim.commands import correlate_bp
from qncsim.commands.options import output_options
from qncsim.services.analytic import correlation_at
from qncsim.utils.guards import handle_command_errors
from qncsim.utils.output import build_meta, write_table

COLUMNS = ('source', 'F', 'a', 'b', 'c', 'd', 'e', 'f', 'g', 'h', 'phi')


@correlate_bp.cli.command('correlate')
@click.option('--f', 'fidelity', type=float, default=0.9, show_default=True, help='输入保真度')
@output_options
@handle_command_errors('相关系数')
def correlate_command(fidelity, out, fmt):
    """AF与BE错误的列联表与相关系数（书面多项式与穷举两种来源）"""
    rows = []
    for source in ('polynomial', 'enumeration'):
        table = correlation_at(fidelity, source)
        values = table.to_dict()
        rows.append((source, fidelity, *(values[key] for key in COLUMNS[2:])))
    meta = build_meta('correlate', {'F': fidelity, 'model': 'z', 'protocol': 'qnc'}, idle_schedule='none')
    write_table('correlate', COLUMNS, rows, meta, fmt, out)
