import click
from flask import current_app
from qncsim.commands import analytic_bp
from qncsim.commands.options import convention_option, model_option, output_options, protocol_option, protocols
from qncsim.services.analytic import SOURCES, curve_point
from qncsim.utils.guards import handle_command_errors
from qncsim.utils.output import build_meta, write_table
from qncsim.utils.ranges import parse_range

COLUMNS = ('protocol', 'F', 'pair_fidelity', 'P00', 'P01', 'P10', 'P11', 'joint_fidelity')


@analytic_bp.cli.command('analytic')
@model_option('z')
@protocol_option('both', allow_both=True)
@click.option('--f-range', default='0.80:1.00:0.01', show_default=True, help='输入保真度网格 lo:hi:step')
@click.option('--f', 'single_f', type=float, default=None, help='单个输入保真度，优先于 --f-range')
@click.option('--source', type=click.Choice(list(SOURCES)), default='enumeration', show_default=True)
@convention_option
@output_options
@handle_command_errors('解析曲线')
def analytic_command(model_kind, protocol, f_range, single_f, source, convention, out, fmt):
    """输出联合保真度曲线（含 x=y 参考线）"""
    grid = parse_range(str(single_f) if single_f is not None else f_range)
    rows = []
    for name in protocols(protocol):
        for F in grid:
            point = curve_point(name, model_kind, F, convention, source)
            rows.append((name, F, point.pair_fidelity, *point.probs, point.joint_fidelity))
    for F in grid:
        rows.append(('reference', F, None, None, None, None, None, F))

    config = {'model': model_kind, 'protocol': protocol, 'grid': grid, 'source': source, 'convention': convention}
    meta = build_meta('analytic', config, idle_schedule='none')
    write_table('analytic', COLUMNS, rows, meta, fmt, out)
    current_app.logger.info(f"analytic: {len(rows)} 行")
