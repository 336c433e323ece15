import click
from qncsim.commands import threshold_bp
from qncsim.commands.options import MODEL_CHOICES, convention_option, model_option, output_options, protocol_option, protocols
from qncsim.services.analytic import find_threshold
from qncsim.utils.guards import handle_command_errors
from qncsim.utils.output import build_meta, write_table

COLUMNS = ('protocol', 'model', 'convention', 'threshold')


@threshold_bp.cli.command('threshold')
@protocol_option('both', allow_both=True)
@model_option('all', extra=('all',))
@convention_option
@click.option('--xtol', type=float, default=1e-6, show_default=True, help='二分精度')
@output_options
@handle_command_errors('阈值查找')
def threshold_command(protocol, model_kind, convention, xtol, out, fmt):
    """联合保真度穿过0.5时的输入保真度"""
    kinds = list(MODEL_CHOICES) if model_kind == 'all' else [model_kind]
    rows = []
    for name in protocols(protocol):
        for kind in kinds:
            rows.append((name, kind, convention, find_threshold(name, kind, convention, xtol=xtol)))
    config = {'protocol': protocol, 'model': model_kind, 'convention': convention, 'xtol': xtol,
              'bracket': [0.5, 1.0]}
    write_table('threshold', COLUMNS, rows, build_meta('threshold', config, idle_schedule='none'), fmt, out)
