import click
from qncsim.commands import enumerate_bp
from qncsim.commands.options import convention_option, member_option, model_option, output_options, protocol_option
from qncsim.models.error_model import ErrorModel, InitialKind
from qncsim.services.analytic import exact_distribution, pattern_chart, protocol_circuit
from qncsim.services.error_models import channel_probability
from qncsim.utils.guards import handle_command_errors
from qncsim.utils.output import build_meta, write_table


@enumerate_bp.cli.command('enumerate')
@protocol_option('qnc')
@model_option('z')
@click.option('--f', 'fidelity', type=float, default=0.9, show_default=True, help='输入保真度')
@convention_option
@member_option
@click.option('--patterns', is_flag=True, help='输出每个初始错误组合的分类表')
@output_options
@handle_command_errors('穷举')
def enumerate_command(protocol, model_kind, fidelity, convention, member, patterns, out, fmt):
    """仅含初始错误时末态Bell类别的精确分布"""
    kind = InitialKind.parse(model_kind)
    model = ErrorModel(kind, channel_probability(fidelity, kind, convention), init_member=member)
    distribution = exact_distribution(protocol, model)
    config = {'protocol': protocol, 'model': model.to_dict(), 'F': fidelity, 'convention': convention}

    if patterns:
        chart = pattern_chart(protocol, model)
        cycle_labels = protocol_circuit(protocol, 'none', cycles=1).pair_labels()
        columns = ['pattern', 'probability', *cycle_labels, 'm', 'n']
        rows = [(row['pattern'], row['probability'], *row['bells'], row['m'], row['n']) for row in chart]
        meta = build_meta('enumerate', config, idle_schedule='none', patterns=len(rows))
    else:
        summary = distribution.to_dict()
        columns = [*summary['labels'], 'probability']
        rows = [(*entry['bells'], entry['probability']) for entry in summary['probs']]
        meta = build_meta('enumerate', config, idle_schedule='none', joint_fidelity=summary['jointFidelity'])
    write_table('enumerate', columns, rows, meta, fmt, out)
