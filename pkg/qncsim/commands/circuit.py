import click
from flask import current_app
from qncsim.commands import circuit_bp
from qncsim.commands.options import idle_option, protocol_option
from qncsim.services.analytic import protocol_circuit
from qncsim.services.serialization import dump_json, dump_text
from qncsim.utils.guards import handle_command_errors
from qncsim.utils.output import emit


@circuit_bp.cli.command('circuit')
@protocol_option('qnc')
@click.option('--format', 'fmt', type=click.Choice(['text', 'json']), default='text', show_default=True)
@click.option('--cycles', type=int, default=2, show_default=True, help='2ES循环次数')
@idle_option
@click.option('--out', type=click.Path(dir_okay=False), default=None)
@handle_command_errors('电路输出')
def circuit_command(protocol, fmt, cycles, idle_schedule, out):
    """输出协议电路（文本或JSON）"""
    idle_schedule = idle_schedule or current_app.config['IDLE_SCHEDULE']
    circuit = protocol_circuit(protocol, idle_schedule, cycles)
    text = dump_text(circuit) if fmt == 'text' else dump_json(circuit)
    emit('circuit', text, 'txt' if fmt == 'text' else 'json', out)
