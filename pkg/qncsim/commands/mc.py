import json
import click
from flask import current_app
from qncsim.commands import mc_bp
from qncsim.commands.options import MODEL_CHOICES, convention_option, idle_option, output_options
from qncsim.models.error_model import INIT_MEMBERS, InitialKind
from qncsim.models.montecarlo import McConfig
from qncsim.services.error_models import channel_probability, input_fidelity
from qncsim.services.montecarlo import run
from qncsim.utils.errors import InvalidArgumentError
from qncsim.utils.guards import handle_command_errors
from qncsim.utils.output import build_meta, write_table

COLUMNS = ('protocol', 'initial_F', 'gate_F', 'trials', 'error_events', 'joint_success', 'stderr', 'seed')


def load_config_file(path: str) -> dict:
    """读取JSON配置文件"""
    try:
        with open(path, encoding='utf-8') as handle:
            data = json.load(handle)
    except ValueError as e:
        raise InvalidArgumentError(f"config file {path} is not valid JSON: {e}")
    if not isinstance(data, dict):
        raise InvalidArgumentError(f"config file {path} must hold a JSON object")
    return data


def merge_options(data: dict, protocol, model_kind, fidelity, gate_f, convention, member, seed,
                  target_errors, max_trials, batch_size, idle_schedule) -> dict:
    """命令行参数覆盖配置文件，缺省值取应用配置"""
    settings = current_app.config
    data = dict(data)
    model = data.get('model') or {}
    if not isinstance(model, dict):
        raise InvalidArgumentError("model must be an object")
    model = dict(model)
    if model_kind is not None:
        model['initial_kind'] = model_kind
    if fidelity is not None:
        kind = InitialKind.parse(model.get('initial_kind', 'pauli'))
        model['initial_kind'] = kind.value
        model['p_init'] = channel_probability(fidelity, kind, convention)
    if gate_f is not None:
        if not 0.0 <= gate_f <= 1.0:
            raise InvalidArgumentError(f"gate_F={gate_f} is outside [0, 1]")
        model['p_gate'] = round(1.0 - gate_f, 12)
        model['p_memory'] = model['p_gate']
    if member is not None:
        model['init_member'] = member
    data['model'] = model

    overrides = {
        'protocol': protocol,
        'seed': seed,
        'target_error_events': target_errors,
        'max_trials': max_trials,
        'batch_size': batch_size,
        'idle_schedule': idle_schedule,
    }
    data.update({key: value for key, value in overrides.items() if value is not None})
    data.setdefault('seed', settings['DEFAULT_SEED'])
    data.setdefault('target_error_events', settings['MC_TARGET_ERROR_EVENTS'])
    data.setdefault('max_trials', settings['MC_MAX_TRIALS'])
    data.setdefault('batch_size', min(settings['MC_BATCH_SIZE'], data['max_trials'])
                    if isinstance(data['max_trials'], int) else settings['MC_BATCH_SIZE'])
    data.setdefault('idle_schedule', settings['IDLE_SCHEDULE'])
    return data


@mc_bp.cli.command('mc')
@click.option('--config', 'config_file', type=click.Path(exists=True, dir_okay=False), default=None,
              help='JSON配置文件（字段同 McConfig）')
@click.option('--protocol', type=click.Choice(['qnc', '2es']), default=None)
@click.option('--model', 'model_kind', type=click.Choice(list(MODEL_CHOICES)), default=None)
@click.option('--f', 'fidelity', type=float, default=None, help='初始Bell对输入保真度')
@click.option('--gate-f', type=float, default=None, help='局部操作保真度')
@convention_option
@click.option('--member', type=click.Choice(list(INIT_MEMBERS)), default=None)
@click.option('--seed', type=int, default=None)
@click.option('--target-errors', type=int, default=None, help='停止所需的错误事件数')
@click.option('--max-trials', type=int, default=None)
@click.option('--batch-size', type=int, default=None)
@idle_option
@click.option('--workers', type=int, default=None, help='进程数，缺省取 MC_WORKERS')
@output_options
@handle_command_errors('蒙特卡洛')
def mc_command(config_file, protocol, model_kind, fidelity, gate_f, convention, member, seed,
               target_errors, max_trials, batch_size, idle_schedule, workers, out, fmt):
    """单点蒙特卡洛估计"""
    data = load_config_file(config_file) if config_file else {}
    data = merge_options(data, protocol, model_kind, fidelity, gate_f, convention, member, seed,
                         target_errors, max_trials, batch_size, idle_schedule)
    config = McConfig.from_dict(data)
    estimate = run(config, workers if workers is not None else current_app.config['MC_WORKERS'])

    if fidelity is not None:
        initial_f = fidelity
    else:
        initial_f = input_fidelity(config.model.p_init, config.model.initial_kind, convention)
    summary = estimate.to_dict()
    row = (summary['protocol'], initial_f, 1.0 - config.model.p_gate, summary['trials'],
           summary['errorEvents'], summary['jointSuccess'], summary['stderr'], summary['seed'])
    meta = build_meta('mc', config.to_dict(), seed=config.seed, idle_schedule=config.idle_schedule,
                      convention=convention, counts=summary['counts'], throughput=summary['throughput'])
    write_table('mc', COLUMNS, [row], meta, fmt, out)
