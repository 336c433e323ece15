import click
from flask import current_app
from qncsim.commands import sweep_bp
from qncsim.commands.options import convention_option, idle_option, model_option, output_options, protocol_option, protocols
from qncsim.services.montecarlo import crossing_infidelity, sweep_gate_fidelity, tolerance_ratio
from qncsim.utils.errors import NoThresholdError
from qncsim.utils.guards import handle_command_errors
from qncsim.utils.output import build_meta, write_table
from qncsim.utils.ranges import parse_range

COLUMNS = ('protocol', 'initial_F', 'gate_F', 'trials', 'error_events', 'joint_success', 'stderr', 'seed')


@sweep_bp.cli.command('sweep')
@protocol_option('qnc', allow_both=True)
@model_option('pauli')
@click.option('--initial-f', type=float, default=0.95, show_default=True, help='初始Bell对输入保真度')
@click.option('--gate-f-range', default='0.980:1.000:0.001', show_default=True, help='局部操作保真度网格')
@convention_option
@click.option('--seed', type=int, default=None)
@click.option('--target-errors', type=int, default=None)
@click.option('--max-trials', type=int, default=None)
@click.option('--batch-size', type=int, default=None)
@idle_option
@click.option('--workers', type=int, default=None)
@output_options
@handle_command_errors('门保真度扫描')
def sweep_command(protocol, model_kind, initial_f, gate_f_range, convention, seed, target_errors,
                  max_trials, batch_size, idle_schedule, workers, out, fmt):
    """扫描局部操作保真度，逐点蒙特卡洛估计"""
    settings = current_app.config
    grid = parse_range(gate_f_range)
    options = {
        'initial_kind': model_kind,
        'convention': convention,
        'seed': settings['DEFAULT_SEED'] if seed is None else seed,
        'target_error_events': settings['MC_TARGET_ERROR_EVENTS'] if target_errors is None else target_errors,
        'max_trials': settings['MC_MAX_TRIALS'] if max_trials is None else max_trials,
        'idle_schedule': idle_schedule or settings['IDLE_SCHEDULE'],
    }
    if batch_size is None:
        batch_size = min(settings['MC_BATCH_SIZE'], options['max_trials'])
    options['batch_size'] = batch_size
    if workers is None:
        workers = settings['MC_WORKERS']

    rows = []
    sweeps = {}
    trials = elapsed = 0
    for name in protocols(protocol):
        points = sweep_gate_fidelity(name, initial_f, gate_grid=grid, workers=workers, **options)
        sweeps[name] = points
        for point in points:
            estimate = point.estimate
            trials += estimate.trials_run
            elapsed += estimate.elapsed
            rows.append((name, initial_f, point.gate_F, estimate.trials_run, estimate.error_events,
                         estimate.joint_success_prob, estimate.stderr, estimate.seed))

    extra = {'throughput': trials / elapsed if elapsed > 0 else 0.0}
    if len(sweeps) == 2:
        extra['crossing_qnc'] = crossing_infidelity(sweeps['qnc'])
        extra['crossing_2es'] = crossing_infidelity(sweeps['2es'])
        try:
            extra['tolerance_ratio'] = tolerance_ratio(sweeps['qnc'], sweeps['2es'])
        except NoThresholdError as e:
            current_app.logger.warning(str(e))
            extra['tolerance_ratio'] = None
    config = {'protocol': protocol, 'initial_F': initial_f, 'gate_F': grid, **options}
    meta = build_meta('sweep', config, seed=options['seed'], idle_schedule=options['idle_schedule'], **extra)
    write_table('sweep', COLUMNS, rows, meta, fmt, out)

