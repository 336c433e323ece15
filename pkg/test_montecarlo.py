import numpy as np
import pytest
from qncsim.models.distribution import Protocol
from qncsim.models.error_model import ErrorModel, InitialKind
from qncsim.models.montecarlo import McConfig, McEstimate, SweepPoint
from qncsim.services import analytic, montecarlo
from qncsim.services.executor import execute
from qncsim.utils.errors import InvalidArgumentError, NoThresholdError

NOISY = ErrorModel(InitialKind.GENERAL_PAULI, 0.08, 0.01)


def small_config(**overrides):
    values = dict(protocol=Protocol.QNC, model=NOISY, seed=99, target_error_events=300,
                  max_trials=20000, batch_size=200)
    values.update(overrides)
    return McConfig(**values)


@pytest.mark.parametrize('protocol', [Protocol.QNC, Protocol.ES2])
def test_batch_replays_single_trials(protocol):
    circuit = analytic.protocol_circuit(protocol)
    counts = montecarlo.run_batch(protocol, 'slice', NOISY, 7, 40, 25)
    expected = np.zeros(16, dtype=np.int64)
    for index in range(40, 65):
        outcome = execute(circuit, NOISY, montecarlo.trial_generator(7, index))
        expected[int(outcome.bells[0]) + 4 * int(outcome.bells[1])] += 1
    assert counts.tolist() == expected.tolist()


def test_trial_generator_depends_only_on_seed_and_index():
    first = montecarlo.trial_generator(3, 10).random(5)
    assert np.array_equal(first, montecarlo.trial_generator(3, 10).random(5))
    assert not np.array_equal(first, montecarlo.trial_generator(3, 11).random(5))
    assert not np.array_equal(first, montecarlo.trial_generator(4, 10).random(5))


def test_run_stops_at_first_batch_reaching_target():
    config = small_config()
    estimate = montecarlo.run(config)
    assert estimate.error_events >= config.target_error_events
    assert estimate.trials_run % config.batch_size == 0
    assert sum(estimate.counts.values()) == estimate.trials_run

    shorter = montecarlo.run(small_config(max_trials=estimate.trials_run - config.batch_size))
    assert shorter.error_events < config.target_error_events
    assert shorter.trials_run == estimate.trials_run - config.batch_size


def test_error_free_model_runs_to_max_trials():
    estimate = montecarlo.run(small_config(model=ErrorModel(), max_trials=1000))
    assert estimate.trials_run == 1000
    assert estimate.error_events == 0
    assert estimate.joint_success_prob == 1.0
    assert estimate.stderr == 0.0


@pytest.mark.parametrize('protocol', [Protocol.QNC, Protocol.ES2])
def test_result_independent_of_workers(protocol):
    config = small_config(protocol=protocol)
    assert montecarlo.run(config, workers=1) == montecarlo.run(config, workers=2)


@pytest.mark.parametrize('workers', [1, 2])
def test_batches_are_scheduled_on_demand(workers):
    config = small_config(model=ErrorModel(InitialKind.GENERAL_PAULI, 0.5), target_error_events=1,
                          max_trials=10 ** 12, batch_size=1)
    estimate = montecarlo.run(config, workers=workers)
    assert estimate.error_events == 1
    assert estimate.trials_run < 100
    assert estimate == montecarlo.run(config, workers=1)


def test_estimate_summary():
    estimate = montecarlo.run(small_config())
    summary = estimate.to_dict()
    assert summary['trials'] == estimate.trials_run
    assert summary['jointSuccess'] == estimate.joint_success_prob
    assert sum(summary['counts'].values()) == estimate.trials_run
    assert summary['counts']['PsiPlus/PsiPlus'] == estimate.trials_run - estimate.error_events
    assert summary['throughput'] > 0


def test_invalid_worker_count():
    with pytest.raises(InvalidArgumentError):
        montecarlo.run(small_config(), workers=0)


@pytest.mark.parametrize('protocol, kind, F', [
    (Protocol.QNC, InitialKind.Z_ONLY, 0.9),
    (Protocol.ES2, InitialKind.Z_ONLY, 0.9),
    (Protocol.QNC, InitialKind.GENERAL_PAULI, 0.95),
    (Protocol.ES2, InitialKind.GENERAL_PAULI, 0.95),
])
def test_initial_only_estimate_matches_exact(protocol, kind, F):
    model = ErrorModel(kind, round(1.0 - F, 12))
    estimate = montecarlo.run(small_config(protocol=protocol, model=model, target_error_events=2000,
                                           max_trials=200000, batch_size=2000))
    exact = analytic.exact_distribution(protocol, model).joint_fidelity
    sigma = np.sqrt(exact * (1 - exact) / estimate.trials_run)
    assert abs(estimate.joint_success_prob - exact) < 4 * sigma


def test_config_validation_lists_every_problem():
    with pytest.raises(InvalidArgumentError) as excinfo:
        McConfig(seed=-1, max_trials=10, batch_size=100, idle_schedule='often')
    message = excinfo.value.message
    assert 'seed' in message and 'max_trials' in message and 'idle_schedule' in message
    with pytest.raises(InvalidArgumentError):
        McConfig(seed=2 ** 64)


def test_config_dict_round_trip():
    config = small_config(protocol='2es', idle_schedule='step')
    assert McConfig.from_dict(config.to_dict()) == config
    with pytest.raises(InvalidArgumentError):
        McConfig.from_dict({'seed': 1, 'trials': 5})
    with pytest.raises(InvalidArgumentError):
        McConfig.from_dict({'model': 'pauli'})


def test_point_seeds_are_distinct():
    seeds = {montecarlo.point_seed(5, k) for k in range(50)}
    assert len(seeds) == 50
    assert montecarlo.point_seed(5, 3) == montecarlo.point_seed(5, 3)
    assert all(0 <= seed < 2 ** 64 for seed in seeds)


def test_sweep_uses_gate_grid():
    points = montecarlo.sweep_gate_fidelity(Protocol.QNC, initial_F=0.95, gate_grid=[0.99, 1.0], seed=1,
                                            target_error_events=100, max_trials=4000, batch_size=200)
    assert [point.gate_F for point in points] == [0.99, 1.0]
    assert points[1].gate_infidelity == pytest.approx(0.0)
    assert points[0].estimate.seed != points[1].estimate.seed
    assert points[0].estimate.joint_success_prob < points[1].estimate.joint_success_prob


def test_sweep_default_grid_has_21_points():
    points = montecarlo.sweep_gate_fidelity(Protocol.QNC, seed=3, target_error_events=1, max_trials=1,
                                            batch_size=1)
    assert len(points) == 21
    assert points[0].gate_F == pytest.approx(0.98)
    assert points[-1].gate_F == pytest.approx(1.0)
    assert all(point.estimate.trials_run == 1 for point in points)


@pytest.mark.parametrize('protocol', [Protocol.QNC, Protocol.ES2])
def test_sweep_success_falls_with_gate_fidelity(protocol):
    points = montecarlo.sweep_gate_fidelity(protocol, initial_F=0.95, gate_grid=[1.0, 0.995, 0.99, 0.985, 0.98],
                                            seed=11, target_error_events=1000, max_trials=40000, batch_size=1000)
    for better, worse in zip(points, points[1:]):
        slack = 3 * np.hypot(better.estimate.stderr, worse.estimate.stderr)
        assert worse.estimate.joint_success_prob <= better.estimate.joint_success_prob + slack


def test_estimates_match_exact_at_random_fidelities():
    rng = np.random.default_rng(2718)
    cases = [(Protocol.QNC, InitialKind.GENERAL_PAULI), (Protocol.ES2, InitialKind.GENERAL_PAULI),
             (Protocol.QNC, InitialKind.Z_ONLY), (Protocol.ES2, InitialKind.X_ONLY)]
    for index, F in enumerate(np.round(rng.uniform(0.8, 0.99, size=20), 6)):
        protocol, kind = cases[index % len(cases)]
        model = ErrorModel(kind, round(1.0 - float(F), 12))
        estimate = montecarlo.run(small_config(protocol=protocol, model=model, seed=index,
                                               target_error_events=1000, max_trials=20000, batch_size=1000))
        exact = analytic.exact_distribution(protocol, model).joint_fidelity
        sigma = np.sqrt(exact * (1 - exact) / estimate.trials_run)
        assert abs(estimate.joint_success_prob - exact) < 4 * sigma, (protocol, kind, F)


def _points(successes):
    points = []
    for gate_F, success in successes:
        errors = int(round((1.0 - success) * 1000))
        estimate = McEstimate(Protocol.QNC, 0, 1000, errors, {})
        points.append(SweepPoint(0.95, gate_F, estimate))
    return points


def test_crossing_interpolates_linearly():
    points = _points([(1.0, 0.8), (0.99, 0.6), (0.98, 0.4)])
    assert montecarlo.crossing_infidelity(points) == pytest.approx(0.015)
    assert montecarlo.crossing_infidelity(_points([(1.0, 0.9), (0.99, 0.7)])) is None


def test_tolerance_ratio():
    qnc = _points([(1.0, 0.8), (0.99, 0.6), (0.98, 0.4)])
    es2 = _points([(1.0, 0.9), (0.98, 0.6), (0.96, 0.4)])
    assert montecarlo.tolerance_ratio(qnc, es2) == pytest.approx(2.0)
    with pytest.raises(NoThresholdError):
        montecarlo.tolerance_ratio(qnc, _points([(1.0, 0.9), (0.99, 0.8)]))


@pytest.mark.slow
def test_gate_error_tolerance_ratio():
    kwargs = dict(initial_F=0.95, seed=2024, workers=4)
    qnc = montecarlo.sweep_gate_fidelity(Protocol.QNC, **kwargs)
    es2 = montecarlo.sweep_gate_fidelity(Protocol.ES2, **kwargs)
    assert 1.5 <= montecarlo.tolerance_ratio(qnc, es2) <= 2.5
