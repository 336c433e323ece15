#!/usr/bin/env python3
"""
Acceptance Verification Script
Checks the analytic tables, thresholds, circuit conformance and Monte Carlo behaviour end to end
"""

import sys
import os
import time

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from qncsim import create_app
from qncsim.models.distribution import Protocol
from qncsim.models.error_model import ErrorModel, InitialKind
from qncsim.models.montecarlo import McConfig
from qncsim.models.pauli import BellIndex
from qncsim.services import analytic, montecarlo
from qncsim.services.circuit import build_2es, build_qnc
from qncsim.services.executor import branch_outcomes
from qncsim.utils.errors import QncError

GRID = [round(0.5 + 0.01 * k, 2) for k in range(51)]


# Test helper functions
def print_pass(message):
    print(f"[PASS] {message}")


def print_fail(message):
    print(f"[FAIL] {message}")


def print_info(message):
    print(f"[INFO] {message}")


def check(condition, passed, failed):
    if condition:
        print_pass(passed)
    else:
        print_fail(failed)
    return bool(condition)


def test_correlation_table():
    began = time.perf_counter()
    table = analytic.correlation_at(0.9)
    elapsed = time.perf_counter() - began
    print_info(f"a={table.a:.4f} b={table.b:.4f} c={table.c:.4f} d={table.d:.4f} phi={table.phi:.4f}")
    ok = (abs(table.a - 0.516) <= 5e-4 and abs(table.b - 0.148) <= 5e-4 and abs(table.c - 0.148) <= 5e-4
          and abs(table.d - 0.189) <= 5e-4 and abs(table.phi - 0.339) <= 1e-3)
    return check(ok and elapsed < 1.0, f"Correlation table at F=0.9 ({elapsed:.3f}s)",
                 "Correlation table does not match the reference values")


def test_polynomials():
    worst = 0.0
    for F in GRID:
        table = analytic.exact_distribution(Protocol.QNC, ErrorModel(InitialKind.Z_ONLY, 1.0 - F)).collapse()
        printed = analytic.qnc_z_joint(F)
        enumerated = (table[(0, 0)], table[(0, 1)], table[(1, 0)], table[(1, 1)])
        worst = max(worst, max(abs(a - b) for a, b in zip(printed, enumerated)))
        cycle = analytic.exact_distribution(Protocol.ES2, ErrorModel(InitialKind.Z_ONLY, 1.0 - F)).cycle_probs
        worst = max(worst, abs(cycle[BellIndex.PSI_PLUS] - analytic.es2_single(F)[0]))
    print_info(f"Largest polynomial/enumeration difference: {worst:.2e}")
    for discrepancy in analytic.step_discrepancies(0.9):
        print_info(f"Step formula {discrepancy.name}: printed={discrepancy.printed:.6f} "
                   f"propagated={discrepancy.oracle:.6f}")
    return check(worst <= 1e-12, "Printed polynomials match exhaustive enumeration",
                 "Polynomials disagree with enumeration")


def test_thresholds():
    results = []
    bands = [
        ('qnc', 'z', 'channel', 0.89, 0.90),
        ('2es', 'z', 'channel', 0.87, 0.88),
        ('qnc', 'pauli', 'channel', 0.87, 0.88),
        ('2es', 'pauli', 'channel', 0.85, 0.86),
        ('qnc', 'pauli', 'pair', 0.90, 0.91),
        ('2es', 'pauli', 'pair', 0.88, 0.89),
    ]
    for protocol, kind, convention, lo, hi in bands:
        threshold = analytic.find_threshold(protocol, kind, convention)
        results.append(check(lo < threshold < hi,
                             f"{protocol} {kind} ({convention}) threshold {threshold:.5f}",
                             f"{protocol} {kind} ({convention}) threshold {threshold:.5f} outside ({lo}, {hi})"))
    return all(results)


def test_x_equals_z():
    worst = max(abs(analytic.joint_fidelity('qnc', 'x', F) - analytic.joint_fidelity('qnc', 'z', F)) for F in GRID)
    return check(worst <= 1e-12, "XOnly and ZOnly joint fidelity agree", f"XOnly differs from ZOnly by {worst:.2e}")


def test_branches():
    qnc = set(branch_outcomes(build_qnc('none')))
    es2 = set(branch_outcomes(build_2es(1, 'none')))
    ok = qnc == {(BellIndex.PSI_PLUS, BellIndex.PSI_PLUS)} and es2 == {(BellIndex.PSI_PLUS,)}
    return check(ok, "Error-free protocols succeed on every measurement branch",
                 "Some measurement branch ends in an error state")


def test_monte_carlo(workers_list):
    model = ErrorModel(InitialKind.GENERAL_PAULI, 0.05)
    config = McConfig(protocol=Protocol.QNC, model=model, seed=20240101)
    exact = analytic.exact_distribution(Protocol.QNC, model).joint_fidelity
    estimates = []
    for workers in workers_list:
        estimate = montecarlo.run(config, workers)
        print_info(f"workers={workers}: {estimate.trials_run} trials, success={estimate.joint_success_prob:.5f}, "
                   f"{estimate.throughput:.0f} trials/s")
        estimates.append(estimate)
    first = estimates[0]
    consistent = check(abs(first.joint_success_prob - exact) <= 3 * first.stderr,
                       f"Monte Carlo matches exact value {exact:.5f}",
                       f"Monte Carlo {first.joint_success_prob:.5f} differs from {exact:.5f}")
    identical = check(all(estimate == first for estimate in estimates),
                      "Estimates are identical for every worker count",
                      "Estimates depend on the worker count")
    return consistent and identical


def test_sweep(workers):
    began = time.perf_counter()
    qnc = montecarlo.sweep_gate_fidelity(Protocol.QNC, initial_F=0.95, workers=workers)
    es2 = montecarlo.sweep_gate_fidelity(Protocol.ES2, initial_F=0.95, workers=workers)
    try:
        ratio = montecarlo.tolerance_ratio(qnc, es2)
    except QncError as e:
        print_fail(e.message)
        return False
    print_info(f"Sweep finished in {time.perf_counter() - began:.0f}s")
    return check(1.5 <= ratio <= 2.5, f"Gate error tolerance ratio {ratio:.3f}",
                 f"Gate error tolerance ratio {ratio:.3f} outside [1.5, 2.5]")


def main():
    """Main verification function"""
    full = '--full' in sys.argv[1:]

    print("=" * 60)
    print("Acceptance Verification Script")
    print("=" * 60)
    print()

    app = create_app()
    with app.app_context():
        workers = app.config['MC_WORKERS']
        sections = [
            ("Correlation Table", test_correlation_table),
            ("Polynomial Equivalence", test_polynomials),
            ("Thresholds", test_thresholds),
            ("X/Z Equivalence", test_x_equals_z),
            ("Branch Exhaustiveness", test_branches),
            ("Monte Carlo", lambda: test_monte_carlo([1, 4, 8] if full else [1, 2])),
        ]
        if full:
            sections.append(("Gate Error Sweep", lambda: test_sweep(max(workers, 4))))
        else:
            print_info("Gate error sweep skipped (pass --full to run it)")
            print()

        results = []
        for index, (title, section) in enumerate(sections, 1):
            print("-" * 60)
            print(f"TEST {index}: {title}")
            print("-" * 60)
            results.append(section())
            print()

        # Summary
        print("=" * 60)
        print("SUMMARY")
        print("=" * 60)
        passed = sum(results)
        total = len(results)
        print(f"Passed: {passed}/{total}")

        if passed == total:
            print_pass("All tests passed!")
            return 0
        else:
            print_fail("Some tests failed!")
            return 1


if __name__ == '__main__':
    sys.exit(main())
