"""Top-level verification criteria, one test per criterion. Each prints its
pass/fail line (visible with pytest -s; also emitted by `thermoclass verify`).
"""

from thermoclass import acceptance


def _check(result):
    print(result.line())
    assert result.passed, result.line()


def test_criterion_1_ode_matches_analytic_steady_state():
    _check(acceptance.check_ode_matches_analytic())


def test_criterion_2_relaxation_curve_asymptotes():
    _check(acceptance.check_relaxation_curves())


def test_criterion_3_rate_sweep_shape():
    _check(acceptance.check_rate_sweep())


def test_criterion_4_collision_homogenization():
    _check(acceptance.check_homogenization())


def test_criterion_5_collision_vs_continuous_crosscheck():
    _check(acceptance.check_collision_crosscheck())


def test_criterion_6_linear_separability():
    _check(acceptance.check_separability())


def test_criterion_7_hardware_timing_budget():
    _check(acceptance.check_hardware_budget())


def test_criterion_8_structural_properties():
    _check(acceptance.check_core_properties())
