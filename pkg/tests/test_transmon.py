import pytest

from thermoclass.transmon import (
    BudgetReport,
    DispersivePair,
    TimingBudget,
    budget_report,
    effective_coupling,
)


def test_symmetric_pair_reduces_to_g_squared_over_delta():
    pair = DispersivePair(g1=50.0, g2=50.0, delta1=500.0, delta2=500.0)
    assert effective_coupling(pair) == pytest.approx(50.0**2 / 500.0, rel=1e-15)


def test_reference_coupling_value():
    pair = DispersivePair(g1=100.0, g2=100.0, delta1=1000.0, delta2=1000.0)
    assert effective_coupling(pair) == pytest.approx(10.0, rel=1e-15)


def test_decoupled_qubit_gives_zero():
    assert effective_coupling(DispersivePair(0.0, 100.0, 1000.0, 1000.0)) == 0.0


def test_coupling_symmetric_under_exchange():
    a = DispersivePair(80.0, 120.0, 900.0, -1100.0)
    b = DispersivePair(120.0, 80.0, -1100.0, 900.0)
    assert effective_coupling(a) == pytest.approx(effective_coupling(b), rel=1e-15)


def test_negative_detunings_flip_sign():
    pos = DispersivePair(100.0, 100.0, 1000.0, 1000.0)
    neg = DispersivePair(100.0, 100.0, -1000.0, -1000.0)
    assert effective_coupling(neg) == -effective_coupling(pos)
    assert neg.is_dispersive


def test_zero_detuning_rejected():
    with pytest.raises(ValueError):
        DispersivePair(100.0, 100.0, 0.0, 1000.0)


def test_dispersive_flag():
    assert DispersivePair(100.0, 100.0, 500.0, 500.0).is_dispersive
    assert not DispersivePair(100.0, 100.0, 499.0, 500.0).is_dispersive


def test_budget_reference_point():
    budget = TimingBudget(tau_int_ns=5.0, tau_pr_ns=0.0, tau_r_ns=0.0,
                          n_collisions=2000, t1_relax_us=20.0)
    report = budget_report(budget)
    assert isinstance(report, BudgetReport)
    assert report.total_us == pytest.approx(10.0, abs=1e-12)
    assert report.feasible
    assert report.speedup == pytest.approx(100.0, rel=1e-12)
    assert "feasible" in report.text and "100x" in report.text


def test_budget_infeasible_when_t1_too_short():
    budget = TimingBudget(5.0, 0.0, 0.0, 2000, t1_relax_us=5.0)
    report = budget_report(budget)
    assert not report.feasible
    assert "infeasible" in report.text


def test_budget_total_linear_in_collisions():
    base = budget_report(TimingBudget(5.0, 1.0, 2.0, 1000, 60.0)).total_us
    doubled = budget_report(TimingBudget(5.0, 1.0, 2.0, 2000, 60.0)).total_us
    assert doubled == pytest.approx(2.0 * base, rel=1e-12)


def test_budget_validation():
    with pytest.raises(ValueError):
        TimingBudget(0.0, 0.0, 0.0, 2000, 20.0)
    with pytest.raises(ValueError):
        TimingBudget(5.0, -1.0, 0.0, 2000, 20.0)
    with pytest.raises(ValueError):
        TimingBudget(5.0, 0.0, 0.0, 0, 20.0)
    with pytest.raises(ValueError):
        budget_report(TimingBudget(5.0, 0.0, 0.0, 2000, 20.0), classical_baseline_ms=0.0)
