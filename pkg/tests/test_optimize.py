import numpy as np
import pytest

import mub_eve.optimize as optimize_mod
from mub_eve import (
    AnalysisError,
    DomainError,
    ProtocolSpec,
    admissible_w_interval,
    critical_disturbance,
    d_c_closed_form,
    golden_section_maximize,
    i_ab,
    i_ae,
    i_ae_optimal,
    maximize_w,
    optimality_witnesses,
    w_bar,
)


def test_w_bar_values():
    assert w_bar(3, 0.0) == pytest.approx(1.0, abs=1e-15)
    for D in np.linspace(0.0, 2 / 3, 20):
        assert w_bar(3, float(D)) == pytest.approx(1.5 * (2 / 3 - float(D)), abs=1e-13)
    assert w_bar(4, 0.25) == pytest.approx(2.0 / 3.0, abs=1e-15)
    with pytest.raises(DomainError):
        w_bar(3, 0.7)


def test_d_c_closed_form_values():
    assert d_c_closed_form(3) == pytest.approx(0.2113248654051871, abs=1e-12)
    assert d_c_closed_form(4) == pytest.approx(0.25, abs=1e-15)
    assert d_c_closed_form(2) == pytest.approx(0.1464466094067262, abs=1e-12)


def test_maximize_w_two_bases():
    report = maximize_w(ProtocolSpec(3, 2), 0.1)
    assert report.method == "analytic"
    assert report.w_opt == pytest.approx(0.85, abs=1e-12)
    assert report.stationarity_residual <= 1e-6
    assert report.i_ae_opt == pytest.approx(i_ae(ProtocolSpec(3, 2), 0.1, 0.85), abs=1e-15)


@pytest.mark.parametrize("D", [0.05, 0.15, 0.2247, 0.4])
def test_maximize_w_three_bases_against_grid_scan(D):
    spec = ProtocolSpec(3, 3)
    report = maximize_w(spec, D)
    assert report.method == "golden-section"
    assert report.stationarity_residual <= 1e-6
    # dense-grid oracle: 1e5 points across the admissible interval
    lo, hi = admissible_w_interval(spec, D)
    ws = np.linspace(lo, hi, 100001)
    vals = np.array([i_ae(spec, D, float(w)) for w in ws])
    assert report.i_ae_opt == pytest.approx(float(vals.max()), abs=1e-8)
    assert report.i_ae_opt >= float(vals.max()) - 1e-8


@pytest.mark.parametrize("D", [0.05, 0.2, 0.45])
def test_three_basis_objective_is_unimodal(D):
    spec = ProtocolSpec(3, 3)
    lo, hi = admissible_w_interval(spec, D)
    vals = np.array([i_ae(spec, D, float(w)) for w in np.linspace(lo, hi, 5001)])
    diffs = np.diff(vals)
    interior_maxima = int(np.sum((diffs[:-1] > 0) & (diffs[1:] < 0)))
    assert interior_maxima == 1


@pytest.mark.parametrize("D", [0.11, 0.12, 0.14, 0.16, 0.18, 0.20])
def test_golden_section_agrees_with_analytic_optimum(D):
    # where the stationary overlap is the global maximiser, the numeric and
    # analytic optimisers must agree
    spec = ProtocolSpec(3, 2)
    lo, hi = admissible_w_interval(spec, D)
    wg = golden_section_maximize(lambda w: i_ae(spec, D, w), lo, hi, 1e-10)
    assert abs(wg - w_bar(3, D)) <= 1e-6


@pytest.mark.parametrize("D", [0.02, 0.05, 0.10])
def test_small_disturbance_boundary_exceeds_stationary_value(D):
    # the information expression is not concave near w = 1: for small D it
    # exceeds the stationary value there by a few 1e-5 dits, so the stationary
    # curve is a local optimum only; all published curve/crossing quantities
    # live on the stationary curve
    spec = ProtocolSpec(3, 2)
    lo, hi = admissible_w_interval(spec, D)
    vals = [i_ae(spec, D, float(w)) for w in np.linspace(lo, hi, 20001)]
    excess = max(vals) - i_ae(spec, D, w_bar(3, D))
    assert 1e-9 < excess < 1e-4


@pytest.mark.parametrize("d", range(2, 11))
def test_critical_disturbance_matches_closed_form(d):
    point = critical_disturbance(ProtocolSpec(d, 2), tol=1e-6)
    assert abs(point.d_c - d_c_closed_form(d)) <= 1e-6
    assert abs(point.gap_at_dc) <= 1e-9


def test_critical_disturbance_three_bases():
    point = critical_disturbance(ProtocolSpec(3, 3), tol=1e-6)
    assert abs(point.d_c - 0.2247) <= 5e-4
    assert abs(point.gap_at_dc) <= 1e-9


def test_three_bases_more_robust_than_two():
    two = critical_disturbance(ProtocolSpec(3, 2)).d_c
    three = critical_disturbance(ProtocolSpec(3, 3)).d_c
    assert three > two


def test_critical_disturbance_increases_with_dimension():
    values = [critical_disturbance(ProtocolSpec(d, 2)).d_c for d in range(2, 11)]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_critical_disturbance_requires_sign_change(monkeypatch):
    monkeypatch.setattr(optimize_mod, "i_ab", lambda d, D: 2.0)
    with pytest.raises(AnalysisError):
        critical_disturbance(ProtocolSpec(3, 2))


def test_tolerance_validation():
    with pytest.raises(DomainError):
        critical_disturbance(ProtocolSpec(3, 2), tol=0.0)
    with pytest.raises(DomainError):
        maximize_w(ProtocolSpec(3, 2), 0.1, tol=-1.0)


def test_optimal_curve_nondecreasing_up_to_crossing():
    for spec in (ProtocolSpec(2, 2), ProtocolSpec(3, 2), ProtocolSpec(3, 3), ProtocolSpec(4, 2)):
        d_c = critical_disturbance(spec).d_c
        top = min(d_c + 0.1, spec.max_disturbance - 1e-6)
        vals = [i_ae_optimal(spec, float(D)) for D in np.linspace(0.0, top, 30)]
        assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))


def test_witness_stationarity_and_ratio():
    for D in [round(0.05 * k, 2) for k in range(1, 13)]:
        witnesses = optimality_witnesses(D)
        assert witnesses.phi_equals_lambda <= 1e-12
        assert witnesses.derivative_ratio <= 1e-4
        spec = ProtocolSpec(3, 2)
        report = maximize_w(spec, D)
        assert report.stationarity_residual <= 1e-6


def test_witness_concavity_structure():
    # concave over the whole interior grid only for large D; at smaller D the
    # convex tail near w = 1 flips the sign of the worst second difference
    for D in (0.35, 0.4, 0.5, 0.6):
        assert optimality_witnesses(D).concavity < 0.0
    for D in (0.05, 0.1, 0.2, 0.3):
        assert optimality_witnesses(D).concavity > 0.0


def test_witness_domain():
    with pytest.raises(DomainError):
        optimality_witnesses(0.0)
    with pytest.raises(DomainError):
        optimality_witnesses(0.67)


def test_admissible_interval_empty():
    with pytest.raises(DomainError):
        admissible_w_interval(ProtocolSpec(3, 2), 1.5)


def test_gap_definition():
    point = critical_disturbance(ProtocolSpec(5, 2))
    gap = i_ae_optimal(ProtocolSpec(5, 2), point.d_c) - i_ab(5, point.d_c)
    assert gap == pytest.approx(point.gap_at_dc, abs=1e-15)
