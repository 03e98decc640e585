"""Decision rules, limit constants, mean shifts, and power prediction."""

import math

import mpmath
import numpy as np
import pytest

from pachange import (
    DegreeCensus,
    ModelConfig,
    ParameterBounds,
    Scaled,
    attach_increase_prob,
    b_cov,
    census,
    default_a_n,
    grow,
    kappa_fn,
    mean_shift_Q,
    mean_shift_T,
    mean_shift_T_rational,
    p_m_prime,
    predicted_power,
    shift_constants,
    sigma_cov,
    statistic_Q,
    statistic_T,
    u_var,
    v_var,
    w_var,
    z_quantile,
)
from pachange import TestMode as Mode
from pachange import test_phi as phi_rule
from pachange import test_phi_cal as phi_cal_rule
from pachange import test_psi as psi_rule
from pachange import test_psi_cal as psi_cal_rule

BOUNDS5 = ParameterBounds(-4.5, 10.0, 5)


def _null_census(n, m=5, delta0=0.0, seed=1):
    config = ModelConfig(m=m, delta0=delta0, delta1=delta0,
                         changepoint=Scaled(c=1.0, gamma=0.75), n=n)
    return census(grow(config, seed))


def _census_from_rows(n, m, ks, counts):
    ks = np.asarray(ks)
    counts = np.asarray(counts, dtype=np.int64)
    tails = counts[::-1].cumsum()[::-1] - counts
    return DegreeCensus(n=n, m=m, ks=ks, counts=counts, tails=tails)


def test_statistic_T_hand_cases():
    """Exact zero and the one-step seed value."""
    cens = _census_from_rows(7, 5, np.arange(5, 11), [2, 0, 0, 0, 0, 6])
    assert statistic_T(cens, 0.0) == 0.0
    seed_census = _census_from_rows(1, 5, [5], [2])
    assert statistic_T(seed_census, 0.0) == pytest.approx(12.0 / 7.0, rel=1e-15)


def test_psi_threshold_and_report():
    """Azuma threshold m*sqrt(8n log(2/alpha)) with no p-value."""
    cens = _null_census(10_000)
    report = psi_rule(cens, 0.0, 0.05)
    assert report.threshold == pytest.approx(2716.2, abs=0.1)
    assert report.p_value is None
    assert report.mode == Mode.PSI
    assert report.reject == (abs(report.statistic) >= report.threshold)
    wide = psi_rule(cens, 0.0, 0.999999)
    assert wide.threshold == pytest.approx(5 * math.sqrt(8 * 10_000 * math.log(2)), rel=1e-3)


def test_phi_default_policy():
    """Default a_n = sqrt(n) (log n)^{3/2}; no significance level in play."""
    assert default_a_n(10_000) == pytest.approx(2795.2, abs=0.2)
    cens = _null_census(10_000)
    report = phi_rule(cens, BOUNDS5)
    assert report.threshold == pytest.approx(default_a_n(10_000), rel=1e-12)
    assert report.alpha is None and report.p_value is None
    custom = phi_rule(cens, BOUNDS5, a_n_policy=lambda n: 10.0 * math.sqrt(n))
    assert custom.threshold == pytest.approx(1000.0, rel=1e-12)


def test_psi_cal_threshold_and_p_value():
    """Normal threshold sqrt(n w) z_{alpha/2} and the matching p-value."""
    cens = _null_census(10_000)
    report = psi_cal_rule(cens, 0.0, 0.05)
    assert report.threshold == pytest.approx(62.61, abs=0.01)
    scale = math.sqrt(10_000 * w_var(0.0, 5))
    oracle = 2 * float(mpmath.ncdf(-abs(report.statistic) / scale))
    assert report.p_value == pytest.approx(oracle, abs=1e-12)
    assert report.reject == (report.p_value < 0.05)


def test_phi_cal_uses_estimate():
    """Threshold from w+u at the fitted delta; boundary information surfaces."""
    cens = _null_census(10_000, seed=4)
    report = phi_cal_rule(cens, BOUNDS5, 0.05)
    _, fit = statistic_Q(cens, BOUNDS5)
    assert report.delta_used == fit.delta_hat
    expect = math.sqrt(10_000 * (w_var(fit.delta_hat, 5) + u_var(fit.delta_hat, 5)))
    assert report.threshold == pytest.approx(expect * z_quantile(0.025), rel=1e-12)
    pinned = phi_cal_rule(cens, ParameterBounds(2.0, 3.0, 5), 0.05)
    assert pinned.boundary_hit and pinned.delta_used == 2.0


def test_w_var_closed_form():
    """Exact rational values and positivity across the admissible grid."""
    assert w_var(0.0, 5) == pytest.approx(7500.0 / 73500.0, rel=1e-15)
    # the displayed factors at (0, 1) are 1*1*2*2 over (0+2*1*2)*(0+1*3)^2 = 4/36
    assert w_var(0.0, 1) == pytest.approx(1.0 / 9.0, rel=1e-15)
    for m in range(1, 11):
        for delta in (-0.9 * m, 0.0, 1.0, 5.0, 10.0):
            assert w_var(delta, m) > 0.0, f"m={m} delta={delta}"


def test_v_var_series_value():
    """Certified series against an 80-digit independent evaluation."""
    assert v_var(0.0, 5) == pytest.approx(0.01984433605672975, abs=5e-12)
    for m in (1, 2, 5, 10):
        for delta in (-0.9 * m, 0.0, 1.0, 5.0):
            assert v_var(delta, m) > 0.0, f"m={m} delta={delta}"


def test_u_var_sign_and_sum():
    """u below zero, w+u above zero, and the Table value at (0, 5)."""
    assert w_var(0.0, 5) + u_var(0.0, 5) == pytest.approx(0.0811, abs=5e-4)
    for m in range(1, 11):
        for delta in (-0.9 * m, 0.0, 1.0, 5.0):
            u = u_var(delta, m)
            assert u < 0.0, f"m={m} delta={delta}"
            assert w_var(delta, m) + u > 0.0, f"m={m} delta={delta}"


def test_b_cov_values():
    """b = m^2 / (delta + m(2+m+delta))^2 at hand points."""
    assert b_cov(0.0, 5) == pytest.approx(25.0 / 1225.0, rel=1e-15)
    assert b_cov(0.0, 1) == pytest.approx(1.0 / 9.0, rel=1e-15)
    assert p_m_prime(0.0, 5) == pytest.approx(-b_cov(0.0, 5), rel=1e-15)


def test_sigma_cov_structure_and_collapse():
    """Symmetric PSD matrix with diagonal (w, 1/v); delta-method collapse."""
    for m, delta in ((1, 0.0), (5, 0.0), (5, 1.0), (2, -1.5)):
        sigma = sigma_cov(delta, m)
        assert sigma[0, 1] == sigma[1, 0]
        assert sigma[0, 0] == pytest.approx(w_var(delta, m), rel=1e-12)
        assert sigma[1, 1] == pytest.approx(1.0 / v_var(delta, m), rel=1e-12)
        assert np.linalg.det(sigma) >= 0.0
        vec = np.array([1.0, -p_m_prime(delta, m)])
        collapsed = float(vec @ sigma @ vec)
        expect = w_var(delta, m) + u_var(delta, m)
        assert collapsed == pytest.approx(expect, abs=1e-9), f"m={m} delta={delta}"


def test_z_quantile_against_erfinv():
    """Right-tail quantile within 1e-8 of a 50-digit erf-inverse oracle."""
    assert z_quantile(0.5) == 0.0
    assert z_quantile(0.025) == pytest.approx(1.95996398, abs=1e-8)
    mpmath.mp.dps = 50
    for alpha in (0.001, 0.025, 0.1, 0.3, 0.5, 0.9, 0.999):
        oracle = float(mpmath.sqrt(2) * mpmath.erfinv(1 - 2 * alpha))
        assert z_quantile(alpha) == pytest.approx(oracle, abs=1e-8), f"alpha={alpha}"
        assert z_quantile(alpha) == pytest.approx(-z_quantile(1 - alpha), abs=1e-12)
    with pytest.raises(ValueError):
        z_quantile(0.0)


def test_mean_shift_T_values_and_identity():
    """Table values, the vanishing diagonal, and the two-form equality."""
    assert mean_shift_T(0.0, 1.0, 1.0, 5) == pytest.approx(-1.0 / 15.4, rel=1e-12)
    assert mean_shift_T(0.0, -1.0, 1.0, 5) == pytest.approx(1.0 / 12.6, rel=1e-12)
    assert mean_shift_T(0.0, 1.0, 1.0, 5) == pytest.approx(-0.0649, abs=1e-4)
    assert mean_shift_T(0.0, -1.0, 1.0, 5) == pytest.approx(0.0794, abs=1e-4)
    assert mean_shift_T(0.7, 0.7, 2.0, 3) == 0.0
    for m in (1, 2, 5):
        for d0 in (-0.5, 0.0, 1.0):
            for d1 in (-0.9, 0.0, 2.0):
                ratio_form = mean_shift_T(d0, d1, 1.3, m)
                rational = mean_shift_T_rational(d0, d1, 1.3, m)
                assert ratio_form == pytest.approx(rational, abs=1e-10), \
                    f"m={m} d0={d0} d1={d1}"


def test_mean_shift_Q_values_and_signs():
    """Table values; sign follows delta0 - delta1."""
    assert mean_shift_Q(0.0, 1.0, 1.0, 5) == pytest.approx(-5.0 / 107.8, rel=1e-12)
    assert mean_shift_Q(0.0, -1.0, 1.0, 5) == pytest.approx(5.0 / 88.2, rel=1e-12)
    assert mean_shift_Q(0.0, 1.0, 1.0, 5) == pytest.approx(-0.0464, abs=1e-4)
    assert mean_shift_Q(0.0, -1.0, 1.0, 5) == pytest.approx(0.0567, abs=1e-4)
    assert mean_shift_Q(1.0, 1.0, 2.0, 5) == 0.0
    for d0, d1 in ((0.0, 2.0), (2.0, 0.0), (-0.5, 0.5)):
        val = mean_shift_Q(d0, d1, 1.0, 5)
        assert (val > 0) == (d0 > d1), f"d0={d0} d1={d1}"


def test_kappa_consistency_identity():
    """kappa at delta0 over v reduces to c(d1-d0)(2m+d0)/(2m+d1)."""
    assert kappa_fn(0.5, 0.5, 0.5, 1.0, 5) == 0.0
    cases = [
        (1, 0.0, 0.5, 1.0), (1, 0.0, -0.5, 1.0), (1, 1.0, 0.0, 2.0),
        (5, 0.0, 1.0, 1.0), (5, 0.0, -1.0, 1.0), (5, 1.0, 0.0, 2.0),
    ]
    for m, d0, d1, c in cases:
        lhs = kappa_fn(d1, d0, d0, c, m) / v_var(d0, m)
        rhs = c * (d1 - d0) * (2 * m + d0) / (2 * m + d1)
        assert lhs == pytest.approx(rhs, rel=1e-8), f"m={m} d0={d0} d1={d1}"


def test_shift_constants_bundle():
    """The bundle carries eta, alpha_shift, and a live kappa callable."""
    bundle = shift_constants(0.0, -1.0, 1.0, 5)
    assert bundle.eta == mean_shift_T(0.0, -1.0, 1.0, 5)
    assert bundle.alpha_shift == mean_shift_Q(0.0, -1.0, 1.0, 5)
    assert bundle.kappa_fn(0.0) == pytest.approx(kappa_fn(-1.0, 0.0, 0.0, 1.0, 5), rel=1e-12)


def test_attach_increase_prob():
    """Late-window growth probability at the documented point; linear in c."""
    value = attach_increase_prob(5, 0.0, 1.0, 0.75, 100_000, 5)
    assert value == pytest.approx(0.1406, abs=2e-4)
    halved = attach_increase_prob(5, 0.0, 0.5, 0.75, 100_000, 5)
    assert halved == pytest.approx(value / 2.0, rel=1e-12)
    with pytest.raises(ValueError):
        attach_increase_prob(3, 0.0, 1.0, 0.75, 100_000, 5)


def test_calibrated_thresholds_scale_sqrt_n():
    """threshold(4n) / threshold(n) = 2 exactly for fixed delta."""
    small = _null_census(500, seed=6)
    big = _null_census(2_000, seed=6)
    psi_small = psi_cal_rule(small, 0.0, 0.05).threshold
    psi_big = psi_cal_rule(big, 0.0, 0.05).threshold
    assert psi_big == 2.0 * psi_small
    azuma_small = psi_rule(small, 0.0, 0.05).threshold
    azuma_big = psi_rule(big, 0.0, 0.05).threshold
    assert azuma_big == 2.0 * azuma_small


def test_predicted_power_anchors():
    """Exactly alpha on the diagonal, the documented 0.990 point, limit 1."""
    assert predicted_power(Mode.PSI_CAL, 0.0, 0.0, 1.0, 0.75, 5, 1000, 0.05) \
        == pytest.approx(0.05, abs=1e-12)
    value = predicted_power(Mode.PSI_CAL, 0.0, 1.0, 1.0, 0.75, 5, 200_000, 0.05)
    assert value == pytest.approx(0.990, abs=1e-3)
    huge = predicted_power(Mode.PHI_CAL, 0.0, 1.0, 1.0, 0.75, 5, 10**12, 0.05)
    assert huge == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(ValueError):
        predicted_power(Mode.PSI, 0.0, 1.0, 1.0, 0.75, 5, 1000, 0.05)


def test_report_round_trip():
    """Reports serialize to plain dictionaries with the mode spelled out."""
    cens = _null_census(1_000, seed=9)
    blob = psi_cal_rule(cens, 0.0, 0.05).to_dict()
    assert blob["mode"] == "psi_cal"
    assert set(blob) >= {"statistic", "threshold", "reject", "alpha", "p_value"}
