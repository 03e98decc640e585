"""Decision rules for detecting a late change in the attachment affinity.

Four rules act on one final-snapshot census. With the pre-change affinity
delta0 known, the statistic is T = N_m(n) - n p_m(delta0); with it unknown,
Q = N_m(n) - n p_m(delta_hat) plugs in the maximum-likelihood estimate.
Each statistic has a conservative concentration-bound rule (psi, phi) and a
calibrated rule whose threshold comes from its asymptotic normal law (psi_cal,
phi_cal), with variances w and w + u.

Also here: the asymptotic constants (w, v, u, b, the 2x2 covariance), the
mean-shift constants eta and alpha_shift (the latter renamed from the source
material's overloaded alpha, which doubles as the significance level), kappa,
and the normal-approximation power prediction used for dashed reference
curves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

import numpy as np
from scipy.special import ndtr, ndtri

from .degrees import DegreeCensus, p_m_value, pk_weighted_sum
from .estimator import MleResult, ParameterBounds, mle


class TestMode(str, Enum):
    PSI = "psi"
    PHI = "phi"
    PSI_CAL = "psi_cal"
    PHI_CAL = "phi_cal"


@dataclass
class TestReport:
    """Outcome of one decision rule on one census.

    p_value is defined only for the calibrated modes; the concentration-bound
    rules are conservative and a p-value from them would overstate evidence.
    alpha is None for phi, whose threshold takes no significance level.
    """

    statistic: float
    threshold: float
    reject: bool
    alpha: Optional[float]
    mode: TestMode
    p_value: Optional[float]
    delta_used: float
    boundary_hit: bool = False

    def to_dict(self) -> dict:
        out = {
            "statistic": self.statistic,
            "threshold": self.threshold,
            "reject": self.reject,
            "alpha": self.alpha,
            "mode": self.mode.value,
            "p_value": self.p_value,
            "delta_used": self.delta_used,
            "boundary_hit": self.boundary_hit,
        }
        return out


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")


def z_quantile(alpha: float) -> float:
    """Right-tail standard normal quantile z_alpha."""
    _check_alpha(alpha)
    return float(-ndtri(alpha))


# ---------------------------------------------------------------------------
# statistics and decision rules
# ---------------------------------------------------------------------------

def statistic_T(cens: DegreeCensus, delta0: float) -> float:
    """Known-affinity statistic N_m(n) - n p_m(delta0)."""
    return cens.n_min - cens.n * p_m_value(delta0, cens.m)


def statistic_Q(cens: DegreeCensus, bounds: ParameterBounds) -> tuple[float, MleResult]:
    """Plug-in statistic N_m(n) - n p_m(delta_hat), with its MLE diagnostics."""
    result = mle(cens, bounds)
    q = cens.n_min - cens.n * p_m_value(result.delta_hat, cens.m)
    return q, result


def test_psi(cens: DegreeCensus, delta0: float, alpha: float) -> TestReport:
    """Concentration-bound rule for known delta0.

    Rejects when |T| >= m sqrt(8 n log(2/alpha)). The bound is conservative,
    so the realized type-I error sits well below alpha.
    """
    _check_alpha(alpha)
    t = statistic_T(cens, delta0)
    threshold = cens.m * math.sqrt(8.0 * cens.n * math.log(2.0 / alpha))
    return TestReport(
        statistic=t, threshold=threshold, reject=abs(t) >= threshold,
        alpha=alpha, mode=TestMode.PSI, p_value=None, delta_used=delta0,
    )


def default_a_n(n: int) -> float:
    """Default phi threshold sqrt(n) (log n)^{3/2}.

    Grows faster than sqrt(n) log n yet stays n^{1/2 + o(1)}, the two rates
    the rule needs for vanishing type-I and type-II errors.
    """
    return math.sqrt(n) * math.log(n) ** 1.5


def test_phi(
    cens: DegreeCensus,
    bounds: ParameterBounds,
    a_n_policy: Optional[Callable[[int], float]] = None,
    mle_result: Optional[MleResult] = None,
) -> TestReport:
    """Concentration-style rule for unknown delta0, threshold a_n by policy."""
    policy = a_n_policy if a_n_policy is not None else default_a_n
    if mle_result is None:
        q, result = statistic_Q(cens, bounds)
    else:
        result = mle_result
        q = cens.n_min - cens.n * p_m_value(result.delta_hat, cens.m)
    threshold = float(policy(cens.n))
    return TestReport(
        statistic=q, threshold=threshold, reject=abs(q) >= threshold,
        alpha=None, mode=TestMode.PHI, p_value=None,
        delta_used=result.delta_hat, boundary_hit=result.boundary_hit,
    )


def test_psi_cal(cens: DegreeCensus, delta0: float, alpha: float) -> TestReport:
    """Calibrated known-delta0 rule: |T| >= sqrt(n w(delta0, m)) z_{alpha/2}."""
    _check_alpha(alpha)
    t = statistic_T(cens, delta0)
    scale = math.sqrt(cens.n * w_var(delta0, cens.m))
    threshold = scale * z_quantile(alpha / 2.0)
    p_value = 2.0 * float(ndtr(-abs(t) / scale))
    return TestReport(
        statistic=t, threshold=threshold, reject=abs(t) >= threshold,
        alpha=alpha, mode=TestMode.PSI_CAL, p_value=p_value, delta_used=delta0,
    )


def test_phi_cal(
    cens: DegreeCensus,
    bounds: ParameterBounds,
    alpha: float,
    mle_result: Optional[MleResult] = None,
) -> TestReport:
    """Calibrated plug-in rule with variance w + u at the estimate."""
    _check_alpha(alpha)
    if mle_result is None:
        q, result = statistic_Q(cens, bounds)
    else:
        result = mle_result
        q = cens.n_min - cens.n * p_m_value(result.delta_hat, cens.m)
    d_hat = result.delta_hat
    scale = math.sqrt(cens.n * (w_var(d_hat, cens.m) + u_var(d_hat, cens.m)))
    threshold = scale * z_quantile(alpha / 2.0)
    p_value = 2.0 * float(ndtr(-abs(q) / scale))
    return TestReport(
        statistic=q, threshold=threshold, reject=abs(q) >= threshold,
        alpha=alpha, mode=TestMode.PHI_CAL, p_value=p_value,
        delta_used=d_hat, boundary_hit=result.boundary_hit,
    )


# ---------------------------------------------------------------------------
# asymptotic constants
# ---------------------------------------------------------------------------

def w_var(delta: float, m: int) -> float:
    """Asymptotic variance of T / sqrt(n) under the null."""
    num = m * m * (m + delta) * (1.0 + m + delta) * (2.0 * m + delta)
    den = (delta + 2.0 * m * (1.0 + m + delta)) * (delta + m * (2.0 + m + delta)) ** 2
    return num / den


def v_var(delta: float, m: int, tol: float = 1e-12) -> float:
    """Limiting observed information at delta; positive.

    Series form sum_k m p_k / ((k + delta)(2m + delta)) - m/(2m + delta)^2,
    evaluated with the certified tail bound.
    """
    factor = m / (2.0 * m + delta)
    series = pk_weighted_sum(delta, m, lambda ks: factor / (ks + delta), tol=tol)
    return series - m / (2.0 * m + delta) ** 2


def b_cov(delta: float, m: int) -> float:
    """Asymptotic covariance scale between the count and score coordinates."""
    return m * m / (delta + m * (2.0 + m + delta)) ** 2


def u_var(delta: float, m: int, tol: float = 1e-12) -> float:
    """Variance correction from plugging in the estimate; always negative."""
    return -(m**4) / (v_var(delta, m, tol=tol) * (delta + m * (2.0 + m + delta)) ** 4)


def sigma_cov(delta: float, m: int, tol: float = 1e-12) -> np.ndarray:
    """Joint 2x2 asymptotic covariance of the count and estimator coordinates."""
    w = w_var(delta, m)
    v = v_var(delta, m, tol=tol)
    b = b_cov(delta, m)
    off = -b / v
    return np.array([[w, off], [off, 1.0 / v]])


# ---------------------------------------------------------------------------
# alternative-model shift constants
# ---------------------------------------------------------------------------

def mean_shift_T(delta0: float, delta1: float, c: float, m: int) -> float:
    """Leading coefficient eta of E[T] ~ eta n^gamma under the alternative."""
    return c * (1.0 - p_m_value(delta0, m) / p_m_value(delta1, m))


def mean_shift_T_rational(delta0: float, delta1: float, c: float, m: int) -> float:
    """Algebraically equal rational form of eta, kept for the identity check."""
    p_m_value(delta1, m)  # validates delta1 > -m
    return c * (delta0 - delta1) / ((2.0 + delta1 / m) * (m + delta0 + 2.0 + delta0 / m))


def mean_shift_Q(delta0: float, delta1: float, c: float, m: int) -> float:
    """Leading coefficient alpha_shift of E[Q] ~ alpha_shift n^gamma."""
    p_m_value(delta1, m)
    return (
        c * (delta0 - delta1) * (m + delta0)
        / ((2.0 + delta1 / m) * (m + delta0 + 2.0 + delta0 / m) ** 2)
    )


def kappa_fn(
    delta1: float, delta0: float, delta: float, c: float, m: int, tol: float = 1e-12
) -> float:
    """Score mean-shift coefficient kappa(delta1, delta0, delta)."""
    p_m_value(delta1, m)
    p_m_value(delta, m)
    factor = 2.0 * m + delta
    series = pk_weighted_sum(delta0, m, lambda ks: factor / (ks + delta), tol=tol)
    front = (delta1 - delta0) * c * m / ((2.0 * m + delta1) * (2.0 * m + delta0))
    return front * (series - 1.0)


@dataclass
class ShiftConstants:
    """Bundle of the alternative-model drift coefficients."""

    eta: float
    alpha_shift: float
    kappa_fn: Callable[[float], float]


def shift_constants(delta0: float, delta1: float, c: float, m: int) -> ShiftConstants:
    return ShiftConstants(
        eta=mean_shift_T(delta0, delta1, c, m),
        alpha_shift=mean_shift_Q(delta0, delta1, c, m),
        kappa_fn=lambda delta: kappa_fn(delta1, delta0, delta, c, m),
    )


def attach_increase_prob(
    k: int, delta_ell: float, c: float, gamma: float, n: int, m: int
) -> float:
    """Leading-order chance a degree-k vertex gains an edge after the change.

    Valid in the regime k = o(n^{1-gamma}); callers own that responsibility.
    Used for simulation cross-validation only.
    """
    if k < m:
        raise ValueError(f"k must be at least m = {m}, got {k}")
    p_m_value(delta_ell, m)
    return c * n ** (gamma - 1.0) * m * (k + delta_ell) / (2.0 * m + delta_ell)


def predicted_power(
    mode: TestMode | str,
    delta0: float,
    delta1: float,
    c: float,
    gamma: float,
    m: int,
    n: int,
    alpha: float,
) -> float:
    """Normal-approximation power of a calibrated rule at size n.

    s = shift n^gamma / sqrt(n var) with (shift, var) = (eta, w) for psi_cal
    and (alpha_shift, w + u) for phi_cal; power = Phi(s - z) + Phi(-s - z).
    """
    _check_alpha(alpha)
    mode = TestMode(mode)
    if mode == TestMode.PSI_CAL:
        shift = mean_shift_T(delta0, delta1, c, m)
        var = w_var(delta0, m)
    elif mode == TestMode.PHI_CAL:
        shift = mean_shift_Q(delta0, delta1, c, m)
        var = w_var(delta0, m) + u_var(delta0, m)
    else:
        raise ValueError(f"predicted power is defined for calibrated modes, not {mode}")
    z = z_quantile(alpha / 2.0)
    s = shift * n**gamma / math.sqrt(n * var)
    return float(ndtr(s - z) + ndtr(-s - z))
