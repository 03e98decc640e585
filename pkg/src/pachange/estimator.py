"""Likelihood, score, and the maximum-likelihood affinity estimate.

The normalized log-likelihood of a final-snapshot census is

    iota_n(delta) = (1/(n+1)) [ sum_{k>=m} log(k+delta) N_{>k}(n)
                                - sum_{t=2..n} sum_{i=1..m} log S_{t,i-1}(delta) ]

with S_{t,i-1}(delta) = t delta + 2m(t-1) + (i-1), the sub-step normalizer.
The random part reads the census tails; the deterministic double sum is
computed exactly (O(nm), compiled). The estimate is the bracketed root of the
score on a known compact range, falling back to the better boundary when the
score does not change sign.

limit_score and limit_curvature are the deterministic large-n limits of the
score and its derivative, used for identity checks and power analysis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import _kernels
from .degrees import DegreeCensus, p_m_value, pk_weighted_sum

_SERIES_CHUNK = 1 << 16
_SERIES_LIMIT = 1 << 31


@dataclass(frozen=True)
class ParameterBounds:
    """Known compact range for the affinity; requires -m < delta_min <= delta_max."""

    delta_min: float
    delta_max: float
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"m must be a positive integer, got {self.m}")
        if not -self.m < self.delta_min <= self.delta_max:
            raise ValueError(
                f"need -m < delta_min <= delta_max, got ({self.delta_min}, {self.delta_max})"
            )


@dataclass
class MleResult:
    delta_hat: float
    score_at_hat: float
    iterations: int
    boundary_hit: bool


def s_norm(t: int, i: int, delta: float, m: int) -> float:
    """Sub-step normalizer S_{t,i-1}(delta) = t delta + 2m(t-1) + (i-1)."""
    if t < 2:
        raise ValueError(f"t must be at least 2, got {t}")
    if not 1 <= i <= m:
        raise ValueError(f"i must lie in [1, {m}], got {i}")
    return t * delta + 2.0 * m * (t - 1) + (i - 1)


def _check_delta(delta: float, m: int) -> None:
    if delta <= -m:
        raise ValueError(f"delta must exceed -m = {-m}, got {delta}")


def log_likelihood(cens: DegreeCensus, delta: float) -> float:
    """Normalized log-likelihood iota_n(delta) of the census."""
    _check_delta(delta, cens.m)
    ks = cens.ks.astype(np.float64)
    random_part = float(np.sum(np.log(ks + delta) * cens.tails))
    det_part = _kernels.loglik_det_sum(cens.n, cens.m, float(delta))
    return (random_part - det_part) / (cens.n + 1)


def score(cens: DegreeCensus, delta: float) -> float:
    """Score iota'_n(delta); strictly decreasing in delta for large graphs."""
    _check_delta(delta, cens.m)
    ks = cens.ks.astype(np.float64)
    random_part = float(np.sum(cens.tails / (ks + delta)))
    det_part = _kernels.score_det_sum(cens.n, cens.m, float(delta))
    return (random_part - det_part) / (cens.n + 1)


def score_derivative(cens: DegreeCensus, delta: float) -> float:
    """Curvature iota''_n(delta), term-by-term derivative of the score."""
    _check_delta(delta, cens.m)
    ks = cens.ks.astype(np.float64)
    random_part = -float(np.sum(cens.tails / (ks + delta) ** 2))
    det_part = _kernels.curv_det_sum(cens.n, cens.m, float(delta))
    return (random_part + det_part) / (cens.n + 1)


def mle(cens: DegreeCensus, bounds: ParameterBounds, tol: float = 1e-10) -> MleResult:
    """Maximize the likelihood over [delta_min, delta_max].

    The score is bracketed and solved to tol when it changes sign across the
    range; otherwise the boundary with the larger likelihood is returned with
    boundary_hit set.
    """
    if bounds.m != cens.m:
        raise ValueError(f"bounds are for m = {bounds.m}, census has m = {cens.m}")
    lo, hi = bounds.delta_min, bounds.delta_max
    f_lo = score(cens, lo)
    if lo == hi:
        return MleResult(lo, f_lo, 0, True)
    f_hi = score(cens, hi)
    if f_lo == 0.0:
        return MleResult(lo, 0.0, 0, False)
    if f_hi == 0.0:
        return MleResult(hi, 0.0, 0, False)
    if (f_lo > 0.0) == (f_hi > 0.0):
        # no interior root: the score is one-signed, likelihood is monotone
        pick = hi if log_likelihood(cens, hi) > log_likelihood(cens, lo) else lo
        return MleResult(pick, score(cens, pick), 0, True)
    root, info = brentq(
        lambda d: score(cens, d), lo, hi, xtol=tol, maxiter=200, full_output=True
    )
    return MleResult(float(root), score(cens, float(root)), info.iterations, False)


def limit_score(delta: float, delta0: float, m: int, tol: float = 1e-12) -> float:
    """Large-n limit of the score when the truth is delta0.

    Evaluated through the exact rearrangement

        iota'(delta) = 1/(2 + delta0/m) - 1/(2 + delta/m)
                       + ((delta0 - delta)/(2 + delta0/m)) sum_k p_k(delta0)/(k + delta)

    which vanishes identically at delta = delta0 and whose series has the
    certified p_k truncation. Positive below delta0, negative above.
    """
    _check_delta(delta, m)
    _check_delta(delta0, m)
    if delta == delta0:
        return 0.0
    series = pk_weighted_sum(delta0, m, lambda ks: 1.0 / (ks + delta), tol=tol)
    return (
        1.0 / (2.0 + delta0 / m)
        - 1.0 / (2.0 + delta / m)
        + (delta0 - delta) / (2.0 + delta0 / m) * series
    )


def limit_curvature(delta0: float, m: int, tol: float = 1e-12) -> float:
    """Large-n limit of iota''_n at the true parameter.

    Direct form m/(2m + delta0)^2 - sum_k p_{>k}(delta0)/(k + delta0)^2, with
    the tails accumulated as running partial sums 1 - sum_{j<=k} p_j rather
    than through the closed tail formula, so the cross-check against v keeps
    two independent routes. Truncation: the remainder is below
    p_{>K} / (K + delta0) since sum_{k>K} (k+delta0)^{-2} < 1/(K+delta0).
    """
    _check_delta(delta0, m)
    shift = 3.0 + delta0 + delta0 / m
    total = 0.0
    k0 = m
    p0 = p_m_value(delta0, m)
    tail_run = 1.0
    while True:
        ks = np.arange(k0, k0 + _SERIES_CHUNK, dtype=np.float64)
        ratios = (ks + delta0) / (ks + shift)
        pk = np.empty(_SERIES_CHUNK)
        pk[0] = p0
        np.cumprod(ratios[:-1], out=ratios[:-1])
        pk[1:] = p0 * ratios[:-1]
        tails = tail_run - np.cumsum(pk)
        total += float(np.sum(tails / (ks + delta0) ** 2))
        big_k = k0 + _SERIES_CHUNK - 1
        # remainder <= p_{>K} / (K + delta0) = p_K / (2 + delta0/m)
        bound = pk[-1] / (2.0 + delta0 / m)
        if bound < tol:
            return m / (2.0 * m + delta0) ** 2 - total
        if big_k > _SERIES_LIMIT:
            raise RuntimeError(f"series failed to certify below {tol} by k = {big_k}")
        tail_run = float(tails[-1])
        p0 = pk[-1] * (big_k + delta0) / (big_k + shift)
        k0 = big_k + 1
