"""Degree census and the limiting degree distribution family p_k(delta).

The census of a final graph (counts N_k and tail counts N_{>k}) is the
sufficient statistic for everything downstream: test statistics, likelihood,
and the estimator all read only these counts.

p_k(delta) is the limiting fraction of degree-k vertices in the constant-delta
model. It is evaluated through the stable product form

    p_m = (2 + delta/m) / (m + delta + 2 + delta/m)
    p_k = p_m * prod_{j=m+1..k} (j - 1 + delta) / (j + 2 + delta + delta/m)

and its exact tail mass p_{>k} = (k + delta) p_k / (2 + delta/m). The tail
formula is what makes every infinite series here finite work: partial sums
stop once the exact remainder bound drops below tolerance.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from .growth import FinalGraph

_SERIES_CHUNK = 1 << 16
_SERIES_LIMIT = 1 << 31


def _check_delta(delta: float, m: int) -> None:
    if m < 1:
        raise ValueError(f"m must be a positive integer, got {m}")
    if delta <= -m:
        raise ValueError(f"delta must exceed -m = {-m}, got {delta}")


def p_m_value(delta: float, m: int) -> float:
    """Limiting fraction of minimal-degree vertices, (2 + d/m)/(m + d + 2 + d/m)."""
    _check_delta(delta, m)
    return (2.0 + delta / m) / (m + delta + 2.0 + delta / m)


def p_k_value(delta: float, m: int, k: int) -> float:
    """Limiting fraction of degree-k vertices via the product form."""
    _check_delta(delta, m)
    if k < m:
        raise ValueError(f"k must be at least m = {m}, got {k}")
    if k - m > 10**6:
        # log-space keeps very long products away from underflow
        js = np.arange(m + 1, k + 1, dtype=np.float64)
        log_p = np.log(p_m_value(delta, m))
        log_p += np.sum(np.log(js - 1.0 + delta) - np.log(js + 2.0 + delta + delta / m))
        return float(np.exp(log_p))
    p = p_m_value(delta, m)
    for j in range(m + 1, k + 1):
        p *= (j - 1.0 + delta) / (j + 2.0 + delta + delta / m)
    return p


def p_tail(delta: float, m: int, k: int) -> float:
    """Exact tail mass p_{>k} = (k + delta) p_k / (2 + delta/m)."""
    return (k + delta) / (2.0 + delta / m) * p_k_value(delta, m, k)


def p_m_prime(delta: float, m: int) -> float:
    """Derivative of p_m in delta: -1/(m + delta + 2 + delta/m)^2.

    The quotient-rule numerator collapses to exactly -1 for every m, so this
    closed form is the exact derivative; p_m_prime_fd confirms it numerically.
    """
    _check_delta(delta, m)
    den = m + delta + 2.0 + delta / m
    return -1.0 / (den * den)


def p_m_prime_fd(delta: float, m: int, h: float = 1e-6) -> float:
    """Central finite difference of p_m, the independent check on p_m_prime."""
    _check_delta(delta, m)
    if delta - h <= -m:
        h = (delta + m) / 2.0
    return (p_m_value(delta + h, m) - p_m_value(delta - h, m)) / (2.0 * h)


def pk_weighted_sum(
    delta: float,
    m: int,
    f: Callable[[np.ndarray], np.ndarray],
    tol: float = 1e-12,
) -> float:
    """Certified evaluation of sum_{k >= m} p_k(delta) f(k).

    Requires f positive and nonincreasing on [m, inf). The remainder after
    truncating at K is then at most p_{>K} * f(K+1), which is exact and
    computable, so the loop stops as soon as that bound falls below tol.

    Args:
        delta: distribution parameter, > -m.
        m: minimal degree.
        f: vectorized weight, mapping a float array of k values to weights.
        tol: certified absolute truncation error.
    """
    _check_delta(delta, m)
    shift = 3.0 + delta + delta / m
    tail_factor = 1.0 / (2.0 + delta / m)
    total = 0.0
    k0 = m
    p0 = p_m_value(delta, m)
    while True:
        ks = np.arange(k0, k0 + _SERIES_CHUNK, dtype=np.float64)
        ratios = (ks + delta) / (ks + shift)
        pk = np.empty(_SERIES_CHUNK)
        pk[0] = p0
        np.cumprod(ratios[:-1], out=ratios[:-1])
        pk[1:] = p0 * ratios[:-1]
        total += float(np.sum(pk * f(ks)))
        big_k = k0 + _SERIES_CHUNK - 1
        tail = (big_k + delta) * tail_factor * pk[-1]
        bound = tail * float(f(np.asarray([big_k + 1.0]))[0])
        if bound < tol:
            return total
        if big_k > _SERIES_LIMIT:
            raise RuntimeError(
                f"series failed to certify below {tol} by k = {big_k}"
            )
        p0 = pk[-1] * (big_k + delta) / (big_k + shift)
        k0 = big_k + 1


@dataclass
class DegreeCensus:
    """Counts N_k and tails N_{>k} for k = m..max_degree.

    ks, counts and tails are aligned arrays; tails[i] counts vertices of
    degree strictly greater than ks[i], so the last tail entry is zero.
    """

    n: int
    m: int
    ks: np.ndarray
    counts: np.ndarray
    tails: np.ndarray

    def __post_init__(self):
        if not (len(self.ks) == len(self.counts) == len(self.tails)):
            raise ValueError("ks, counts and tails must be aligned")
        if self.ks[0] != self.m:
            raise ValueError(f"census must start at k = m = {self.m}")
        total = int(self.counts.sum())
        if total != self.n + 1:
            raise ValueError(f"counts sum to {total}, expected n + 1 = {self.n + 1}")
        mass = int((self.ks * self.counts).sum())
        if mass != 2 * self.n * self.m:
            raise ValueError(
                f"degree mass {mass} does not equal 2*n*m = {2 * self.n * self.m}"
            )
        expect_tails = total - np.cumsum(self.counts)
        if not np.array_equal(expect_tails, self.tails):
            raise ValueError("tails are inconsistent with counts")

    @property
    def n_min(self) -> int:
        """N_m, the number of minimal-degree vertices."""
        return int(self.counts[0])

    def count(self, k: int) -> int:
        if k < self.m or k > int(self.ks[-1]):
            return 0
        return int(self.counts[k - self.m])

    def tail(self, k: int) -> int:
        """N_{>k}; for k below m every vertex counts."""
        if k < self.m:
            return self.n + 1
        if k > int(self.ks[-1]):
            return 0
        return int(self.tails[k - self.m])


def census_from_degrees(degrees: np.ndarray, m: int) -> DegreeCensus:
    """Census of a raw degree vector with known minimal degree m."""
    degrees = np.asarray(degrees)
    n = len(degrees) - 1
    if int(degrees.min()) < m:
        raise ValueError("degrees below m are not a valid final graph")
    full = np.bincount(degrees)
    counts = full[m:].astype(np.int64)
    ks = np.arange(m, len(full), dtype=np.int64)
    tails = (n + 1) - np.cumsum(counts)
    return DegreeCensus(n=n, m=m, ks=ks, counts=counts, tails=tails)


def census(graph: FinalGraph) -> DegreeCensus:
    """Degree census of a final graph; O(n)."""
    return census_from_degrees(graph.degrees, graph.config.m)


def save_census_csv(cens: DegreeCensus, path) -> None:
    """Write `k,count,tail` rows from k = m up to the maximal degree."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["k", "count", "tail"])
        for k, c, t in zip(cens.ks, cens.counts, cens.tails):
            writer.writerow([int(k), int(c), int(t)])


def load_census_csv(path) -> DegreeCensus:
    """Read a census file; the first row's k is taken as m."""
    path = Path(path)
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header[:3]] != ["k", "count", "tail"]:
            raise ValueError(f"{path}: expected header 'k,count,tail'")
        rows = [(int(r[0]), int(r[1]), int(r[2])) for r in reader if r]
    if not rows:
        raise ValueError(f"{path}: no census rows")
    ks = np.asarray([r[0] for r in rows], dtype=np.int64)
    if not np.array_equal(ks, np.arange(ks[0], ks[0] + len(ks))):
        raise ValueError(f"{path}: k column must be contiguous")
    counts = np.asarray([r[1] for r in rows], dtype=np.int64)
    tails = np.asarray([r[2] for r in rows], dtype=np.int64)
    n = int(counts.sum()) - 1
    mass = int((ks * counts).sum())
    m = ks[0]
    if mass != 2 * n * m:
        raise ValueError(
            f"{path}: degree mass {mass} inconsistent with n = {n}, m = {m}"
        )
    return DegreeCensus(n=n, m=int(m), ks=ks, counts=counts, tails=tails)
