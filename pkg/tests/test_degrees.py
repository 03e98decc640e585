"""Limit degree distribution, its derivative, and the census reduction."""

import numpy as np
import pytest

from pachange import (
    DegreeCensus,
    ModelConfig,
    Scaled,
    census,
    census_from_degrees,
    grow,
    load_census_csv,
    p_k_value,
    p_m_prime,
    p_m_value,
    p_tail,
    pk_weighted_sum,
    save_census_csv,
)
from pachange.degrees import p_m_prime_fd

GRID = [(d * m, m) for m in (1, 2, 5, 10) for d in (-0.9, 0.0, 1.0 / m, 5.0 / m)]


def test_p_m_small_cases():
    """Minimal-degree mass at hand-checkable parameters."""
    assert p_m_value(0.0, 5) == pytest.approx(2.0 / 7.0, rel=1e-15)
    assert p_m_value(0.0, 1) == pytest.approx(2.0 / 3.0, rel=1e-15)
    assert p_m_value(1.0, 1) == pytest.approx(3.0 / 5.0, rel=1e-15)
    with pytest.raises(ValueError):
        p_m_value(-5.0, 5)


def test_p_k_closed_form_tree():
    """m=1, delta=0 collapses to 4/(k(k+1)(k+2))."""
    for k in range(1, 51):
        expect = 4.0 / (k * (k + 1) * (k + 2))
        assert p_k_value(0.0, 1, k) == pytest.approx(expect, rel=1e-12), f"k={k}"


def test_p_k_recursion_ratio():
    """p_k / p_{k-1} = (k-1+delta)/(k+2+delta+delta/m) across the grid."""
    for delta, m in GRID:
        for k in (m + 1, m + 2, m + 10, 100 + m, 1000, 10_000):
            if k <= m:
                continue
            ratio = p_k_value(delta, m, k) / p_k_value(delta, m, k - 1)
            expect = (k - 1 + delta) / (k + 2 + delta + delta / m)
            assert ratio == pytest.approx(expect, rel=1e-12), \
                f"delta={delta} m={m} k={k}"


def test_normalization_via_exact_tail():
    """p_m + p_tail(m) = 1 across the whole grid."""
    for delta, m in GRID:
        total = p_m_value(delta, m) + p_tail(delta, m, m)
        assert total == pytest.approx(1.0, abs=1e-12), f"delta={delta} m={m}"


def test_weighted_series_normalizes():
    """Certified summation with f=1 recovers total mass 1.

    Restricted to delta >= 0: the certified stop bound needs the p_k tail
    (exponent 2 + delta/m) to clear the tolerance, which a heavy delta < 0
    tail cannot do in bounded k. The exact-tail identity above covers those.
    """
    for delta, m in ((0.0, 1), (0.0, 5), (1.0, 2), (5.0, 10)):
        series = pk_weighted_sum(
            delta, m, lambda ks: np.ones_like(ks, dtype=float), tol=1e-9
        )
        assert series == pytest.approx(1.0, abs=1e-8), f"delta={delta} m={m}"


def test_tail_matches_partial_sums():
    """Closed-form tail equals one minus the accumulated head."""
    for delta, m in ((0.0, 1), (0.5, 2), (-2.5, 5)):
        head = 0.0
        for k in range(m, m + 200):
            head += p_k_value(delta, m, k)
            tail = p_tail(delta, m, k)
            assert head + tail == pytest.approx(1.0, abs=1e-12), \
                f"delta={delta} m={m} k={k}"


def test_p_m_prime_matches_finite_difference():
    """The closed-form derivative agrees with central differences."""
    for delta, m in ((-0.5, 1), (0.0, 1), (0.0, 5), (1.0, 2), (5.0, 10)):
        exact = p_m_prime(delta, m)
        fd = p_m_prime_fd(delta, m)
        assert exact == pytest.approx(fd, abs=1e-6), f"delta={delta} m={m}"
        assert exact < 0.0, "mass at the minimum degree must fall as delta grows"


def test_p_k_large_k_log_space():
    """The log-space evaluation path keeps the recursion ratio."""
    k = 1_000_010
    a = p_k_value(0.5, 1, k)
    b = p_k_value(0.5, 1, k - 1)
    expect = (k - 1 + 0.5) / (k + 2 + 0.5 + 0.5)
    assert a / b == pytest.approx(expect, rel=1e-9)


def test_census_from_known_degrees():
    """Hand-reduced census for a five-vertex degree sequence."""
    cens = census_from_degrees(np.array([3, 2, 1, 1, 1]), 1)
    assert cens.n == 4
    assert cens.ks.tolist() == [1, 2, 3]
    assert cens.counts.tolist() == [3, 1, 1]
    assert cens.tails.tolist() == [2, 1, 0]
    assert cens.n_min == 3
    assert cens.count(2) == 1 and cens.count(99) == 0
    assert cens.tail(0) == 5 and cens.tail(1) == 2 and cens.tail(99) == 0


def test_census_matches_simulation_invariants():
    """Census of a simulated graph keeps the mass and tail identities."""
    config = ModelConfig(m=4, delta0=0.5, delta1=-1.0,
                         changepoint=Scaled(c=1.0, gamma=0.75), n=500)
    cens = census(grow(config, 21))
    assert int(cens.counts.sum()) == 501
    assert int((cens.ks * cens.counts).sum()) == 2 * 500 * 4
    rebuilt = cens.counts[::-1].cumsum()[::-1] - cens.counts
    assert np.array_equal(cens.tails, rebuilt)


def test_census_rejects_inconsistencies():
    """Mass, alignment, and minimum-degree violations fail construction."""
    with pytest.raises(ValueError):
        DegreeCensus(n=4, m=1, ks=np.array([1, 2]), counts=np.array([3, 1]),
                     tails=np.array([1, 0]))
    with pytest.raises(ValueError):
        census_from_degrees(np.array([3, 2, 1, 1, 1]), 2)


def test_census_csv_round_trip(tmp_path):
    """Census files reload to an identical census."""
    config = ModelConfig(m=2, delta0=0.0, delta1=0.0,
                         changepoint=Scaled(c=1.0, gamma=0.75), n=200)
    cens = census(grow(config, 4))
    path = tmp_path / "census.csv"
    save_census_csv(cens, path)
    loaded = load_census_csv(path)
    assert loaded.n == cens.n and loaded.m == cens.m
    assert np.array_equal(loaded.ks, cens.ks)
    assert np.array_equal(loaded.counts, cens.counts)
    assert np.array_equal(loaded.tails, cens.tails)


def test_census_csv_rejects_gaps(tmp_path):
    """Non-contiguous degree rows are a load error."""
    path = tmp_path / "census.csv"
    path.write_text("k,count,tail\n1,3,2\n3,2,0\n")
    with pytest.raises(ValueError):
        load_census_csv(path)
