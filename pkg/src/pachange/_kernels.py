"""Numba kernels for the hot paths.

The growth loop, the batch sampler used by distributional tests, and the
deterministic double sums of the likelihood family are the only compute-bound
pieces; everything else is thin numpy. Kernels share one inline splitmix64 so
their streams match the pure Python reference in rng.py bit for bit.

All kernels release the GIL and are cached on disk after first compilation.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_ZERO = np.uint64(0)
_INV53 = 1.0 / 9007199254740992.0


@njit(inline="always")
def _mix64(z):
    z = (z ^ (z >> _S30)) * _MIX1
    z = (z ^ (z >> _S27)) * _MIX2
    return z ^ (z >> _S31)


@njit(cache=True, nogil=True)
def rng_stream(seed, count):
    """Raw splitmix64 outputs, for cross-checking against the reference."""
    out = np.empty(count, np.uint64)
    state = np.uint64(seed)
    for i in range(count):
        state = state + _GOLDEN
        out[i] = _mix64(state)
    return out


@njit(inline="always")
def _draw_target(state, endpoints, degrees, pos, delta, big_m, always):
    # Proposal: uniform endpoint (degree-proportional). Acceptance thins
    # (d + delta)/d down by the envelope big_m; delta == 0 always accepts.
    bound = np.uint64(pos)
    threshold = (_ZERO - bound) % bound
    while True:
        state = state + _GOLDEN
        r = _mix64(state)
        if r < threshold:
            continue
        cand = endpoints[np.int64(r % bound)]
        if always:
            return state, cand
        d = degrees[cand]
        state = state + _GOLDEN
        u = np.float64(_mix64(state) >> _S11) * _INV53
        if u * (big_m * d) < d + delta:
            return state, cand


@njit(cache=True, nogil=True)
def grow_degrees(n, m, tau, delta0, delta1, seed, record_edges):
    """Run the full growth process; returns (degrees, edges).

    edges has shape (n*m, 2) with rows (smaller id, larger id) when
    record_edges, else shape (0, 2).
    """
    degrees = np.zeros(n + 1, np.int64)
    endpoints = np.empty(2 * n * m, np.int32)
    if record_edges:
        edges = np.empty((n * m, 2), np.int32)
    else:
        edges = np.empty((0, 2), np.int32)

    degrees[0] = m
    degrees[1] = m
    for e in range(m):
        endpoints[2 * e] = 0
        endpoints[2 * e + 1] = 1
        if record_edges:
            edges[e, 0] = 0
            edges[e, 1] = 1
    pos = 2 * m
    eidx = m
    state = np.uint64(seed)

    for t in range(2, n + 1):
        delta = delta0 if t <= tau else delta1
        big_m = (m + delta) / m if delta >= 0.0 else 1.0
        always = delta == 0.0
        for _ in range(m):
            state, target = _draw_target(
                state, endpoints, degrees, pos, delta, big_m, always
            )
            degrees[target] += 1
            endpoints[pos] = target
            pos += 1
            if record_edges:
                edges[eidx, 0] = target
                edges[eidx, 1] = t
                eidx += 1
        degrees[t] = m
        for _ in range(m):
            endpoints[pos] = t
            pos += 1
    return degrees, edges


@njit(cache=True, nogil=True)
def sample_targets(old_degrees, delta, m, seed, draws):
    """Empirical law of the sampler frozen at one sub-step state.

    Rebuilds the endpoint list implied by old_degrees (order is irrelevant to
    the law) and draws `draws` independent targets without mutating anything.
    Returns per-vertex hit counts.
    """
    t = old_degrees.shape[0]
    total = 0
    for v in range(t):
        total += old_degrees[v]
    endpoints = np.empty(total, np.int32)
    pos = 0
    for v in range(t):
        for _ in range(old_degrees[v]):
            endpoints[pos] = v
            pos += 1
    counts = np.zeros(t, np.int64)
    big_m = (m + delta) / m if delta >= 0.0 else 1.0
    always = delta == 0.0
    state = np.uint64(seed)
    for _ in range(draws):
        state, target = _draw_target(
            state, endpoints, old_degrees, total, delta, big_m, always
        )
        counts[target] += 1
    return counts


@njit(cache=True, nogil=True)
def score_det_sum(n, m, delta):
    """Sum of t / S_{t,i-1}(delta) over t = 2..n, i = 1..m."""
    acc = 0.0
    for t in range(2, n + 1):
        base = t * delta + 2.0 * m * (t - 1)
        tf = np.float64(t)
        for i in range(m):
            acc += tf / (base + i)
    return acc


@njit(cache=True, nogil=True)
def loglik_det_sum(n, m, delta):
    """Sum of log S_{t,i-1}(delta) over the same index range."""
    acc = 0.0
    for t in range(2, n + 1):
        base = t * delta + 2.0 * m * (t - 1)
        for i in range(m):
            acc += np.log(base + i)
    return acc


@njit(cache=True, nogil=True)
def curv_det_sum(n, m, delta):
    """Sum of (t / S_{t,i-1}(delta))^2 over the same index range."""
    acc = 0.0
    for t in range(2, n + 1):
        base = t * delta + 2.0 * m * (t - 1)
        tf = np.float64(t)
        for i in range(m):
            r = tf / (base + i)
            acc += r * r
    return acc
