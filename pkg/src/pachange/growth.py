"""Preferential-attachment growth with a step change in the affinity.

The graph starts from two vertices joined by m parallel edges. At each step t
a new vertex arrives and attaches m edges one at a time; sub-step i picks an
old vertex v with probability (D_v + delta(t)) / (2(t-1)m + t*delta(t) + i-1),
where D_v counts edges already placed, including earlier sub-steps of the same
step. The new vertex is excluded from both numerator and denominator, so
self-loops cannot occur; repeated edges to the same old vertex can. delta(t)
equals delta0 up to and including the changepoint tau and delta1 after it.

Two growth paths are provided: `grow` (compiled, used everywhere) and
`grow_reference` (plain Python, same RNG stream). They produce bit-identical
degree sequences, which the test suite checks.
"""

from __future__ import annotations

import csv
import json
import math
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import numpy as np

from . import _kernels
from .rng import SplitMix64

_MAX_VERTICES = 2**31 - 2  # vertex ids are stored as int32


@dataclass(frozen=True)
class ExplicitTau:
    """Changepoint given directly as a step index."""

    tau: int


@dataclass(frozen=True)
class Scaled:
    """Late changepoint tau = n - floor(c * n^gamma)."""

    c: float
    gamma: float


Changepoint = Union[ExplicitTau, Scaled]


@dataclass(frozen=True)
class ModelConfig:
    """Full parameterization of one growth run.

    Args:
        m: edges added per new vertex.
        delta0: affinity before the changepoint; must exceed -m.
        delta1: affinity after the changepoint; must exceed -m.
        changepoint: ExplicitTau or Scaled placement of the switch.
        n: final step; the graph has n + 1 vertices and n*m edges.
    """

    m: int
    delta0: float
    delta1: float
    changepoint: Changepoint
    n: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"m must be a positive integer, got {self.m}")
        if self.n < 1:
            raise ValueError(f"n must be at least 1, got {self.n}")
        if self.n > _MAX_VERTICES:
            raise ValueError(f"n too large for 32-bit vertex ids: {self.n}")
        if self.delta0 <= -self.m:
            raise ValueError(f"delta0 must exceed -m = {-self.m}, got {self.delta0}")
        if self.delta1 <= -self.m:
            raise ValueError(f"delta1 must exceed -m = {-self.m}, got {self.delta1}")
        if isinstance(self.changepoint, Scaled):
            if not self.changepoint.c > 0:
                raise ValueError(f"c must be positive, got {self.changepoint.c}")
            if not 0 < self.changepoint.gamma < 1:
                raise ValueError(
                    f"gamma must lie in (0, 1), got {self.changepoint.gamma}"
                )

    @property
    def is_null(self) -> bool:
        """True when the run never actually changes parameter."""
        return self.delta1 == self.delta0 or resolve_tau(self) >= self.n


@dataclass
class GrowthState:
    """Evolving bookkeeping for the reference growth path.

    degrees covers the old vertices v_0..v_{t-1} only; the arriving vertex is
    appended when its step finishes. endpoint_list holds one entry per edge
    end among old vertices, so sampling a uniform element is sampling
    degree-proportionally.
    """

    m: int
    t: int
    degrees: list
    endpoint_list: list
    rng: SplitMix64

    @classmethod
    def initial(cls, config: ModelConfig, seed: int) -> "GrowthState":
        m = config.m
        endpoints = []
        for _ in range(m):
            endpoints.append(0)
            endpoints.append(1)
        return cls(m=m, t=2, degrees=[m, m], endpoint_list=endpoints, rng=SplitMix64(seed))

    def record(self, v: int) -> None:
        """Book one accepted attachment to old vertex v."""
        self.degrees[v] += 1
        self.endpoint_list.append(v)

    def finish_step(self) -> None:
        """Close step t: the new vertex enters with its m fresh edge ends."""
        self.degrees.append(self.m)
        self.endpoint_list.extend([self.t] * self.m)
        self.t += 1


def resolve_tau_info(config: ModelConfig) -> tuple[int, bool]:
    """Resolved changepoint and whether clamping to [1, n] fired."""
    if isinstance(config.changepoint, ExplicitTau):
        raw = config.changepoint.tau
    else:
        raw = config.n - math.floor(config.changepoint.c * config.n**config.changepoint.gamma)
    tau = min(max(raw, 1), config.n)
    return tau, tau != raw


def resolve_tau(config: ModelConfig) -> int:
    """Changepoint step index; warns when the scaled form had to be clamped."""
    tau, clamped = resolve_tau_info(config)
    if clamped:
        warnings.warn(
            f"changepoint clamped to {tau} for n={config.n}", RuntimeWarning, stacklevel=2
        )
    return tau


def delta_at(config: ModelConfig, t: int) -> float:
    """Affinity in force at step t (the changepoint step still uses delta0)."""
    if not 1 <= t <= config.n:
        raise ValueError(f"t must lie in [1, {config.n}], got {t}")
    tau, _ = resolve_tau_info(config)
    return config.delta0 if t <= tau else config.delta1


def attach_target(state: GrowthState, t: int, i: int, delta: float) -> int:
    """Sample the target of sub-step i of step t; advances only the RNG.

    Rejection sampling: propose a uniform endpoint (degree-proportional law),
    accept with probability (d + delta) / (big_m * d) where big_m bounds the
    ratio (d + delta)/d over all attainable degrees d >= m. Exact for every
    delta > -m.
    """
    m = state.m
    expected = 2 * (t - 1) * m + (i - 1)
    bound = len(state.endpoint_list)
    if bound != expected:
        raise ValueError(
            f"endpoint list length {bound} does not match sub-step ({t},{i})"
        )
    if sum(state.degrees) != expected:
        # the normalizer identity sum(d + delta) = t*delta + 2(t-1)m + (i-1)
        # holds exactly iff the old degrees sum to the endpoint count
        raise ValueError("degree bookkeeping is inconsistent with the step index")
    big_m = (m + delta) / m if delta >= 0.0 else 1.0
    while True:
        cand = state.endpoint_list[state.rng.rand_below(bound)]
        if delta == 0.0:
            return cand
        d = state.degrees[cand]
        if state.rng.uniform() * (big_m * d) < d + delta:
            return cand


@dataclass
class FinalGraph:
    """Degree sequence (and optionally edges) of a finished run."""

    config: ModelConfig
    degrees: np.ndarray
    edges: Optional[np.ndarray]
    seed: int


def grow(config: ModelConfig, seed: int, *, edges: bool = False) -> FinalGraph:
    """Run the compiled growth process.

    Args:
        config: model parameters.
        seed: 64-bit seed; equal (config, seed) pairs give bit-identical output.
        edges: also record the n*m edge list as (smaller id, larger id) rows.

    Returns:
        FinalGraph with n + 1 degrees summing to 2*n*m.
    """
    tau, _ = resolve_tau_info(config)
    deg, edge_arr = _kernels.grow_degrees(
        config.n, config.m, tau, float(config.delta0), float(config.delta1),
        np.uint64(seed & ((1 << 64) - 1)), edges,
    )
    return FinalGraph(config=config, degrees=deg, edges=edge_arr if edges else None, seed=seed)


def grow_reference(config: ModelConfig, seed: int, *, edges: bool = False) -> FinalGraph:
    """Pure Python growth, same stream as `grow`; for validation and reading."""
    state = GrowthState.initial(config, seed)
    edge_rows = [(0, 1)] * config.m if edges else None
    for t in range(2, config.n + 1):
        delta = delta_at(config, t)
        for i in range(1, config.m + 1):
            v = attach_target(state, t, i, delta)
            state.record(v)
            if edges:
                edge_rows.append((v, t))
        state.finish_step()
    deg = np.asarray(state.degrees, dtype=np.int64)
    edge_arr = np.asarray(edge_rows, dtype=np.int32) if edges else None
    return FinalGraph(config=config, degrees=deg, edges=edge_arr, seed=seed)


def attach_distribution_oracle(old_degrees, t: int, i: int, delta: float) -> np.ndarray:
    """Exact attachment law by direct normalization of degree + delta weights.

    Reference implementation used to validate the fast sampler and to
    enumerate small instances exactly.
    """
    d = np.asarray(old_degrees, dtype=np.float64)
    if d.ndim != 1 or d.shape[0] != t:
        raise ValueError(f"expected {t} old-vertex degrees, got shape {d.shape}")
    weights = d + delta
    if np.any(weights <= 0):
        raise ValueError("delta must exceed minus the smallest degree")
    return weights / weights.sum()


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def config_summary(config: ModelConfig, seed: Optional[int] = None) -> dict:
    """JSON-ready echo of a configuration with its resolved changepoint."""
    tau, clamped = resolve_tau_info(config)
    if isinstance(config.changepoint, Scaled):
        cp = {"kind": "scaled", "c": config.changepoint.c, "gamma": config.changepoint.gamma}
    else:
        cp = {"kind": "explicit", "tau": config.changepoint.tau}
    out = {
        "n": config.n,
        "m": config.m,
        "delta0": config.delta0,
        "delta1": config.delta1,
        "changepoint": cp,
        "tau": tau,
        "clamped": clamped,
    }
    if seed is not None:
        out["seed"] = seed
    return out


def save_degrees_csv(graph: FinalGraph, path) -> None:
    """Write `vertex,degree` rows, one per vertex."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["vertex", "degree"])
        for v, d in enumerate(graph.degrees):
            writer.writerow([v, int(d)])


def load_degrees_csv(path) -> np.ndarray:
    """Read a degree file back into an int64 vector ordered by vertex id."""
    path = Path(path)
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header[:2]] != ["vertex", "degree"]:
            raise ValueError(f"{path}: expected header 'vertex,degree'")
        rows = [(int(r[0]), int(r[1])) for r in reader if r]
    degrees = np.zeros(len(rows), dtype=np.int64)
    for v, d in rows:
        if not 0 <= v < len(rows):
            raise ValueError(f"{path}: vertex id {v} out of range")
        degrees[v] = d
    return degrees


def save_edges_csv(graph: FinalGraph, path) -> None:
    """Write `u,v` rows; requires the graph to have been grown with edges."""
    if graph.edges is None:
        raise ValueError("graph was grown without edge recording")
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["u", "v"])
        for u, v in graph.edges:
            writer.writerow([int(u), int(v)])


def save_config_json(config: ModelConfig, seed: int, path) -> None:
    with open(path, "w") as fh:
        json.dump(config_summary(config, seed), fh, indent=2)
        fh.write("\n")
