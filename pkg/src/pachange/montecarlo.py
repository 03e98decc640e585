"""Monte Carlo power and moment experiments with reproducible parallelism.

A sweep grows B independent graphs at each size n, reduces every graph to its
census, and evaluates the requested decision rules plus the raw statistics T
and Q. Replicate b of size n always uses the seed derived statelessly from
(master_seed, n, b), and every reduction is a per-slot write followed by an
ordered fold, so results are bit-identical no matter how many workers run or
how the scheduler interleaves them.

Moment estimates follow the 1/B convention (not 1/(B-1)). Power estimates
carry exact Clopper-Pearson intervals.
"""

from __future__ import annotations

import csv
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.special import ndtri
from scipy.stats import beta as beta_dist

from . import _kernels
from .degrees import census_from_degrees, p_m_value
from .estimator import ParameterBounds, mle
from .growth import ModelConfig, Scaled, resolve_tau_info
from .hypotests import (
    TestMode,
    default_a_n,
    predicted_power,
    statistic_T,
    test_phi,
    test_phi_cal,
    test_psi,
    test_psi_cal,
)
from .rng import replicate_seed

_MLE_MODES = (TestMode.PHI, TestMode.PHI_CAL)


@dataclass(frozen=True)
class ExperimentSpec:
    """Definition of one sweep.

    bounds may be omitted only when no requested rule needs the estimator;
    when present, Q moments are always accumulated alongside T.
    """

    m: int
    delta0: float
    delta1: float
    c: float
    gamma: float
    sizes: tuple
    replicates: int
    alpha: float
    tests: tuple
    bounds: Optional[ParameterBounds]
    master_seed: int
    keep_samples: bool = False

    def __post_init__(self):
        if self.replicates < 1:
            raise ValueError(f"replicates must be at least 1, got {self.replicates}")
        if len(self.sizes) == 0:
            raise ValueError("sizes must be nonempty")
        if any(b <= a for a, b in zip(self.sizes, self.sizes[1:])):
            raise ValueError(f"sizes must be strictly increasing, got {self.sizes}")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        modes = tuple(TestMode(t) for t in self.tests)
        object.__setattr__(self, "tests", modes)
        if self.bounds is None and any(t in _MLE_MODES for t in modes):
            raise ValueError("estimator-based rules require bounds")
        object.__setattr__(self, "sizes", tuple(int(n) for n in self.sizes))

    def to_json(self) -> dict:
        out = {
            "m": self.m,
            "delta0": self.delta0,
            "delta1": self.delta1,
            "c": self.c,
            "gamma": self.gamma,
            "sizes": list(self.sizes),
            "replicates": self.replicates,
            "alpha": self.alpha,
            "tests": [t.value for t in self.tests],
            "bounds": None
            if self.bounds is None
            else {"delta_min": self.bounds.delta_min, "delta_max": self.bounds.delta_max},
            "master_seed": self.master_seed,
            "keep_samples": self.keep_samples,
        }
        return out

    @classmethod
    def from_json(cls, data: dict) -> "ExperimentSpec":
        bounds = data.get("bounds")
        if bounds is not None:
            bounds = ParameterBounds(
                delta_min=float(bounds["delta_min"]),
                delta_max=float(bounds["delta_max"]),
                m=int(data["m"]),
            )
        return cls(
            m=int(data["m"]),
            delta0=float(data["delta0"]),
            delta1=float(data["delta1"]),
            c=float(data.get("c", 1.0)),
            gamma=float(data.get("gamma", 0.75)),
            sizes=tuple(int(n) for n in data["sizes"]),
            replicates=int(data["replicates"]),
            alpha=float(data.get("alpha", 0.05)),
            tests=tuple(data.get("tests", [])),
            bounds=bounds,
            master_seed=int(data["master_seed"]),
            keep_samples=bool(data.get("keep_samples", False)),
        )


@dataclass
class TestPower:
    rejections: int
    power: float
    ci_lo: float
    ci_hi: float
    predicted: Optional[float]


@dataclass
class SizeResult:
    n: int
    tests: dict
    mu_T: float
    v_T: float
    mu_Q: Optional[float]
    v_Q: Optional[float]
    boundary_hits: int
    samples: Optional[dict] = None


@dataclass
class ExperimentResult:
    spec: ExperimentSpec
    sizes: list = field(default_factory=list)

    def size(self, n: int) -> SizeResult:
        for s in self.sizes:
            if s.n == n:
                return s
        raise KeyError(f"no results for n = {n}")


def empirical_moments(samples: Sequence[float]) -> tuple[float, float]:
    """Mean and 1/B variance of a sample batch."""
    arr = np.asarray(samples, dtype=np.float64)
    if arr.size == 0:
        raise ValueError("samples must be nonempty")
    mean = float(arr.mean())
    var = float(np.mean((arr - mean) ** 2))
    return mean, var


def clopper_pearson(successes: int, trials: int, level: float = 0.95) -> tuple[float, float]:
    """Exact binomial confidence interval via Beta quantiles."""
    if not 0 <= successes <= trials:
        raise ValueError(f"need 0 <= successes <= trials, got {successes}/{trials}")
    if not 0.0 < level < 1.0:
        raise ValueError(f"level must lie in (0, 1), got {level}")
    tail = (1.0 - level) / 2.0
    lo = 0.0 if successes == 0 else float(beta_dist.ppf(tail, successes, trials - successes + 1))
    hi = 1.0 if successes == trials else float(beta_dist.isf(tail, successes + 1, trials - successes))
    return lo, hi


def qq_data(samples: Sequence[float]) -> np.ndarray:
    """Pairs (normal quantile, standardized order statistic), one per sample.

    Samples are standardized by their own mean and 1/B variance; row i pairs
    the right-tail quantile at (B - i + 0.5)/B with the i-th order statistic.
    """
    arr = np.asarray(samples, dtype=np.float64)
    if arr.size < 2:
        raise ValueError("need at least 2 samples")
    mean, var = empirical_moments(arr)
    if var <= 0.0:
        raise ValueError("samples are degenerate (zero variance)")
    z = np.sort((arr - mean) / math.sqrt(var))
    b = arr.size
    i = np.arange(1, b + 1, dtype=np.float64)
    theo = -ndtri((b - i + 0.5) / b)
    return np.column_stack([theo, z])


def _resolve_threads(threads: Optional[int]) -> int:
    if threads is not None:
        return max(1, int(threads))
    env = os.environ.get("PA_THREADS", "").strip()
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def run_experiment(
    spec: ExperimentSpec,
    threads: Optional[int] = None,
    ci_level: float = 0.95,
) -> ExperimentResult:
    """Run the sweep; bit-identical output for any worker count."""
    n_workers = _resolve_threads(threads)
    b_count = spec.replicates
    need_q = spec.bounds is not None
    result = ExperimentResult(spec=spec)

    for n in spec.sizes:
        config = ModelConfig(
            m=spec.m, delta0=spec.delta0, delta1=spec.delta1,
            changepoint=Scaled(c=spec.c, gamma=spec.gamma), n=n,
        )
        tau, _ = resolve_tau_info(config)
        t_vals = np.empty(b_count)
        q_vals = np.empty(b_count) if need_q else None
        boundary = np.zeros(b_count, dtype=bool)
        rejects = {mode: np.zeros(b_count, dtype=bool) for mode in spec.tests}

        def one_replicate(b: int, n=n, tau=tau) -> None:
            seed = replicate_seed(spec.master_seed, n, b)
            deg, _ = _kernels.grow_degrees(
                n, spec.m, tau, float(spec.delta0), float(spec.delta1),
                np.uint64(seed), False,
            )
            cens = census_from_degrees(deg, spec.m)
            t_vals[b] = statistic_T(cens, spec.delta0)
            mle_result = None
            if need_q:
                mle_result = mle(cens, spec.bounds)
                q_vals[b] = cens.n_min - n * p_m_value(mle_result.delta_hat, spec.m)
                boundary[b] = mle_result.boundary_hit
            for mode in spec.tests:
                if mode == TestMode.PSI:
                    rep = test_psi(cens, spec.delta0, spec.alpha)
                elif mode == TestMode.PSI_CAL:
                    rep = test_psi_cal(cens, spec.delta0, spec.alpha)
                elif mode == TestMode.PHI:
                    rep = test_phi(cens, spec.bounds, default_a_n, mle_result=mle_result)
                else:
                    rep = test_phi_cal(cens, spec.bounds, spec.alpha, mle_result=mle_result)
                rejects[mode][b] = rep.reject

        if n_workers == 1:
            for b in range(b_count):
                one_replicate(b)
        else:
            chunk = max(1, b_count // (n_workers * 8))
            with ThreadPoolExecutor(max_workers=n_workers) as pool:
                list(pool.map(one_replicate, range(b_count), chunksize=chunk))

        mu_t, v_t = empirical_moments(t_vals)
        mu_q, v_q = empirical_moments(q_vals) if need_q else (None, None)
        tests = {}
        for mode in spec.tests:
            rej = int(rejects[mode].sum())
            lo, hi = clopper_pearson(rej, b_count, ci_level)
            if mode in (TestMode.PSI_CAL, TestMode.PHI_CAL):
                pred = predicted_power(
                    mode, spec.delta0, spec.delta1, spec.c, spec.gamma,
                    spec.m, n, spec.alpha,
                )
            else:
                pred = None
            tests[mode] = TestPower(
                rejections=rej, power=rej / b_count, ci_lo=lo, ci_hi=hi, predicted=pred
            )
        samples = None
        if spec.keep_samples:
            samples = {"T": t_vals.copy()}
            if need_q:
                samples["Q"] = q_vals.copy()
        result.sizes.append(
            SizeResult(
                n=n, tests=tests, mu_T=mu_t, v_T=v_t, mu_Q=mu_q, v_Q=v_q,
                boundary_hits=int(boundary.sum()), samples=samples,
            )
        )
    return result


# ---------------------------------------------------------------------------
# file outputs
# ---------------------------------------------------------------------------

def write_power_csv(result: ExperimentResult, path) -> None:
    """One row per (n, test): rejection counts, power, CI, prediction.

    The trailing delta1 column keys the alternative, so files from sweeps at
    different delta1 can be concatenated (minus repeated headers) into one
    multi-curve input for the plotting frontend.
    """
    spec = result.spec
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["n", "test", "rejections", "B", "power", "ci_lo", "ci_hi",
             "predicted_power", "delta1"]
        )
        for size in result.sizes:
            for mode in spec.tests:
                tp = size.tests[mode]
                pred = "" if tp.predicted is None else repr(tp.predicted)
                writer.writerow(
                    [size.n, mode.value, tp.rejections, spec.replicates,
                     repr(tp.power), repr(tp.ci_lo), repr(tp.ci_hi), pred,
                     repr(spec.delta1)]
                )


def write_moments_csv(result: ExperimentResult, path) -> None:
    """Per-size empirical moments next to their asymptotic reference values."""
    from .hypotests import mean_shift_Q, mean_shift_T, u_var, w_var

    spec = result.spec
    w = w_var(spec.delta0, spec.m)
    wu = w + u_var(spec.delta0, spec.m)
    eta = mean_shift_T(spec.delta0, spec.delta1, spec.c, spec.m)
    alpha_shift = mean_shift_Q(spec.delta0, spec.delta1, spec.c, spec.m)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["n", "mu_T", "mu_Q", "vT_over_n", "vQ_over_n",
             "muT_over_ngamma", "muQ_over_ngamma",
             "w_asym", "w_plus_u_asym", "eta_asym", "alpha_shift_asym"]
        )
        for size in result.sizes:
            ng = size.n ** spec.gamma
            if size.mu_Q is None:
                mu_q, vq_n, muq_g = "", "", ""
            else:
                mu_q = repr(size.mu_Q)
                vq_n = repr(size.v_Q / size.n)
                muq_g = repr(size.mu_Q / ng)
            writer.writerow(
                [size.n, repr(size.mu_T), mu_q,
                 repr(size.v_T / size.n), vq_n,
                 repr(size.mu_T / ng), muq_g,
                 repr(w), repr(wu), repr(eta), repr(alpha_shift)]
            )


def write_qq_csvs(result: ExperimentResult, out_dir) -> list:
    """qq_<stat>_<n>.csv files from retained samples; returns written paths."""
    paths = []
    for size in result.sizes:
        if not size.samples:
            continue
        for stat, values in size.samples.items():
            rows = qq_data(values)
            path = os.path.join(out_dir, f"qq_{stat}_{size.n}.csv")
            with open(path, "w", newline="") as fh:
                writer = csv.writer(fh)
                writer.writerow(["theoretical", "empirical"])
                for theo, emp in rows:
                    writer.writerow([repr(float(theo)), repr(float(emp))])
            paths.append(path)
    return paths


def load_spec_json(path) -> ExperimentSpec:
    with open(path) as fh:
        return ExperimentSpec.from_json(json.load(fh))
