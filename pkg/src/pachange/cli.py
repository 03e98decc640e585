"""Command-line entry point.

Subcommands: generate, census, estimate, test, constants, experiment.
Reports go to stdout as JSON (floats serialized in round-trip form), bulk
data goes to CSV files under --output-dir. Exit codes distinguish failure
classes: 0 ok, 2 usage, 3 file IO, 4 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .degrees import (
    census_from_degrees,
    load_census_csv,
    p_m_value,
    save_census_csv,
)
from .estimator import ParameterBounds, log_likelihood, mle
from .growth import (
    ExplicitTau,
    ModelConfig,
    Scaled,
    config_summary,
    grow,
    load_degrees_csv,
    save_config_json,
    save_degrees_csv,
    save_edges_csv,
)
from .hypotests import (
    TestMode,
    b_cov,
    mean_shift_Q,
    mean_shift_T,
    test_phi,
    test_phi_cal,
    test_psi,
    test_psi_cal,
    u_var,
    v_var,
    w_var,
)
from .montecarlo import (
    load_spec_json,
    run_experiment,
    write_moments_csv,
    write_power_csv,
    write_qq_csvs,
)

_USAGE, _IO, _NUMERIC = 2, 3, 4

_MODE_FLAGS = {
    "psi": TestMode.PSI,
    "phi": TestMode.PHI,
    "psi-cal": TestMode.PSI_CAL,
    "phi-cal": TestMode.PHI_CAL,
}


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _emit(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def _ensure_outdir(path: str):
    try:
        os.makedirs(path, exist_ok=True)
    except OSError as exc:
        return _fail(_IO, f"cannot create output dir {path}: {exc}")
    return None


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=None, help="RNG seed")
    parser.add_argument("--threads", type=int, default=None, help="worker count")
    parser.add_argument("--output-dir", default=".", help="directory for output files")


def cmd_generate(args) -> int:
    if args.tau is not None and (args.c is not None or args.gamma is not None):
        return _fail(_USAGE, "--tau cannot be combined with --c/--gamma")
    delta1 = args.delta0 if args.delta1 is None else args.delta1
    if args.tau is not None:
        changepoint = ExplicitTau(tau=args.tau)
    else:
        changepoint = Scaled(
            c=1.0 if args.c is None else args.c,
            gamma=0.75 if args.gamma is None else args.gamma,
        )
    try:
        config = ModelConfig(
            m=args.m, delta0=args.delta0, delta1=delta1,
            changepoint=changepoint, n=args.n,
        )
    except ValueError as exc:
        return _fail(_USAGE, str(exc))
    err = _ensure_outdir(args.output_dir)
    if err is not None:
        return err

    seed = 0 if args.seed is None else args.seed
    graph = grow(config, seed, edges=args.edges)
    deg_path = os.path.join(args.output_dir, "degrees.csv")
    cfg_path = os.path.join(args.output_dir, "config.json")
    try:
        save_degrees_csv(graph, deg_path)
        save_config_json(config, seed, cfg_path)
        files = {"degrees": deg_path, "config": cfg_path}
        if args.edges:
            edge_path = os.path.join(args.output_dir, "edges.csv")
            save_edges_csv(graph, edge_path)
            files["edges"] = edge_path
    except OSError as exc:
        return _fail(_IO, str(exc))
    summary = config_summary(config, seed)
    summary["files"] = files
    _emit(summary)
    return 0


def cmd_census(args) -> int:
    try:
        degrees = load_degrees_csv(args.degrees)
    except OSError as exc:
        return _fail(_IO, str(exc))
    except ValueError as exc:
        return _fail(_IO, f"{args.degrees}: {exc}")
    err = _ensure_outdir(args.output_dir)
    if err is not None:
        return err
    m = int(degrees.min()) if args.m is None else args.m
    try:
        cens = census_from_degrees(degrees, m)
    except ValueError as exc:
        return _fail(_NUMERIC, str(exc))
    out_path = os.path.join(args.output_dir, "census.csv")
    try:
        save_census_csv(cens, out_path)
    except OSError as exc:
        return _fail(_IO, str(exc))
    _emit({"n": cens.n, "m": cens.m, "n_min": cens.n_min,
           "rows": len(cens.ks), "census": out_path})
    return 0


def _load_census(path):
    try:
        return load_census_csv(path), None
    except OSError as exc:
        return None, _fail(_IO, str(exc))
    except ValueError as exc:
        return None, _fail(_IO, f"{path}: {exc}")


def cmd_estimate(args) -> int:
    cens, err = _load_census(args.census)
    if err is not None:
        return err
    try:
        bounds = ParameterBounds(args.delta_min, args.delta_max, cens.m)
    except ValueError as exc:
        return _fail(_USAGE, str(exc))
    try:
        result = mle(cens, bounds)
        ll = log_likelihood(cens, result.delta_hat)
    except (ValueError, RuntimeError) as exc:
        return _fail(_NUMERIC, str(exc))
    _emit({
        "delta_hat": result.delta_hat,
        "score_at_hat": result.score_at_hat,
        "log_likelihood": ll,
        "iterations": result.iterations,
        "boundary_hit": result.boundary_hit,
        "n": cens.n,
        "m": cens.m,
    })
    return 0


def cmd_test(args) -> int:
    mode = _MODE_FLAGS[args.mode]
    known = mode in (TestMode.PSI, TestMode.PSI_CAL)
    if known and args.delta0 is None:
        return _fail(_USAGE, f"mode {args.mode} requires --delta0")
    if not known and (args.delta_min is None or args.delta_max is None):
        return _fail(_USAGE, f"mode {args.mode} requires --delta-min and --delta-max")
    cens, err = _load_census(args.census)
    if err is not None:
        return err
    try:
        if mode == TestMode.PSI:
            report = test_psi(cens, args.delta0, args.alpha)
        elif mode == TestMode.PSI_CAL:
            report = test_psi_cal(cens, args.delta0, args.alpha)
        else:
            bounds = ParameterBounds(args.delta_min, args.delta_max, cens.m)
            if mode == TestMode.PHI:
                report = test_phi(cens, bounds)
            else:
                report = test_phi_cal(cens, bounds, args.alpha)
    except ValueError as exc:
        return _fail(_USAGE, str(exc))
    except RuntimeError as exc:
        return _fail(_NUMERIC, str(exc))
    payload = report.to_dict()
    payload["m"] = cens.m
    payload["n"] = cens.n
    _emit(payload)
    return 0


def cmd_constants(args) -> int:
    d0, m = args.delta0, args.m
    d1 = d0 if args.delta1 is None else args.delta1
    try:
        w = w_var(d0, m)
        v = v_var(d0, m)
        u = u_var(d0, m)
        payload = {
            "p_m": p_m_value(d0, m),
            "w": w,
            "v": v,
            "u": u,
            "w_plus_u": w + u,
            "b": b_cov(d0, m),
            "eta": mean_shift_T(d0, d1, args.c, m),
            "alpha_shift": mean_shift_Q(d0, d1, args.c, m),
            "inputs": {"delta0": d0, "delta1": d1, "c": args.c,
                       "gamma": args.gamma, "m": m},
        }
    except (ValueError, RuntimeError) as exc:
        return _fail(_NUMERIC, str(exc))
    _emit(payload)
    return 0


def cmd_experiment(args) -> int:
    try:
        spec = load_spec_json(args.spec)
    except OSError as exc:
        return _fail(_IO, str(exc))
    except (json.JSONDecodeError, KeyError) as exc:
        return _fail(_IO, f"{args.spec}: {exc}")
    except ValueError as exc:
        return _fail(_USAGE, f"{args.spec}: {exc}")
    if args.seed is not None:
        spec = spec.__class__.from_json({**spec.to_json(), "master_seed": args.seed})
    err = _ensure_outdir(args.output_dir)
    if err is not None:
        return err
    try:
        result = run_experiment(spec, threads=args.threads)
    except (ValueError, RuntimeError) as exc:
        return _fail(_NUMERIC, str(exc))
    power_path = os.path.join(args.output_dir, "power.csv")
    moments_path = os.path.join(args.output_dir, "moments.csv")
    try:
        write_power_csv(result, power_path)
        write_moments_csv(result, moments_path)
        qq_paths = write_qq_csvs(result, args.output_dir)
    except OSError as exc:
        return _fail(_IO, str(exc))
    summary = {
        "power_csv": power_path,
        "moments_csv": moments_path,
        "qq_csv": qq_paths,
        "sizes": [
            {
                "n": s.n,
                "mu_T": s.mu_T,
                "boundary_hits": s.boundary_hits,
                "tests": {mode.value: {"power": tp.power, "rejections": tp.rejections}
                          for mode, tp in s.tests.items()},
            }
            for s in result.sizes
        ],
    }
    _emit(summary)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pachange",
        description="preferential-attachment changepoint toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="grow a graph and write its degree file")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--m", type=int, required=True)
    gen.add_argument("--delta0", type=float, required=True)
    gen.add_argument("--delta1", type=float, default=None)
    gen.add_argument("--c", type=float, default=None)
    gen.add_argument("--gamma", type=float, default=None)
    gen.add_argument("--tau", type=int, default=None, help="explicit changepoint step")
    gen.add_argument("--edges", action="store_true", help="also write the edge list")
    _add_common(gen)
    gen.set_defaults(func=cmd_generate)

    cen = sub.add_parser("census", help="reduce a degree file to its census")
    cen.add_argument("--degrees", required=True)
    cen.add_argument("--m", type=int, default=None, help="override inferred edge count")
    _add_common(cen)
    cen.set_defaults(func=cmd_census)

    est = sub.add_parser("estimate", help="maximum-likelihood fit from a census")
    est.add_argument("--census", required=True)
    est.add_argument("--delta-min", type=float, required=True)
    est.add_argument("--delta-max", type=float, required=True)
    _add_common(est)
    est.set_defaults(func=cmd_estimate)

    tst = sub.add_parser("test", help="run a decision rule on a census")
    tst.add_argument("--census", required=True)
    tst.add_argument("--mode", choices=sorted(_MODE_FLAGS), required=True)
    tst.add_argument("--alpha", type=float, default=0.05)
    tst.add_argument("--delta0", type=float, default=None)
    tst.add_argument("--delta-min", type=float, default=None)
    tst.add_argument("--delta-max", type=float, default=None)
    _add_common(tst)
    tst.set_defaults(func=cmd_test)

    con = sub.add_parser("constants", help="print limit constants as JSON")
    con.add_argument("--delta0", type=float, required=True)
    con.add_argument("--delta1", type=float, default=None)
    con.add_argument("--c", type=float, default=1.0)
    con.add_argument("--gamma", type=float, default=0.75)
    con.add_argument("--m", type=int, required=True)
    _add_common(con)
    con.set_defaults(func=cmd_constants)

    exp = sub.add_parser("experiment", help="run a Monte Carlo sweep from a spec file")
    exp.add_argument("--spec", required=True, help="experiment spec JSON")
    _add_common(exp)
    exp.set_defaults(func=cmd_experiment)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
