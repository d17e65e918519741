"""Command-line interface.

Subcommands: score, infer, simulate-limit, test-crs, reproduce.  Every
command is deterministic given the input file, flags and seed; the worker
count never changes output bytes.  Exit codes: 0 success, 2 usage/input
error, 3 numerical degeneracy.
"""

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import dea, experiments, inference, io, limit, scenarios
from .errors import DEGENERACY_ERRORS, USAGE_ERRORS

SCHEMA_VERSION = 1
SEED_ENV_VAR = "FRONTIER_CONE_SEED"


def _vector(text):
    try:
        values = [float(v) for v in text.split(",") if v.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated float list: {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty vector")
    return np.array(values)


def _nonneg_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def _resolve_seed(args):
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            seed = int(env)
        except ValueError:
            raise ValueError(f"{SEED_ENV_VAR} must be an integer, got {env!r}")
        if seed < 0:
            raise ValueError(f"{SEED_ENV_VAR} must be nonnegative")
        return seed
    return 0


def _jsonable(value):
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return value if math.isfinite(value) else None
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.bool_,)):
        return bool(value)
    return value


def _emit(report, out_dir, extra_files=()):
    text = json.dumps(_jsonable(report), indent=2)
    print(text)
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(text + "\n", encoding="utf-8")
        for name, rows in extra_files:
            _write_csv(out / name, rows)


def _write_csv(path, rows):
    with open(path, "w", newline="", encoding="utf-8") as handle:
        for row in rows:
            handle.write(",".join(_csv_cell(v) for v in row) + "\n")


def _csv_cell(value):
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def _add_common(parser, with_input=True, with_point=True):
    if with_input:
        parser.add_argument("--input", required=True, help="observation CSV (x1..xp,y1..yq)")
    if with_point:
        parser.add_argument("--x0", type=_vector, required=True, help="evaluation inputs a,b,...")
        parser.add_argument("--y0", type=_vector, required=True, help="evaluation outputs c,d,...")
    parser.add_argument("--seed", type=_nonneg_int, default=None,
                        help=f"RNG seed (default: ${SEED_ENV_VAR} or 0)")
    parser.add_argument("--workers", type=int, default=1, help="parallel workers")
    parser.add_argument("--out", default=None, help="directory for report.json and tables")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="frontier-cone",
        description="Conical-hull efficiency scores with simulated-limit bias correction.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("score", help="CRS and VRS scores at an evaluation point")
    _add_common(p)
    p.add_argument("--per-unit", action="store_true", help="also score every observation")

    p = sub.add_parser("infer", help="bias-corrected score with confidence interval")
    _add_common(p)
    p.add_argument("--eps", type=float, default=None, help="band radius (default: data-driven)")
    p.add_argument("--delta", type=float, default=None, help="fit radius (default: eps)")
    p.add_argument("--B", type=int, default=inference.DEFAULT_B, help="limit replicates")
    p.add_argument("--alpha", type=float, default=inference.DEFAULT_ALPHA, help="CI level")

    p = sub.add_parser("simulate-limit", help="simulate limit-law hull heights")
    _add_common(p, with_input=False, with_point=False)
    p.add_argument("--region", choices=(limit.PARABOLOID, limit.RECTANGLE), required=True)
    p.add_argument("--dim", type=int, required=True, help="effective input dimension")
    p.add_argument("--scale", type=float, required=True, help="region scale constant")
    p.add_argument("--n", type=int, required=True, help="points per replicate")
    p.add_argument("--B", type=int, default=inference.DEFAULT_B, help="replicates")

    p = sub.add_parser("test-crs", help="CRS-vs-VRS statistic at the data points")
    _add_common(p, with_point=False)
    p.add_argument("--pvalue", action="store_true", help="attach subsampling p-value")
    p.add_argument("--subsample-draws", type=int, default=500)

    p = sub.add_parser("reproduce", help="run a named reference experiment")
    p.add_argument("experiment", choices=("table1", "fig23", "rate"))
    _add_common(p, with_input=False, with_point=False)
    p.add_argument("--reps", type=int, default=None, help="Monte Carlo replications")
    p.add_argument("--n", type=int, default=None, help="restrict table1 to one sample size")
    p.add_argument("--eps", type=float, default=None, help="restrict table1 to one bandwidth")
    p.add_argument("--B", type=int, default=inference.DEFAULT_B, help="limit replicates per rep")
    p.add_argument("--draws", type=int, default=500, help="fig23 draws per side")
    p.add_argument("--n-grid", type=_vector, default=None, help="rate experiment sizes")
    return parser


def _cmd_score(args, seed):
    sample = io.read_observations(args.input)
    at = dea.EvalPoint(x0=args.x0, y0=args.y0)
    crs = dea.crs_score(sample, at)
    vrs = dea.vrs_score(sample, at)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "score",
        "seed": seed,
        "n": sample.n, "p": sample.p, "q": sample.q,
        "x0": args.x0, "y0": args.y0,
        "crs": {"lambda_hat": crs.lambda_hat, "feasible": crs.feasible},
        "vrs": {"lambda_hat": vrs.lambda_hat, "feasible": vrs.feasible},
    }
    if args.per_unit:
        units = []
        for i in range(sample.n):
            own = dea.EvalPoint(x0=sample.inputs[i], y0=sample.outputs[i])
            units.append({
                "crs": dea.crs_score(sample, own).lambda_hat,
                "vrs": dea.vrs_score(sample, own).lambda_hat,
            })
        report["per_observation"] = units
    _emit(report, args.out)
    return 0


def _cmd_infer(args, seed):
    sample = io.read_observations(args.input)
    at = dea.EvalPoint(x0=args.x0, y0=args.y0)
    rep = inference.infer(sample, at, epsilon=args.eps, delta=args.delta, b=args.B,
                          alpha=args.alpha, seed=seed, workers=args.workers)
    res = rep.result
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "infer",
        "seed": seed,
        "n": rep.n, "p": rep.p, "q": rep.q, "p_eff": rep.p_eff,
        "x0": args.x0, "y0": args.y0,
        "epsilon": rep.constants.epsilon, "delta": rep.constants.delta,
        "b": res.b, "alpha": res.alpha,
        "raw_score": res.raw,
        "theta_hat": rep.constants.theta_hat,
        "det_term": rep.constants.det_term,
        "kappa_hat": rep.constants.kappa_hat,
        "n_eps": rep.constants.n_eps,
        "region_kind": rep.region_kind,
        "rectangle_fallback": rep.rectangle_fallback,
        "degenerate_theta": rep.degenerate_theta,
        "invalid_count": rep.invalid_count,
        "bias_corrected": res.bias_corrected,
        "ci_low": res.ci_low,
        "ci_high": res.ci_high,
        "rate_exponent": res.rate_exponent,
    }
    _emit(report, args.out)
    return 0


def _cmd_simulate_limit(args, seed):
    spec = limit.RegionSpec(kind=args.region, dim=args.dim, scale=args.scale, n=args.n)
    reps = limit.simulate_replicates(spec, args.B, seed, workers=args.workers)
    values = reps.values
    shares = (0.0, 0.025, 0.25, 0.5, 0.75, 0.975, 1.0)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "simulate-limit",
        "seed": seed,
        "region": {"kind": spec.kind, "dim": spec.dim, "scale": spec.scale, "n": spec.n,
                   "volume": spec.volume()},
        "b": int(values.size),
        "invalid_count": reps.invalid_count,
        "mean": float(values.mean()),
        "quantiles": {repr(s): float(np.quantile(values, s)) for s in shares},
    }
    rows = [("replicate", "value")] + [(i, v) for i, v in enumerate(values)]
    _emit(report, args.out, extra_files=[("replicates.csv", rows)])
    return 0


def _cmd_test_crs(args, seed):
    sample = io.read_observations(args.input)
    draws = args.subsample_draws if args.pvalue else 0
    result = inference.crs_test(sample, pvalue_draws=draws, seed=seed, workers=args.workers)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "test-crs",
        "seed": seed,
        "n": sample.n, "p": sample.p, "q": sample.q,
        "rho_n": result.rho_n,
        "per_unit_ratios": result.per_unit_ratios,
        "p_value": result.p_value,
        "subsample_size": result.subsample_size,
        "p_value_method": "m-out-of-n subsampling (experimental)" if args.pvalue else None,
    }
    _emit(report, args.out)
    return 0


def _cmd_reproduce(args, seed):
    if args.experiment == "table1":
        reps = args.reps if args.reps is not None else 100
        n_values = (args.n,) if args.n is not None else (100, 400)
        eps_values = (args.eps,) if args.eps is not None else None
        cells = experiments.run_table1(n_values=n_values, eps_values=eps_values,
                                       reps=reps, b=args.B, seed=seed, workers=args.workers)
        rows = [("n", "epsilon", "reps", "ratio", "median_sq_raw", "median_sq_corrected",
                 "rectangle_fallbacks", "degenerate_thetas")]
        rows += [(c.n, c.epsilon, c.reps, c.ratio, c.median_sq_raw, c.median_sq_corrected,
                  c.rectangle_fallbacks, c.degenerate_thetas) for c in cells]
        report = {
            "schema_version": SCHEMA_VERSION, "command": "reproduce", "experiment": "table1",
            "seed": seed, "b": args.B,
            "cells": [{"n": c.n, "epsilon": c.epsilon, "reps": c.reps, "ratio": c.ratio,
                       "median_sq_raw": c.median_sq_raw,
                       "median_sq_corrected": c.median_sq_corrected,
                       "rectangle_fallbacks": c.rectangle_fallbacks,
                       "degenerate_thetas": c.degenerate_thetas} for c in cells],
        }
        _emit(report, args.out, extra_files=[("table1.csv", rows)])
    elif args.experiment == "fig23":
        draws = args.reps if args.reps is not None else args.draws
        cells = experiments.run_fig23(draws=draws, seed=seed, workers=args.workers)
        files = []
        for cell in cells:
            comp = cell.comparison
            rows = [("grid", "ecdf_estimate_errors", "ecdf_simulated_limit")]
            rows += list(zip(comp.grid, comp.ecdf_first, comp.ecdf_second))
            files.append((f"ecdf_n{cell.n}.csv", rows))
        report = {
            "schema_version": SCHEMA_VERSION, "command": "reproduce", "experiment": "fig23",
            "seed": seed,
            "cells": [{"n": c.n, "draws": c.draws, "ks_distance": c.ks_distance}
                      for c in cells],
        }
        _emit(report, args.out, extra_files=files)
    else:
        reps = args.reps if args.reps is not None else 50
        grid = tuple(int(v) for v in args.n_grid) if args.n_grid is not None \
            else (100, 200, 400, 800)
        cells = experiments.run_rate(n_grid=grid, reps=reps, seed=seed, workers=args.workers)
        rows = [("kind", "slope", "expected", "n", "median_abs_error")]
        for cell in cells:
            for n, med in zip(cell.n_grid, cell.medians):
                rows.append((cell.kind, cell.slope, cell.expected, n, med))
        report = {
            "schema_version": SCHEMA_VERSION, "command": "reproduce", "experiment": "rate",
            "seed": seed,
            "cells": [{"kind": c.kind, "slope": c.slope, "expected": c.expected,
                       "n_grid": list(c.n_grid), "medians": c.medians} for c in cells],
        }
        _emit(report, args.out, extra_files=[("rate.csv", rows)])
    return 0


_DISPATCH = {
    "score": _cmd_score,
    "infer": _cmd_infer,
    "simulate-limit": _cmd_simulate_limit,
    "test-crs": _cmd_test_crs,
    "reproduce": _cmd_reproduce,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        seed = _resolve_seed(args)
        return _DISPATCH[args.command](args, seed)
    except USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DEGENERACY_ERRORS as exc:
        print(f"degeneracy: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
