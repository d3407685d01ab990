"""Command-line front-end.

Exit codes are a stable scripting contract: 0 success, 2 input/parse error,
3 degenerate or empty direction set, 4 too many failed experiment runs.
All numeric CSV output uses 17 significant digits so values round-trip
exactly, and every command is a deterministic function of its inputs.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

import numpy as np

from .comparators import fd_batch, id_batch
from .depth import deepest_index, depth_ranks, rpd_batch
from .directions import build_pool, filter_pool, tune_beta
from .errors import (CurveFileError, DegenerateSampleError, DomainError,
                     EmptyDirectionSetError, StructuralError)
from .io import read_sample
from .simulation import (ExperimentConfig, ExperimentFailureError,
                         degeneracy_table, run_experiment)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DEGENERATE = 3
EXIT_EXPERIMENT = 4


def _fail(code: int, msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return code


def _regularized(sample, args):
    pool = build_pool(sample, args.M, seed=args.seed)
    beta = args.beta if args.beta is not None else tune_beta(pool, args.u)
    return filter_pool(pool, beta), beta


def cmd_depth(args) -> int:
    sample = read_sample(args.sample_file, args.grid_header)
    queries = read_sample(args.query_file, args.grid_header)
    reg, beta = _regularized(sample, args)
    depths = rpd_batch(queries, reg)
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["query_index", "depth", "worst_direction", "beta"])
        for i, d in enumerate(depths):
            w.writerow([i, "%.17g" % d.value, d.worst_direction,
                        "%.17g" % beta])
    print(f"wrote {len(depths)} depths to {args.out} (beta={beta:.17g})")
    return EXIT_OK


def cmd_outliers(args) -> int:
    sample = read_sample(args.sample_file, args.grid_header)
    if args.notion == "rpd":
        reg, _ = _regularized(sample, args)
        vals = np.array([d.value for d in rpd_batch(sample, reg)])
    elif args.notion == "fd":
        vals = fd_batch(sample, sample)
    else:
        vals = id_batch(sample, sample)
    ranks = depth_ranks(vals)
    order = np.argsort(vals, kind="stable")
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["curve_index", "depth", "rank"])
        for i in order:
            w.writerow([int(i), "%.17g" % vals[i], "%.17g" % ranks[i]])
    print(f"wrote {sample.n} ranked curves to {args.out}")
    return EXIT_OK


def cmd_median(args) -> int:
    sample = read_sample(args.sample_file, args.grid_header)
    reg, _ = _regularized(sample, args)
    idx = deepest_index(sample, reg)
    print(idx)
    print(",".join("%.17g" % x for x in sample.matrix[idx]))
    return EXIT_OK


def cmd_table1(args) -> int:
    with open(args.config_file) as fh:
        cfg = ExperimentConfig.from_json(fh.read())
    report = run_experiment(cfg, workers=args.workers)
    os.makedirs(args.out_dir, exist_ok=True)
    jpath = os.path.join(args.out_dir, "report.json")
    cpath = os.path.join(args.out_dir, "report.csv")
    with open(jpath, "w") as fh:
        fh.write(report.to_json())
    with open(cpath, "w") as fh:
        fh.write(report.to_csv())
    for key, entry in report.summary().items():
        if entry["mean"] is None:
            print(f"{key}: undefined ({entry.get('note', '')})")
        else:
            print(f"{key}: mean rank {entry['mean']:.4f} (sd {entry['sd']:.4f})")
    if report.failures:
        print(f"{len(report.failures)} run cells failed (excluded)")
    print(f"wrote {jpath} and {cpath}")
    return EXIT_OK


def cmd_degeneracy(args) -> int:
    schedule = [int(m) for m in args.M_schedule.split(",")]
    rows = degeneracy_table(dim=args.dim, n=args.n, M_schedule=schedule,
                            seed=args.seed)
    print("M,min_unregularized_depth,min_regularized_depth,beta,floor_respected")
    for row in rows:
        print("%d,%.17g,%.17g,%.17g,%s" % (
            row["M"], row["min_unregularized_depth"],
            row["min_regularized_depth"], row["beta"],
            row["floor_respected"]))
    return EXIT_OK


def _add_pool_flags(p):
    p.add_argument("--u", type=float, default=0.01,
                   help="quantile level for the MAD threshold (default 0.01)")
    p.add_argument("--M", type=int, default=10000,
                   help="number of random directions (default 10000)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--beta", type=float, default=None,
                   help="raw MAD threshold, overriding --u")
    p.add_argument("--grid-header", action="store_true",
                   help="first CSV row holds the grid abscissae")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="rpdepth",
        description="Regularized projection depth for discretized curves")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("depth", help="depth of query curves w.r.t. a sample")
    p.add_argument("sample_file")
    p.add_argument("query_file")
    p.add_argument("--out", required=True)
    _add_pool_flags(p)
    p.set_defaults(func=cmd_depth)

    p = sub.add_parser("outliers", help="rank a sample by depth")
    p.add_argument("sample_file")
    p.add_argument("--notion", choices=["rpd", "fd", "id"], default="rpd")
    p.add_argument("--out", required=True)
    _add_pool_flags(p)
    p.set_defaults(func=cmd_outliers)

    p = sub.add_parser("median", help="deepest sample curve")
    p.add_argument("sample_file")
    _add_pool_flags(p)
    p.set_defaults(func=cmd_median)

    p = sub.add_parser("table1", help="run the shape-outlier rank study")
    p.add_argument("config_file")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("degeneracy",
                       help="minimum depth vs. direction count, with and "
                            "without the MAD filter")
    p.add_argument("--dim", type=int, default=101)
    p.add_argument("--n", type=int, default=500)
    p.add_argument("--M-schedule", default="1000,10000,100000,200000")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_degeneracy)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CurveFileError, StructuralError, DomainError, OSError,
            json.JSONDecodeError, ValueError) as e:
        return _fail(EXIT_INPUT, str(e))
    except (EmptyDirectionSetError, DegenerateSampleError) as e:
        return _fail(EXIT_DEGENERATE, str(e))
    except ExperimentFailureError as e:
        return _fail(EXIT_EXPERIMENT, str(e))


if __name__ == "__main__":
    sys.exit(main())
