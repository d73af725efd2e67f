"""Command-line driver.

Exit codes: 0 no drift (or success), 3 drift detected, 1 error, 2 usage.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import bench, datagen, fileio
from .detector import Detector
from .partitioner import DEFAULT_BETA, fit_partition

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_DRIFT = 3


def theta_grid(theta_max: float, theta_step: float) -> np.ndarray:
    if theta_step <= 0 or theta_max < 0:
        raise ValueError("--theta-step must be > 0 and --theta-max >= 0")
    count = int(np.floor(theta_max / theta_step + 1e-9)) + 1
    return np.round(np.arange(count) * theta_step, 10)


def cmd_gen(args) -> int:
    spec = datagen.GeneratorSpec(args.family, args.n, seed=args.seed, drifted=args.drift,
                                 delta=args.delta, extra_dims=args.extra_dims)
    fileio.write_csv(datagen.gen_dataset(spec), args.out)
    return EXIT_OK


def cmd_fit(args) -> int:
    train = fileio.parse_csv(args.train)
    model = fit_partition(train, beta=args.beta, theta_grid=theta_grid(args.theta_max, args.theta_step),
                          seed=args.seed, max_samples=args.max_samples)
    fileio.save_model(model, args.out)
    print(f"K={model.k} theta={model.theta:g} fallback={str(model.fallback).lower()}")
    return EXIT_OK


def cmd_detect(args) -> int:
    model = fileio.load_model(args.model)
    test = fileio.parse_csv(args.test)
    if test.shape[1] != model.d:
        raise ValueError(f"dimension mismatch: model expects {model.d} columns, {args.test} has {test.shape[1]}")
    report = Detector(model).detect(test, args.alpha)
    if args.json:
        print(fileio.report_json(report))
    else:
        print(f"drift: {'yes' if report.drift else 'no'}")
        print(f"p-value: {report.p_value!r}")
        print(f"statistic: {report.statistic!r}")
        print(f"df: {report.df}")
        print(f"train counts: {' '.join(map(str, report.train_counts))}")
        print(f"test counts: {' '.join(map(str, report.test_counts))}")
        if report.warnings:
            print(f"warnings: {', '.join(report.warnings)}")
    return EXIT_DRIFT if report.drift else EXIT_OK


def cmd_bench(args) -> int:
    cfg = bench.TrialConfig(args.family, delta=args.delta, n_train=args.n_train, n_test=args.n_test,
                            n_stationary_sets=args.sets, n_drift_sets=args.sets, repetitions=args.reps,
                            alpha=args.alpha, beta=args.beta, base_seed=args.seed)
    result = bench.run_trial(cfg, n_jobs=args.jobs)
    fileio.write_results_csv([result], args.out)
    print(result.summary())
    return EXIT_OK


def cmd_diag(args) -> int:
    seeds = range(args.seed, args.seed + args.n_seeds)
    ei, plain = bench.run_partition_diagnostic(args.variant, k=args.k, seeds=seeds)
    print(f"{args.variant} K={args.k} seeds={args.n_seeds}: "
          f"EI-kMeans intensity std {ei:.4f}  kMeans intensity std {plain:.4f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eikmeans", description="Equal-intensity k-means drift detection")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a synthetic data set as CSV")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--drift", action="store_true")
    p.add_argument("--delta", type=float)
    p.add_argument("--extra-dims", type=int, default=0)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("fit", help="fit a histogram to training CSV and save the model")
    p.add_argument("--train", required=True)
    p.add_argument("--beta", type=int, default=DEFAULT_BETA)
    p.add_argument("--theta-max", type=float, default=1.5)
    p.add_argument("--theta-step", type=float, default=0.05)
    p.add_argument("--max-samples", type=int)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("detect", help="test a CSV window against a saved model")
    p.add_argument("--model", required=True)
    p.add_argument("--test", required=True)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("bench", help="estimate Type-I/Type-II error rates")
    p.add_argument("--family", required=True)
    p.add_argument("--delta", type=float)
    p.add_argument("--n-train", type=int, default=2000)
    p.add_argument("--n-test", type=int, default=200)
    p.add_argument("--sets", type=int, default=250)
    p.add_argument("--reps", type=int, default=10)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--beta", type=int, default=DEFAULT_BETA)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("diag", help="compare partition intensity std-dev with plain k-means")
    p.add_argument("--variant", required=True, choices=sorted(datagen.EXPERIMENT1_SIZES))
    p.add_argument("--k", type=int, default=9)
    p.add_argument("--n-seeds", type=int, default=20)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_diag)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"eikmeans {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
