"""Command line entry point: ``depcov <command> ...``.

Every command prints one JSON document on stdout. Failures print a single
``code: message`` line on stderr and exit with status 1.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import experiments
from ._threads import thread_count
from .errors import DepcovError, InvalidParameter
from .generators import KINDS, GeneratorSpec, generate
from .inference import PermTestConfig, fresh_seed, perm_test
from .model import read_distribution_csv, read_sample_csv, write_sample_csv
from .population import doubly_centered_distribution, pairwise_abs_diff_distribution, population_report
from .sample import sample_report

SCHEMA_VERSION = 1


def _emit(payload: dict) -> None:
    json.dump({"schema_version": SCHEMA_VERSION, **payload}, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    seed = fresh_seed()
    print(f"seed: {seed}", file=sys.stderr)
    return seed


def _report_payload(rep) -> dict:
    return {
        "report": rep.to_dict(),
        "conventional": {"dcov_sqrt": rep.dcov_sqrt, "dcor_sqrt": rep.dcor_sqrt},
    }


def cmd_exact(args) -> None:
    d = read_distribution_csv(args.path)
    payload = _report_payload(population_report(d, check=args.check))
    if args.panels:
        payload["panels"] = {
            "atoms": d.to_dict()["atoms"],
            "abs_diff": pairwise_abs_diff_distribution(d).to_dict()["atoms"],
            "doubly_centered": doubly_centered_distribution(d).to_dict()["atoms"],
        }
    _emit(payload)


def cmd_sample(args) -> None:
    s = read_sample_csv(args.path).require(2)
    if args.method != "both":
        _emit(_report_payload(sample_report(s, args.method)))
        return
    t0 = time.perf_counter()
    naive = sample_report(s, "naive")
    t1 = time.perf_counter()
    fast = sample_report(s, "fast")
    t2 = time.perf_counter()
    tol = max(1e-10, 1e-12 * float(np.ptp(s.xs) * np.ptp(s.ys)))
    if abs(naive.dcov - fast.dcov) > tol:
        raise DepcovError(f"naive dcov {naive.dcov!r} and fast dcov {fast.dcov!r} differ by more than {tol:g}")
    _emit({
        "naive": naive.to_dict(),
        "fast": fast.to_dict(),
        "abs_diff": abs(naive.dcov - fast.dcov),
        "tolerance": tol,
        "seconds": {"naive": t1 - t0, "fast": t2 - t1},
    })


def cmd_permtest(args) -> None:
    s = read_sample_csv(args.path)
    PermTestConfig(m=args.m, ties=args.ties)  # reject bad settings before choosing a seed
    seed = _seed(args)
    res = perm_test(s, PermTestConfig(m=args.m, seed=seed, ties=args.ties, exhaustive=args.exhaustive))
    payload = {"result": res.to_dict()}
    if args.alpha is not None:
        if not 0.0 <= args.alpha <= 1.0:
            raise InvalidParameter("alpha must lie in [0, 1]")
        payload["alpha"] = args.alpha
        payload["reject"] = res.p_hat < args.alpha
    _emit(payload)


def cmd_generate(args) -> None:
    kind = args.kind
    if args.grid:
        if kind != "uniform_parabola":
            raise InvalidParameter("--grid only applies to --kind uniform_parabola")
        kind = "uniform_parabola_grid"
    dist = read_distribution_csv(args.dist) if args.dist else None
    seed = _seed(args)
    s = generate(GeneratorSpec(kind, args.n, seed=seed, nu=args.nu, rho=args.rho, dist=dist,
                               noise=args.noise))
    if args.out:
        write_sample_csv(s, args.out)
        _emit({"kind": kind, "n": s.n, "seed": seed, "path": args.out})
    else:
        sys.stdout.write("x,y\n")
        for x, y in zip(s.xs.tolist(), s.ys.tolist()):
            sys.stdout.write(f"{x!r},{y!r}\n")


def cmd_examples(args) -> None:
    which = ["1", "2", "3", "4"] if args.which == "all" else [args.which]
    summary = {}
    for w in which:
        if w == "1":
            r = experiments.run_example1(args.out)
            summary["example1"] = {k: v for k, v in r["values"].items() if k != "dcov_routes"}
        elif w == "2":
            summary["example2"] = experiments.run_example2(args.out)["values"]
        elif w == "3":
            r = experiments.run_example3(n=args.n, grid=not args.random, seed=args.seed, out=args.out)
            summary["example3"] = {"dcor": r["dcor"], "cor": r["cor"]}
        else:
            r = experiments.run_example4(n=args.n, seed=args.seed, out=args.out)
            summary["example4"] = {"curve": r["curve"], "elapsed_s": r["elapsed_s"]}
    _emit(summary)


def cmd_bench(args) -> None:
    fast = tuple(2**k for k in range(args.fast_min, args.fast_max + 1))
    naive = tuple(2**k for k in range(args.naive_min, args.naive_max + 1))
    r = experiments.run_bench(fast, naive, reps=args.reps, seed=args.seed, out=args.out)
    _emit({"fast_slope": r["fast_slope"], "naive_slope": r["naive_slope"], "all_agree": r["all_agree"]})


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="depcov", description="Distance covariance and correlation tools.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("exact", help="exact report for a discrete distribution (CSV x,y,p)")
    e.add_argument("path")
    e.add_argument("--panels", action="store_true", help="include the derived distributions")
    e.add_argument("--check", action="store_true", help="cross-check the three dCov expansions")
    e.set_defaults(func=cmd_exact)

    s = sub.add_parser("sample", help="sample report for paired data (CSV x,y)")
    s.add_argument("path")
    s.add_argument("--method", choices=["naive", "fast", "both"], default="fast")
    s.set_defaults(func=cmd_sample)

    t = sub.add_parser("permtest", help="permutation test of independence")
    t.add_argument("path")
    t.add_argument("--m", type=int, default=1000, help="number of permutations")
    t.add_argument("--seed", type=int, default=None)
    t.add_argument("--alpha", type=float, default=None, help="also report reject = p_hat < alpha")
    t.add_argument("--exhaustive", action="store_true", help="use all permutations (n <= 7)")
    t.add_argument("--ties", choices=["gt", "geq"], default="gt")
    t.set_defaults(func=cmd_permtest)

    g = sub.add_parser("generate", help="write a seeded sample as CSV x,y")
    g.add_argument("--kind", choices=[k for k in KINDS if k != "uniform_parabola_grid"], required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--nu", type=float)
    g.add_argument("--rho", type=float)
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--grid", action="store_true", help="equispaced X for uniform_parabola")
    g.add_argument("--noise", type=float, default=0.0, help="sd of Gaussian noise added to Y")
    g.add_argument("--dist", help="distribution CSV for --kind discrete")
    g.add_argument("--out", help="output file (default: stdout)")
    g.set_defaults(func=cmd_generate)

    x = sub.add_parser("examples", help="reproduce the worked examples")
    xs = x.add_subparsers(dest="action", required=True)
    run = xs.add_parser("run")
    run.add_argument("which", choices=["1", "2", "3", "4", "all"])
    run.add_argument("--out", default="out")
    run.add_argument("--n", type=int, default=100_000)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--random", action="store_true", help="example 3: uniform draws instead of the grid")
    run.set_defaults(func=cmd_examples)

    b = sub.add_parser("bench", help="time both dCov estimators")
    b.add_argument("--out", default="out")
    b.add_argument("--reps", type=int, default=5)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--fast-min", type=int, default=14, help="log2 of the smallest fast size")
    b.add_argument("--fast-max", type=int, default=20)
    b.add_argument("--naive-min", type=int, default=9)
    b.add_argument("--naive-max", type=int, default=13)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        thread_count()
        args.func(args)
    except DepcovError as exc:
        print(f"{exc.code}: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"FileNotFound: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
