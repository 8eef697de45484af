"""Reproductions of the four worked examples and the estimator benchmark.

Each ``run_*`` function returns a plain dict and, when ``out`` is given,
writes its files there. Example outputs depend only on the arguments, so
repeated runs produce byte-identical files; timings are returned but never
written, except by :func:`run_bench` whose whole purpose is timing.

Every reported number carries a ``source`` tag: ``"reference"`` when a
published value exists to compare against (stored as ``reference_value``),
``"computed"`` otherwise.
"""

from __future__ import annotations

import csv
import json
import math
import time
from pathlib import Path

import numpy as np

from .generators import GeneratorSpec, generate
from .model import ContingencyTable2x2, DiscreteBivariate, PairedSample
from .population import (
    contingency_chisq_pop,
    contingency_cov,
    contingency_cov_dist,
    contingency_dcov,
    dcov_routes,
    doubly_centered_distribution,
    pairwise_abs_diff_distribution,
    pop_cov,
    pop_cov_distances,
    pop_cross_cov,
    pop_dcor,
    pop_dcov,
)
from .sample import dcor_sample, dcov_fast, dcov_naive

EXAMPLE1_LABELS = ("a", "b", "c", "d")
EXAMPLE1_ATOMS = ((-1.0, 1.0, 0.25), (1.0, 1.0, 0.25), (0.0, 0.6, 0.25), (0.0, -1.0, 0.25))
EXAMPLE2_COUNTS = (10, 5, 14, 11)
EXAMPLE3_REFERENCE_DCOR = 0.2415
THROUGH_ATOM_TOL = 1e-9


def example1_distribution(first_x: float = -1.0) -> DiscreteBivariate:
    atoms = list(EXAMPLE1_ATOMS)
    atoms[0] = (first_x,) + atoms[0][1:]
    return DiscreteBivariate(atoms)


def example2_table() -> ContingencyTable2x2:
    return ContingencyTable2x2.from_counts(*EXAMPLE2_COUNTS)


def _tag(value, source, reference_value=None, note=None):
    out = {"value": value, "source": source}
    if reference_value is not None:
        out["reference_value"] = reference_value
    if note:
        out["note"] = note
    return out


def _atoms(d: DiscreteBivariate):
    return [[a.x, a.y, a.p] for a in d.atoms]


def _write_json(obj, path: Path):
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _write_points(d: DiscreteBivariate, path: Path, header):
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for a in d.atoms:
            w.writerow([repr(a.x), repr(a.y), repr(a.p)])


def delta_regression(d: DiscreteBivariate) -> dict:
    """Least-squares line of Delta(Y,Y') on Delta(X,X') under the centred law.

    Both centred coordinates have mean zero, so the intercept vanishes and
    the slope is ``dCov(X,Y) / dCov(X,X)``.
    """
    dc = doubly_centered_distribution(d)
    p, u, v = dc.ps, dc.xs, dc.ys
    mu, mv = math.fsum(p * u), math.fsum(p * v)
    var_u = math.fsum(p * (u - mu) ** 2)
    slope = math.fsum(p * (u - mu) * (v - mv)) / var_u
    intercept = mv - slope * mu
    resid = np.abs(v - (intercept + slope * u))
    hit = [[float(a), float(b)] for a, b, r in zip(u, v, resid) if r <= THROUGH_ATOM_TOL]
    return {
        "slope": slope,
        "intercept": intercept,
        "mean_delta_x": mu,
        "mean_delta_y": mv,
        "min_abs_residual": float(resid.min()),
        "atoms_on_line": hit,
    }


def run_example1(out=None) -> dict:
    """Example 1: the four-point law with zero covariance of distances.

    Also runs the variant with the first x-coordinate moved to -1.5, where
    the regression line through the origin misses every centred atom.
    """
    d = example1_distribution()
    absd = pairwise_abs_diff_distribution(d)
    dc = doubly_centered_distribution(d)
    dcor, degenerate = pop_dcor(d)
    routes = dcov_routes(d)
    variant = example1_distribution(-1.5)
    report = {
        "panels": {
            "atoms": [
                {"atom": lab, "x": a.x, "y": a.y, "p": a.p}
                for lab, a in zip(EXAMPLE1_LABELS, d.atoms)
            ],
            "abs_diff": _atoms(absd),
            "doubly_centered": _atoms(dc),
        },
        "atom_counts": {
            "abs_diff": _tag(len(absd), "reference", 5),
            "doubly_centered": _tag(len(dc), "reference", 7),
        },
        "values": {
            "cov_dist": _tag(pop_cov_distances(d), "reference", 0.0),
            "dcov": _tag(pop_dcov(d), "reference", 0.1),
            "cross_cov_dist": _tag(pop_cross_cov(d), "reference", -0.05),
            "cov": _tag(pop_cov(d), "reference", 0.0),
            "dcor": _tag(dcor, "computed"),
            "dcor_degenerate": degenerate,
            "dcov_routes": routes,
        },
        "regression": delta_regression(d),
        "variant_first_x_-1.5": {
            "atoms": _atoms(variant),
            "doubly_centered": _atoms(doubly_centered_distribution(variant)),
            "dcov": _tag(pop_dcov(variant), "computed"),
            "regression": delta_regression(variant),
        },
    }
    if out is not None:
        out = Path(out)
        out.mkdir(parents=True, exist_ok=True)
        _write_json(report, out / "example1_tables.json")
        _write_points(absd, out / "example1_abs_diff.csv", ["abs_dx", "abs_dy", "p"])
        _write_points(dc, out / "example1_doubly_centered.csv", ["delta_x", "delta_y", "p"])
    return report


def run_example2(out=None) -> dict:
    """2x2 table (10, 5, 14, 11)/40: zero covariance of distances, positive dCov.

    The closed-form dCov evaluates to 0.0025 against a reference value of
    0.025; both are reported and left unreconciled.
    """
    t = example2_table()
    d = t.to_bivariate()
    dcov = contingency_dcov(t)
    report = {
        "table": t.to_dict(),
        "row_marginals": list(t.row_marginals),
        "col_marginals": list(t.col_marginals),
        "values": {
            "cov_dist": _tag(contingency_cov_dist(t), "reference", 0.0),
            "dcov": _tag(
                dcov, "computed", 0.025,
                note="sum of (p_ij - p_i. p_.j)^2 = 4 * 0.025^2 = 0.0025; "
                     "the reference value 0.025 equals each |p_ij - p_i. p_.j|",
            ),
            "chisq_pop": _tag(contingency_chisq_pop(t), "computed"),
            "cov": _tag(contingency_cov(t), "computed"),
        },
        "generic_routes": {
            "pop_dcov": pop_dcov(d),
            "pop_cov_distances": pop_cov_distances(d),
            "pop_cross_cov": pop_cross_cov(d),
            "dcov_routes": dcov_routes(d),
        },
    }
    if out is not None:
        out = Path(out)
        out.mkdir(parents=True, exist_ok=True)
        _write_json(report, out / "example2_report.json")
    return report


def run_example3(n: int = 100_000, grid: bool = True, seed: int = 0, method: str = "fast",
                 out=None) -> dict:
    """dCor of (X, X^2) with X uniform on [-1, 1], random or on a grid."""
    kind = "uniform_parabola_grid" if grid else "uniform_parabola"
    s = generate(GeneratorSpec(kind, n, seed=seed))
    t0 = time.perf_counter()
    dcor, degenerate = dcor_sample(s, method)
    elapsed = time.perf_counter() - t0
    cor = float(np.corrcoef(s.xs, s.ys)[0, 1])
    slope, intercept = np.polyfit(s.xs, s.ys, 1)
    report = {
        "n": n,
        "grid": grid,
        "seed": seed,
        "method": method,
        "dcor": _tag(dcor, "reference", EXAMPLE3_REFERENCE_DCOR),
        "dcor_degenerate": degenerate,
        "cor": _tag(cor, "computed", note="population value is 0 by symmetry"),
        "ls_line": {"slope": float(slope), "intercept": float(intercept)},
    }
    if out is not None:
        out = Path(out)
        out.mkdir(parents=True, exist_ok=True)
        _write_json(report, out / "example3_report.json")
    return dict(report, elapsed_s=elapsed)


def _nu_seed(seed: int, nu: float) -> int:
    ss = np.random.SeedSequence(seed, spawn_key=(int(round(nu * 1_000_000)),))
    return int(ss.generate_state(1, np.uint64)[0])


def run_example4(nu_list=tuple(range(2, 21)), n: int = 100_000, seed: int = 0, out=None) -> dict:
    """dCor curve of the standard bivariate t over a range of degrees of freedom."""
    rows = []
    t0 = time.perf_counter()
    for nu in nu_list:
        s = generate(GeneratorSpec("bivariate_t", n, seed=_nu_seed(seed, nu), nu=float(nu)))
        dcor, _ = dcor_sample(s, "fast")
        rows.append((float(nu), dcor))
    elapsed = time.perf_counter() - t0
    values = [r[1] for r in rows]
    increases = [b - a for a, b in zip(values, values[1:]) if b > a]
    if out is not None:
        out = Path(out)
        out.mkdir(parents=True, exist_ok=True)
        with (out / "example4_curve.csv").open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["nu", "dcor_estimate"])
            for nu, v in rows:
                w.writerow([repr(nu), repr(v)])
    return {
        "n": n,
        "seed": seed,
        "curve": rows,
        "largest_increase": max(increases, default=0.0),
        "elapsed_s": elapsed,
    }


def loglog_slope(sizes, times) -> float:
    """Least-squares slope of log(time) against log(n)."""
    return float(np.polyfit(np.log(sizes), np.log(times), 1)[0])


def _time_sizes(fn, samples, reps, budget=0.02):
    """Best wall time of ``fn`` per sample, interleaving sizes round-robin.

    Every round times each sample in turn, so slow drift in machine load
    hits all sizes alike instead of biasing the fitted slope. Within a
    round, quick cases repeat until ``budget`` seconds are spent.
    """
    best = [math.inf] * len(samples)
    values = [None] * len(samples)
    for _ in range(reps):
        for k, s in enumerate(samples):
            spent = 0.0
            first = True
            while first or (spent < budget):
                t0 = time.perf_counter()
                values[k] = fn(s)
                dt = time.perf_counter() - t0
                best[k] = min(best[k], dt)
                spent += dt
                first = False
    return best, values


def run_bench(
    fast_sizes=tuple(2**k for k in range(14, 21)),
    naive_sizes=tuple(2**k for k in range(9, 14)),
    reps: int = 5,
    seed: int = 0,
    out=None,
) -> dict:
    """Wall-clock scaling of both dCov estimators (best of ``reps`` rounds).

    At the naive sizes the fast estimator runs too and the two values are
    compared against ``max(1e-10, 1e-12 * range(x) * range(y))``.
    """
    if list(fast_sizes) != sorted(fast_sizes) or list(naive_sizes) != sorted(naive_sizes):
        raise ValueError("sizes must be ascending")
    rng = np.random.default_rng(seed)
    warm = PairedSample([0.0, 1.0, 2.0], [1.0, 0.0, 2.0])
    dcov_fast(warm)  # JIT warm-up
    dcov_naive(warm)

    fast_samples = [PairedSample(rng.standard_normal(n), rng.standard_normal(n)) for n in fast_sizes]
    naive_samples = [PairedSample(rng.standard_normal(n), rng.standard_normal(n)) for n in naive_sizes]
    fast_t, fast_v = _time_sizes(dcov_fast, fast_samples, reps)
    naive_t, naive_v = _time_sizes(dcov_naive, naive_samples, reps)
    check_t, check_v = _time_sizes(dcov_fast, naive_samples, 1)

    fast_rows = [
        {"n": int(n), "seconds": t, "dcov": v} for n, t, v in zip(fast_sizes, fast_t, fast_v)
    ]
    naive_rows = []
    for n, s, t, v, tf, vf in zip(naive_sizes, naive_samples, naive_t, naive_v, check_t, check_v):
        tol = max(1e-10, 1e-12 * float(np.ptp(s.xs) * np.ptp(s.ys)))
        naive_rows.append({
            "n": int(n), "seconds": t, "dcov": v,
            "fast_seconds": tf, "fast_dcov": vf, "abs_diff": abs(v - vf),
            "tolerance": tol, "agree": abs(v - vf) <= tol,
        })

    report = {
        "reps": reps,
        "seed": seed,
        "fast": fast_rows,
        "naive": naive_rows,
        "fast_slope": loglog_slope([r["n"] for r in fast_rows], [r["seconds"] for r in fast_rows])
        if len(fast_rows) > 1 else None,
        "naive_slope": loglog_slope([r["n"] for r in naive_rows], [r["seconds"] for r in naive_rows])
        if len(naive_rows) > 1 else None,
        "all_agree": all(r["agree"] for r in naive_rows),
    }
    if out is not None:
        out = Path(out)
        out.mkdir(parents=True, exist_ok=True)
        _write_json(report, out / "bench.json")
    return report
