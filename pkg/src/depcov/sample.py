"""Finite-sample distance covariance and correlation.

Two estimators of the same V-statistic are provided: :func:`dcov_naive`
double-centres the full distance matrices, :func:`dcov_fast` uses the
sort-based O(n log n) kernel in :mod:`depcov._fast` and never forms a
matrix. They must agree to rounding error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numba
import numpy as np

from . import _fast
from ._threads import ordered_map
from .errors import InvalidParameter, LengthTooSmall
from .model import DependenceReport, Method, PairedSample

DEGENERATE_TOL = 1e-14
_BLOCK = 512


@dataclass(frozen=True)
class CenteredDistanceMatrix:
    """Double-centred distance matrix of a univariate sample.

    Attributes
    ----------
    values : (n, n) ndarray
        ``d_ij - row_means[i] - col_means[j] + grand_mean``.
    row_means, col_means : (n,) ndarray
        Means of ``d_ij = |v_i - v_j|`` along rows and columns.
    grand_mean : float
    """

    n: int
    values: np.ndarray
    row_means: np.ndarray
    col_means: np.ndarray
    grand_mean: float


def _vector(v) -> np.ndarray:
    v = np.asarray(v, dtype=np.float64).ravel()
    if v.size < 2:
        raise LengthTooSmall(f"need at least 2 values, got {v.size}")
    return v


def centered_distance_matrix(v) -> CenteredDistanceMatrix:
    v = _vector(v)
    d = np.abs(v[:, None] - v[None, :])
    row = d.mean(axis=1)
    grand = float(row.mean())
    # d is symmetric, so column means equal row means; summing the pair first
    # keeps values bit-symmetric
    values = d - (row[:, None] + row[None, :]) + grand
    return CenteredDistanceMatrix(v.size, values, row, row.copy(), grand)


def _blocks(n):
    return [(i, min(i + _BLOCK, n)) for i in range(0, n, _BLOCK)]


@numba.njit(cache=True, nogil=True)
def _row_means_block(v, lo, hi):
    n = v.size
    out = np.empty(hi - lo)
    for i in range(lo, hi):
        acc = 0.0
        for j in range(n):
            acc += abs(v[i] - v[j])
        out[i - lo] = acc / n
    return out


@numba.njit(cache=True, nogil=True)
def _centered_product_rows(x, y, rx, ry, gx, gy, lo, hi):
    # one partial sum of DX_ij * DY_ij per row i in [lo, hi)
    n = x.size
    out = np.empty(hi - lo)
    for i in range(lo, hi):
        acc = 0.0
        for j in range(n):
            dx = abs(x[i] - x[j]) - (rx[i] + rx[j]) + gx
            dy = abs(y[i] - y[j]) - (ry[i] + ry[j]) + gy
            acc += dx * dy
        out[i - lo] = acc
    return out


def _row_means(v):
    return np.concatenate(ordered_map(lambda b: _row_means_block(v, *b), _blocks(v.size)))


def dcov_naive(s: PairedSample) -> float:
    """``(1/n^2) sum_ij DX_ij DY_ij`` from explicit double centring.

    Never stores the matrices: each entry is formed on the fly, so memory
    stays O(n) while time is the O(n^2) of the definition. Per-row partial
    sums are combined with :func:`math.fsum`, so the result does not depend
    on the thread count.
    """
    s.require(2)
    x, y = s.xs, s.ys
    rx, ry = _row_means(x), _row_means(y)
    gx, gy = math.fsum(rx) / x.size, math.fsum(ry) / y.size

    def block(bounds):
        return _centered_product_rows(x, y, rx, ry, gx, gy, *bounds)

    rows = np.concatenate(ordered_map(block, _blocks(x.size)))
    return math.fsum(rows) / (float(x.size) ** 2)


def dcov_fast(s: PairedSample) -> float:
    """Same statistic as :func:`dcov_naive` in O(n log n) time and O(n) memory."""
    s.require(2)
    e_ab, e_a, e_b, e_cross = _fast.moments(s.xs, s.ys)
    return float(e_ab + e_a * e_b - 2.0 * e_cross)


def dcov(s: PairedSample, method: Literal["naive", "fast"] = "fast") -> float:
    if method == "fast":
        return dcov_fast(s)
    if method == "naive":
        return dcov_naive(s)
    raise InvalidParameter(f"unknown method {method!r}")


def _self_dcov(v, method):
    if method == "fast":
        return _fast.self_dcov(v)
    return dcov_naive(PairedSample(v, v))


def dcor_sample(s: PairedSample, method: Literal["naive", "fast"] = "fast") -> tuple[float, bool]:
    """Sample distance correlation, not square-rooted.

    Returns ``(dcor, degenerate)``; ``(0.0, True)`` when either margin has
    self-dCov below ``1e-14``.
    """
    s.require(2)
    num = dcov(s, method)
    vx = _self_dcov(s.xs, method)
    vy = _self_dcov(s.ys, method)
    if vx < DEGENERATE_TOL or vy < DEGENERATE_TOL:
        return 0.0, True
    return float(min(max(num / math.sqrt(vx * vy), 0.0), 1.0)), False


def sample_report(s: PairedSample, method: Literal["naive", "fast"] = "fast") -> DependenceReport:
    """Report for the empirical distribution of ``s``.

    The two covariances of distances are always taken from the O(n log n)
    moments; ``method`` selects the dCov/dCor path.
    """
    s.require(2)
    e_ab, e_a, e_b, e_cross = _fast.moments(s.xs, s.ys)
    dcor, degenerate = dcor_sample(s, method)
    return DependenceReport(
        dcov=dcov(s, method),
        dcor=dcor,
        cov_dist=e_ab - e_a * e_b,
        cross_cov_dist=e_cross - e_a * e_b,
        method=Method.SAMPLE_FAST if method == "fast" else Method.SAMPLE_NAIVE,
        degenerate=degenerate,
    )


def difference_sample(
    s: PairedSample,
    mode: Literal["all_pairs", "subsampled", "disjoint"] = "all_pairs",
    k: int | None = None,
    seed: int | None = None,
    y_diff: bool = True,
) -> PairedSample:
    """Pairs ``(x_i - x_j, y_i - y_j)`` built from index pairs of ``s``.

    Parameters
    ----------
    mode
        ``all_pairs`` emits all ``n^2`` ordered pairs, diagonal included.
        ``subsampled`` draws ``k`` index pairs with replacement (default
        ``k = 10 n``) from ``numpy.random.default_rng(seed)``.
        ``disjoint`` pairs rows ``(0, 1), (2, 3), ...``; its ``n // 2``
        rows are i.i.d. copies of ``(X - X', Y - Y')`` when ``s`` is i.i.d.
    y_diff
        If false the second coordinate is ``y_i`` instead of ``y_i - y_j``.
    """
    s.require(2)
    n = s.n
    if mode == "all_pairs":
        i, j = np.divmod(np.arange(n * n), n)
    elif mode == "subsampled":
        k = 10 * n if k is None else int(k)
        if k < 1:
            raise InvalidParameter("k must be positive")
        rng = np.random.default_rng(seed)
        i = rng.integers(0, n, size=k)
        j = rng.integers(0, n, size=k)
    elif mode == "disjoint":
        i = np.arange(0, n - 1, 2)
        j = i + 1
    else:
        raise InvalidParameter(f"unknown mode {mode!r}")
    second = s.ys[i] - s.ys[j] if y_diff else s.ys[i]
    return PairedSample(s.xs[i] - s.xs[j], second)
