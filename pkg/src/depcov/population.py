"""Exact dependence measures for finite discrete bivariate distributions.

Every quantity is an expectation over finitely many atoms, so it can be
evaluated exactly up to floating-point rounding. Sums that decide whether
two derived atoms coincide use :func:`math.fsum`, which is correctly
rounded: two sums over the same multiset of terms are then bit-equal, and
atom merging can use exact equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import DegenerateMarginal, InvalidParameter
from .model import ContingencyTable2x2, DependenceReport, DiscreteBivariate, Method

Margin = Literal["X", "Y"]

DEGENERATE_TOL = 1e-14
ROUTE_TOL = 1e-12


def _coords(d: DiscreteBivariate, which: Margin) -> np.ndarray:
    if which == "X":
        return d.xs
    if which == "Y":
        return d.ys
    raise InvalidParameter(f"which must be 'X' or 'Y', got {which!r}")


def marginal(d: DiscreteBivariate, which: Margin) -> list[tuple[float, float]]:
    """Law of one coordinate as ascending ``(value, mass)`` pairs."""
    groups: dict[float, list[float]] = {}
    for v, p in zip(_coords(d, which).tolist(), d.ps.tolist()):
        groups.setdefault(v, []).append(p)
    return sorted((v, math.fsum(ps)) for v, ps in groups.items())


def _merge(pairs) -> DiscreteBivariate:
    """Build a distribution from ``((u, v), mass)`` items, merging on bit equality."""
    acc: dict[tuple[float, float], list[float]] = {}
    for key, p in pairs:
        acc.setdefault(key, []).append(p)
    return DiscreteBivariate((u, v, math.fsum(ps)) for (u, v), ps in sorted(acc.items()))


def pairwise_abs_diff_distribution(d: DiscreteBivariate) -> DiscreteBivariate:
    """Law of ``(|X - X'|, |Y - Y'|)`` for an independent copy ``(X', Y')``."""
    atoms = d.atoms
    return _merge(
        ((abs(a.x - b.x), abs(a.y - b.y)), a.p * b.p) for a in atoms for b in atoms
    )


@dataclass(frozen=True)
class CenteringConstants:
    """Row means ``E|v - X''|`` per support point and the grand mean ``E|X'' - X'''|``."""

    row_means: dict
    grand_mean: float

    def delta(self, u: float, v: float) -> float:
        """Doubly centered distance between two support points.

        Evaluated with a correctly rounded sum so that ``delta(u, v)`` and
        ``delta(v, u)`` are bit-equal.
        """
        return math.fsum((abs(u - v), -self.row_means[u], -self.row_means[v], self.grand_mean))


def centering_constants(d: DiscreteBivariate, which: Margin) -> CenteringConstants:
    marg = marginal(d, which)
    row_means = {u: math.fsum(q * abs(u - w) for w, q in marg) for u, _ in marg}
    grand = math.fsum(q * r * abs(u - w) for u, q in marg for w, r in marg)
    return CenteringConstants(row_means, grand)


def doubly_centered_distribution(d: DiscreteBivariate) -> DiscreteBivariate:
    """Law of ``(Delta(X, X'), Delta(Y, Y'))`` over all ordered atom pairs.

    Unlike :func:`pairwise_abs_diff_distribution` this is not a function of
    the differences alone, so atoms sharing ``(|X-X'|, |Y-Y'|)`` can split.
    """
    cx = centering_constants(d, "X")
    cy = centering_constants(d, "Y")
    atoms = d.atoms
    return _merge(
        ((cx.delta(a.x, b.x), cy.delta(a.y, b.y)), a.p * b.p) for a in atoms for b in atoms
    )


def _cov(dist: DiscreteBivariate) -> float:
    p, u, v = dist.ps, dist.xs, dist.ys
    eu = math.fsum(p * u)
    ev = math.fsum(p * v)
    return math.fsum(p * u * v) - eu * ev


def pop_cov(d: DiscreteBivariate) -> float:
    """Plain covariance ``Cov(X, Y)``."""
    return _cov(d)


def pop_cov_distances(d: DiscreteBivariate) -> float:
    """``Cov(|X - X'|, |Y - Y'|)``."""
    return _cov(pairwise_abs_diff_distribution(d))


def _abs_diff_matrices(d: DiscreteBivariate):
    ax = np.abs(d.xs[:, None] - d.xs[None, :])
    ay = np.abs(d.ys[:, None] - d.ys[None, :])
    return ax, ay


def _cross_moment(d: DiscreteBivariate) -> float:
    # E|X - X'| |Y - Y''| as a literal triple sum over atoms i, j, k.
    p = d.ps
    ax, ay = _abs_diff_matrices(d)
    return float(np.einsum("i,j,k,ij,ik->", p, p, p, ax, ay))


def _mean_abs_diff(d: DiscreteBivariate):
    p = d.ps
    ax, ay = _abs_diff_matrices(d)
    w = np.outer(p, p)
    return math.fsum((w * ax).ravel()), math.fsum((w * ay).ravel())


def pop_cross_cov(d: DiscreteBivariate) -> float:
    """``Cov(|X - X'|, |Y - Y''|)`` with two independent copies."""
    ex, ey = _mean_abs_diff(d)
    return _cross_moment(d) - ex * ey


def dcov_routes(d: DiscreteBivariate) -> dict[str, float]:
    """dCov evaluated three independent ways.

    ``definition``
        covariance over the doubly centered distribution.
    ``three_term``
        ``E|X-X'||Y-Y'| + E|X-X'| E|Y-Y'| - 2 E|X-X'||Y-Y''|`` by direct sums.
    ``two_term``
        ``Cov(|X-X'|,|Y-Y'|) - 2 Cov(|X-X'|,|Y-Y''|)``.
    """
    p = d.ps
    ax, ay = _abs_diff_matrices(d)
    w = np.outer(p, p)
    e_xy = math.fsum((w * ax * ay).ravel())
    ex, ey = _mean_abs_diff(d)
    cross = _cross_moment(d)
    return {
        "definition": _cov(doubly_centered_distribution(d)),
        "three_term": e_xy + ex * ey - 2.0 * cross,
        "two_term": pop_cov_distances(d) - 2.0 * (cross - ex * ey),
    }


def pop_dcov(d: DiscreteBivariate, check: bool = False) -> float:
    """Distance covariance (not square-rooted).

    With ``check=True`` the two alternative expansions are evaluated as
    well and an ``AssertionError`` is raised if any differs from the
    definition by more than ``1e-12``.
    """
    if not check:
        return _cov(doubly_centered_distribution(d))
    routes = dcov_routes(d)
    ref = routes["definition"]
    for name, val in routes.items():
        if abs(val - ref) > ROUTE_TOL:
            raise AssertionError(f"dcov route {name!r} = {val!r} disagrees with {ref!r}")
    return ref


def _diagonal(d: DiscreteBivariate, which: Margin) -> DiscreteBivariate:
    return DiscreteBivariate((v, v, p) for v, p in marginal(d, which))


def pop_dcor(d: DiscreteBivariate) -> tuple[float, bool]:
    """Distance correlation ``dCov(X,Y) / sqrt(dCov(X,X) dCov(Y,Y))``.

    Returns ``(dcor, degenerate)``; a margin whose self-dCov is below
    ``1e-14`` gives ``(0.0, True)``.
    """
    vx = pop_dcov(_diagonal(d, "X"))
    vy = pop_dcov(_diagonal(d, "Y"))
    if vx < DEGENERATE_TOL or vy < DEGENERATE_TOL:
        return 0.0, True
    r = pop_dcov(d) / math.sqrt(vx * vy)
    return min(max(r, 0.0), 1.0), False


def population_report(d: DiscreteBivariate, check: bool = False) -> DependenceReport:
    dcor, degenerate = pop_dcor(d)
    return DependenceReport(
        dcov=pop_dcov(d, check=check),
        dcor=dcor,
        cov_dist=pop_cov_distances(d),
        cross_cov_dist=pop_cross_cov(d),
        method=Method.POPULATION_EXACT,
        degenerate=degenerate,
    )


# --- 2x2 contingency tables ------------------------------------------------

def _outer_marginals(t: ContingencyTable2x2):
    r, c = t.row_marginals, t.col_marginals
    return [[r[i] * c[j] for j in (0, 1)] for i in (0, 1)]


def contingency_dcov(t: ContingencyTable2x2) -> float:
    """``sum_ij (p_ij - p_i. p_.j)^2``."""
    e = _outer_marginals(t)
    m = t.matrix
    return math.fsum((m[i, j] - e[i][j]) ** 2 for i in (0, 1) for j in (0, 1))


def contingency_cov_dist(t: ContingencyTable2x2) -> float:
    """``Cov(|X-X'|, |Y-Y'|) = 2 (p00 p11 + p01 p10 - 2 p0. p1. p.0 p.1)``."""
    (r0, r1), (c0, c1) = t.row_marginals, t.col_marginals
    return 2.0 * (t.p00 * t.p11 + t.p01 * t.p10 - 2.0 * r0 * r1 * c0 * c1)


def contingency_chisq_pop(t: ContingencyTable2x2) -> float:
    """Population limit of the chi-square statistic divided by the sample size."""
    e = _outer_marginals(t)
    if any(e[i][j] == 0 for i in (0, 1) for j in (0, 1)):
        raise DegenerateMarginal("a marginal probability is zero")
    m = t.matrix
    return math.fsum(((m[i, j] - e[i][j]) / e[i][j]) ** 2 for i in (0, 1) for j in (0, 1))


def contingency_cov(t: ContingencyTable2x2) -> float:
    """Plain ``Cov(X, Y) = p11 - p1. p.1``."""
    return t.p11 - t.row_marginals[1] * t.col_marginals[1]


def contingency_report(t: ContingencyTable2x2) -> DependenceReport:
    """Closed-form report; dCor and the cross term come from the embedded distribution."""
    d = t.to_bivariate()
    dcor, degenerate = pop_dcor(d)
    dcov = contingency_dcov(t)
    return DependenceReport(
        dcov=dcov,
        dcor=dcor,
        cov_dist=contingency_cov_dist(t),
        cross_cov_dist=(contingency_cov_dist(t) - dcov) / 2.0,
        method=Method.CONTINGENCY,
        degenerate=degenerate,
    )
