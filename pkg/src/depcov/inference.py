"""Permutation test of independence with the sample dCov as statistic."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from . import _fast
from ._threads import ordered_map
from .errors import InvalidParameter, UnknownGenerator
from .generators import GeneratorSpec, generate
from .model import PairedSample, PermTestResult
from .sample import centered_distance_matrix

Statistic = Literal["dcov", "dcov2", "dcor"]

MAX_EXHAUSTIVE_N = 7
# samples up to this size permute a precomputed centred matrix
_MATRIX_N = 256
_CHUNK_ELEMS = 1 << 21
# statistics within this relative distance of the observed value are ties
TIE_RTOL = 1e-9


def fresh_seed() -> int:
    """A 64-bit seed drawn from OS entropy."""
    return int(np.random.SeedSequence().generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class PermTestConfig:
    """Settings for :func:`perm_test`.

    ``statistic`` may be switched to ``dcov2`` (squared) or ``dcor``; all
    three order the permutations identically, which the test suite checks.
    ``ties="geq"`` counts permuted statistics equal to the observed one as
    exceedances; the default counts only strictly larger ones.
    """

    m: int = 1000
    seed: int | None = None
    statistic: Statistic = "dcov"
    ties: Literal["gt", "geq"] = "gt"
    exhaustive: bool = False

    def __post_init__(self):
        if isinstance(self.m, bool) or int(self.m) != self.m or self.m < 1:
            raise InvalidParameter(f"m must be a positive integer, got {self.m!r}")
        if self.seed is not None and not 0 <= int(self.seed) < 2**64:
            raise InvalidParameter("seed must be a 64-bit unsigned integer")
        if self.statistic not in ("dcov", "dcov2", "dcor"):
            raise InvalidParameter(f"unknown statistic {self.statistic!r}")
        if self.ties not in ("gt", "geq"):
            raise InvalidParameter(f"ties must be 'gt' or 'geq', got {self.ties!r}")


def _chunk_rng(seed: int, chunk: int) -> np.random.Generator:
    # counter-based split: chunk c always gets the stream keyed (seed, c)
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(chunk,))))


def _chunks(m: int, n: int):
    size = max(1, min(m, _CHUNK_ELEMS // max(n * (n if n <= _MATRIX_N else 1), 1)))
    return [(c, lo, min(lo + size, m)) for c, lo in enumerate(range(0, m, size))]


class _Evaluator:
    """dCov of ``(xs, ys[perm])`` for batches of permutations."""

    def __init__(self, s: PairedSample):
        self.s = s
        self.n = s.n
        self.matrix = self.n <= _MATRIX_N
        if self.matrix:
            self.dx = centered_distance_matrix(s.xs).values
            self.dy = centered_distance_matrix(s.ys).values
        # dCor denominator; permuting ys leaves dCov(Y, Y) unchanged
        self.denom = float(np.sqrt(max(_fast.self_dcov(s.xs), 0.0) * max(_fast.self_dcov(s.ys), 0.0)))

    def scale(self, kind: Statistic) -> float:
        """Natural magnitude of a statistic, used to size the tie band."""
        return {"dcov": self.denom, "dcov2": self.denom**2, "dcor": 1.0}[kind]

    def dcov(self, perms: np.ndarray) -> np.ndarray:
        if self.matrix:
            g = self.dy[perms[:, :, None], perms[:, None, :]]
            g *= self.dx
            return g.reshape(len(perms), -1).sum(axis=1) / float(self.n) ** 2
        out = np.empty(len(perms))
        for k, p in enumerate(perms):
            e_ab, e_a, e_b, e_cross = _fast.moments(self.s.xs, self.s.ys[p])
            out[k] = e_ab + e_a * e_b - 2.0 * e_cross
        return out

    def statistic(self, perms: np.ndarray, kind: Statistic) -> np.ndarray:
        v = self.dcov(perms)
        if kind == "dcov":
            return v
        if kind == "dcov2":
            v = np.maximum(v, 0.0)
            return v * v
        if self.denom == 0.0:
            return np.zeros_like(v)
        return v / self.denom


def perm_test(s: PairedSample, cfg: PermTestConfig | None = None, **kwargs) -> PermTestResult:
    """Permutation p-value ``(#{T(X, Y^tau) > T(X, Y)} + 1) / (m + 1)``.

    Permuted statistics within ``1e-9`` times the statistic's scale of the
    observed value count as ties, so rounding differences between
    summation orders cannot create exceedances. Permutations of ``ys`` are
    drawn uniformly (Fisher-Yates) with replacement from a seeded stream, or, with ``exhaustive=True`` and
    ``n <= 7``, all ``n! - 1`` non-identity permutations are used and ``m``
    becomes ``n! - 1``.

    Parameters
    ----------
    s : PairedSample
    cfg : PermTestConfig, optional
        Keyword arguments are forwarded to :class:`PermTestConfig` when
        ``cfg`` is omitted.
    """
    if cfg is None:
        cfg = PermTestConfig(**kwargs)
    elif kwargs:
        raise TypeError("pass either cfg or keyword settings, not both")
    s.require(2)
    n = s.n
    seed = fresh_seed() if cfg.seed is None else int(cfg.seed)
    ev = _Evaluator(s)
    ident = np.arange(n)[None, :]
    observed = float(ev.statistic(ident, cfg.statistic)[0])

    if cfg.exhaustive:
        if n > MAX_EXHAUSTIVE_N:
            raise InvalidParameter(f"exhaustive mode needs n <= {MAX_EXHAUSTIVE_N}, got {n}")
        perms = np.array(list(itertools.permutations(range(n)))[1:], dtype=np.int64)
        stats = ev.statistic(perms, cfg.statistic)
    else:
        def run(chunk):
            c, lo, hi = chunk
            rng = _chunk_rng(seed, c)
            perms = rng.permuted(np.tile(np.arange(n), (hi - lo, 1)), axis=1)
            return ev.statistic(perms, cfg.statistic)

        stats = np.concatenate(ordered_map(run, _chunks(cfg.m, n)))

    # permuted sums round differently from the observed one, so exact ties
    # (common with discrete data) are detected within a relative band
    tol = TIE_RTOL * ev.scale(cfg.statistic)
    exceed = stats >= observed - tol if cfg.ties == "geq" else stats > observed + tol
    m = len(stats)
    count = int(exceed.sum())
    return PermTestResult(observed, m, count, (count + 1) / (m + 1), seed, exceed=exceed)


# --- rejection-rate experiments -------------------------------------------

INDEPENDENT_GENERATORS = ("gaussian", "uniform", "exponential")


def _independent_sampler(gen: str) -> Callable[[int, np.random.Generator], PairedSample]:
    draws = {
        "gaussian": lambda n, rng: rng.standard_normal(n),
        "uniform": lambda n, rng: rng.uniform(-1.0, 1.0, n),
        "exponential": lambda n, rng: rng.exponential(1.0, n),
    }
    if gen not in draws:
        raise UnknownGenerator(f"unknown generator {gen!r}; choose from {INDEPENDENT_GENERATORS}")
    f = draws[gen]
    return lambda n, rng: PairedSample(f(n, rng), f(n, rng))


def spec_sampler(kind: str, **params) -> Callable[[int, np.random.Generator], PairedSample]:
    """Adapt a :mod:`depcov.generators` kind to the sampler signature used here."""
    GeneratorSpec(kind, 2, **params)  # validate eagerly

    def sample(n, rng):
        return generate(GeneratorSpec(kind, n, seed=int(rng.integers(2**63)), **params))

    return sample


def trial_seeds(seed: int, trials: int) -> list[tuple[int, int]]:
    """``(data_seed, perm_seed)`` per trial, split from one master seed."""
    children = np.random.SeedSequence(seed).spawn(trials)
    return [tuple(int(v) for v in c.generate_state(2, np.uint64)) for c in children]


def rejection_rate(
    sampler: Callable[[int, np.random.Generator], PairedSample],
    n: int,
    trials: int,
    alpha: float,
    seed: int,
    m: int = 999,
) -> float:
    """Fraction of ``trials`` simulated samples with ``p_hat < alpha``."""
    if trials < 1:
        raise InvalidParameter("trials must be at least 1")
    if not 0.0 <= alpha <= 1.0:
        raise InvalidParameter("alpha must lie in [0, 1]")
    rejected = 0
    for data_seed, perm_seed in trial_seeds(seed, trials):
        s = sampler(n, np.random.default_rng(data_seed))
        res = perm_test(s, PermTestConfig(m=m, seed=perm_seed))
        rejected += res.p_hat < alpha
    return rejected / trials


def level_experiment(gen: str, n: int, trials: int, alpha: float, seed: int, m: int = 999) -> float:
    """Empirical size of the test under independent margins from ``gen``.

    ``gen`` is one of ``gaussian``, ``uniform`` or ``exponential``; both
    margins are drawn independently from it.
    """
    return rejection_rate(_independent_sampler(gen), n, trials, alpha, seed, m)


def binomial_band(p: float, trials: int, z: float = 2.5758293035489004) -> tuple[float, float]:
    """Normal-approximation band ``p -/+ z sqrt(p (1-p) / trials)`` (99% by default)."""
    half = z * math.sqrt(p * (1 - p) / trials)
    return p - half, p + half
