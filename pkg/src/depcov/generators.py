"""Seeded samplers for the worked examples, plus Student-t densities.

Every sampler draws from ``numpy.random.Generator(PCG64(seed))``, so a
``(spec, seed)`` pair reproduces the same sample for a given version of
this package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy.special import gammaln

from .errors import InvalidParameter, UnknownGenerator
from .model import DiscreteBivariate, PairedSample

Kind = Literal["uniform_parabola", "uniform_parabola_grid", "bivariate_t", "gaussian_pair", "discrete"]
KINDS = ("uniform_parabola", "uniform_parabola_grid", "bivariate_t", "gaussian_pair", "discrete")


@dataclass(frozen=True)
class GeneratorSpec:
    """What to sample.

    ``nu`` is required for ``bivariate_t``, ``rho`` for ``gaussian_pair``
    and ``dist`` for ``discrete``. ``noise`` adds N(0, noise^2) to ``Y`` in
    the two parabola kinds.
    """

    kind: Kind
    n: int
    seed: int = 0
    nu: float | None = None
    rho: float | None = None
    dist: DiscreteBivariate | None = None
    noise: float = 0.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise UnknownGenerator(f"unknown generator kind {self.kind!r}")
        if int(self.n) != self.n or self.n < 1:
            raise InvalidParameter(f"n must be a positive integer, got {self.n!r}")
        if self.kind == "uniform_parabola_grid" and self.n < 2:
            raise InvalidParameter("the grid needs n >= 2")
        if self.kind == "bivariate_t" and not (self.nu is not None and self.nu > 0):
            raise InvalidParameter(f"bivariate_t needs nu > 0, got {self.nu!r}")
        if self.kind == "gaussian_pair" and not (self.rho is not None and -1 <= self.rho <= 1):
            raise InvalidParameter(f"gaussian_pair needs rho in [-1, 1], got {self.rho!r}")
        if self.kind == "discrete" and not isinstance(self.dist, DiscreteBivariate):
            raise InvalidParameter("discrete needs a DiscreteBivariate in dist")
        if not (math.isfinite(self.noise) and self.noise >= 0):
            raise InvalidParameter("noise must be a finite non-negative number")


def rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def parabola_grid(n: int) -> np.ndarray:
    """Equispaced points from -1 to 1 inclusive, step ``2 / (n - 1)``."""
    return np.linspace(-1.0, 1.0, n)


def sample_bivariate_t(n: int, nu: float, rng: np.random.Generator) -> np.ndarray:
    """``(n, 2)`` draws of ``Z / sqrt(W / nu)``, Z standard normal, W ~ chi2(nu)."""
    z = rng.standard_normal((n, 2))
    w = rng.gamma(nu / 2.0, 2.0, size=n)
    return z / np.sqrt(w / nu)[:, None]


def sample_gaussian_pair(n: int, rho: float, rng: np.random.Generator) -> np.ndarray:
    # explicit Cholesky factor of [[1, rho], [rho, 1]]; stays valid at |rho| = 1
    chol = np.array([[1.0, 0.0], [rho, math.sqrt(1.0 - rho * rho)]])
    return rng.standard_normal((n, 2)) @ chol.T


def sample_discrete(d: DiscreteBivariate, n: int, rng: np.random.Generator) -> np.ndarray:
    """Inverse-CDF draws of atom indices, returned as ``(n, 2)`` coordinates."""
    cdf = np.cumsum(d.ps)
    idx = np.searchsorted(cdf, rng.random(n) * cdf[-1], side="right")
    idx = np.minimum(idx, len(d) - 1)
    return np.column_stack([d.xs[idx], d.ys[idx]])


def generate(spec: GeneratorSpec) -> PairedSample:
    rng = rng_for(spec.seed)
    n = spec.n
    if spec.kind in ("uniform_parabola", "uniform_parabola_grid"):
        x = parabola_grid(n) if spec.kind == "uniform_parabola_grid" else rng.uniform(-1.0, 1.0, n)
        y = x * x
        if spec.noise > 0:
            y = y + spec.noise * rng.standard_normal(n)
        return PairedSample(x, y)
    if spec.kind == "bivariate_t":
        xy = sample_bivariate_t(n, spec.nu, rng)
    elif spec.kind == "gaussian_pair":
        xy = sample_gaussian_pair(n, spec.rho, rng)
    else:
        xy = sample_discrete(spec.dist, n, rng)
    return PairedSample(xy[:, 0], xy[:, 1])


# --- densities -------------------------------------------------------------

def _check_nu(nu):
    if not nu > 0:
        raise InvalidParameter(f"nu must be positive, got {nu!r}")


def t_constant(nu: float) -> float:
    """Normalizing constant ``Gamma((nu+1)/2) / (sqrt(nu pi) Gamma(nu/2))``."""
    _check_nu(nu)
    return math.exp(gammaln((nu + 1) / 2) - gammaln(nu / 2) - 0.5 * math.log(nu * math.pi))


def univariate_t_density(y, s: float, nu: float):
    """Centred Student-t density with scale ``s`` and ``nu`` degrees of freedom."""
    if not s > 0:
        raise InvalidParameter(f"scale must be positive, got {s!r}")
    c = t_constant(nu)
    z = np.asarray(y, dtype=np.float64) / s
    return c / s * (1.0 + z * z / nu) ** (-(nu + 1) / 2)


def bivariate_t_density(x, y, nu: float):
    """Standard bivariate t density (centre 0, identity scatter)."""
    _check_nu(nu)
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    return (1.0 + (x * x + y * y) / nu) ** (-(nu + 2) / 2) / (2 * math.pi)


def conditional_t_scale(x, nu: float):
    """Scale of ``Y | X = x``; its square is ``(nu + x^2) / (nu + 1)``."""
    _check_nu(nu)
    return np.sqrt((nu + np.asarray(x, dtype=np.float64) ** 2) / (nu + 1))


def conditional_t_density(y, x: float, nu: float):
    """Density of ``Y`` given ``X = x`` under the standard bivariate t."""
    return univariate_t_density(y, float(conditional_t_scale(x, nu)), nu + 1)


def conditional_t_variance(x, nu: float):
    """``Var(Y | X = x) = (nu + x^2) / (nu - 1)``, finite for ``nu > 1``."""
    if not nu > 1:
        raise InvalidParameter("the conditional variance needs nu > 1")
    return (nu + np.asarray(x, dtype=np.float64) ** 2) / (nu - 1)
