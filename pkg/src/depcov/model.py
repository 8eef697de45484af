"""Domain types shared by the population, sample and inference modules.

All types are frozen after construction. Arrays held by
:class:`PairedSample` are marked read-only.
"""

from __future__ import annotations

import csv
import enum
import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable

import numpy as np

from .errors import (
    InvalidParameter,
    LengthMismatch,
    LengthTooSmall,
    MassNotUnit,
    NonFiniteCoordinate,
    NonPositiveMass,
    ParseError,
)

MASS_TOL = 1e-12


@dataclass(frozen=True)
class Atom:
    """A support point ``(x, y)`` carrying probability mass ``p``."""

    x: float
    y: float
    p: float

    def __post_init__(self):
        for name in ("x", "y", "p"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise NonFiniteCoordinate(f"atom ({self.x}, {self.y}) has a non-finite coordinate")
        if not self.p > 0:
            raise NonPositiveMass(f"atom ({self.x}, {self.y}) has mass {self.p} <= 0")


def _as_atom(a) -> Atom:
    if isinstance(a, Atom):
        return a
    x, y, p = a
    return Atom(x, y, p)


@dataclass(frozen=True, init=False)
class DiscreteBivariate:
    """Finite bivariate distribution given by weighted atoms.

    Atoms sharing the same ``(x, y)`` are merged (masses added) on
    construction, keeping first-appearance order. The masses must sum to one
    within ``1e-12``; nothing is renormalized.

    Parameters
    ----------
    atoms : iterable of Atom or (x, y, p) triples
    """

    atoms: tuple

    def __init__(self, atoms: Iterable):
        atoms = [_as_atom(a) for a in atoms]
        if not atoms:
            raise InvalidParameter("a distribution needs at least one atom")
        merged: dict[tuple[float, float], list[float]] = {}
        for a in atoms:
            merged.setdefault((a.x, a.y), []).append(a.p)
        out = tuple(Atom(x, y, math.fsum(ps)) for (x, y), ps in merged.items())
        total = math.fsum(a.p for a in out)
        if abs(total - 1.0) > MASS_TOL:
            raise MassNotUnit(f"masses sum to {total!r}, not 1")
        object.__setattr__(self, "atoms", out)

    def __len__(self):
        return len(self.atoms)

    def __iter__(self):
        return iter(self.atoms)

    @cached_property
    def xs(self) -> np.ndarray:
        return _frozen(np.array([a.x for a in self.atoms]))

    @cached_property
    def ys(self) -> np.ndarray:
        return _frozen(np.array([a.y for a in self.atoms]))

    @cached_property
    def ps(self) -> np.ndarray:
        return _frozen(np.array([a.p for a in self.atoms]))

    def as_dict(self) -> dict[tuple[float, float], float]:
        """Mapping ``(x, y) -> p``."""
        return {(a.x, a.y): a.p for a in self.atoms}

    def to_dict(self) -> dict:
        return {"atoms": [[a.x, a.y, a.p] for a in self.atoms]}

    @classmethod
    def from_dict(cls, d: dict) -> "DiscreteBivariate":
        return cls(d["atoms"])

    @classmethod
    def product(cls, xs, px, ys, py) -> "DiscreteBivariate":
        """Joint law of independent margins ``(xs, px)`` and ``(ys, py)``."""
        return cls((x, y, a * b) for x, a in zip(xs, px) for y, b in zip(ys, py))

    def __eq__(self, other):
        if not isinstance(other, DiscreteBivariate):
            return NotImplemented
        return self.atoms == other.atoms

    def __hash__(self):
        return hash(self.atoms)


def validate(d) -> DiscreteBivariate:
    """Check and normalize a distribution given as atoms or a distribution.

    Duplicate ``(x, y)`` atoms are merged. Raises :class:`NonPositiveMass`,
    :class:`MassNotUnit` or :class:`NonFiniteCoordinate`.
    """
    if isinstance(d, DiscreteBivariate):
        return DiscreteBivariate(d.atoms)
    return DiscreteBivariate(d)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, init=False)
class PairedSample:
    """Two equal-length finite real vectors ``xs`` and ``ys``."""

    xs: np.ndarray
    ys: np.ndarray

    def __init__(self, xs, ys):
        xs = np.array(xs, dtype=np.float64).ravel()
        ys = np.array(ys, dtype=np.float64).ravel()
        if xs.shape != ys.shape:
            raise LengthMismatch(f"xs has length {xs.size} but ys has length {ys.size}")
        if xs.size < 1:
            raise LengthTooSmall("a sample needs at least one pair")
        if not (np.isfinite(xs).all() and np.isfinite(ys).all()):
            raise NonFiniteCoordinate("sample contains non-finite values")
        object.__setattr__(self, "xs", _frozen(xs))
        object.__setattr__(self, "ys", _frozen(ys))

    @property
    def n(self) -> int:
        return self.xs.size

    def __len__(self):
        return self.n

    def require(self, n_min: int = 2) -> "PairedSample":
        if self.n < n_min:
            raise LengthTooSmall(f"need at least {n_min} pairs, got {self.n}")
        return self

    def to_dict(self) -> dict:
        return {"xs": self.xs.tolist(), "ys": self.ys.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> "PairedSample":
        return cls(d["xs"], d["ys"])

    def __eq__(self, other):
        if not isinstance(other, PairedSample):
            return NotImplemented
        return np.array_equal(self.xs, other.xs) and np.array_equal(self.ys, other.ys)

    __hash__ = None


@dataclass(frozen=True)
class ContingencyTable2x2:
    """Joint law of two Bernoulli variables, ``pij = P(X=i, Y=j)``."""

    p00: float
    p01: float
    p10: float
    p11: float

    def __post_init__(self):
        for name in ("p00", "p01", "p10", "p11"):
            v = float(getattr(self, name))
            if not math.isfinite(v) or v < 0:
                raise NonPositiveMass(f"{name} = {v} is negative or not finite")
            object.__setattr__(self, name, v)
        total = math.fsum(self.cells)
        if abs(total - 1.0) > MASS_TOL:
            raise MassNotUnit(f"cell probabilities sum to {total!r}, not 1")

    @classmethod
    def from_counts(cls, n00, n01, n10, n11) -> "ContingencyTable2x2":
        total = n00 + n01 + n10 + n11
        return cls(n00 / total, n01 / total, n10 / total, n11 / total)

    @property
    def cells(self) -> tuple[float, float, float, float]:
        return (self.p00, self.p01, self.p10, self.p11)

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.p00, self.p01], [self.p10, self.p11]])

    @property
    def row_marginals(self) -> tuple[float, float]:
        """``(p0., p1.)``, the law of X."""
        return (self.p00 + self.p01, self.p10 + self.p11)

    @property
    def col_marginals(self) -> tuple[float, float]:
        """``(p.0, p.1)``, the law of Y."""
        return (self.p00 + self.p10, self.p01 + self.p11)

    def to_bivariate(self) -> DiscreteBivariate:
        """Embed as a distribution on ``{0, 1}^2``; empty cells are dropped."""
        cells = [(0, 0, self.p00), (0, 1, self.p01), (1, 0, self.p10), (1, 1, self.p11)]
        return DiscreteBivariate((x, y, p) for x, y, p in cells if p > 0)

    def to_dict(self) -> dict:
        return {"p00": self.p00, "p01": self.p01, "p10": self.p10, "p11": self.p11}

    @classmethod
    def from_dict(cls, d: dict) -> "ContingencyTable2x2":
        return cls(d["p00"], d["p01"], d["p10"], d["p11"])


class Method(str, enum.Enum):
    POPULATION_EXACT = "population-exact"
    SAMPLE_NAIVE = "sample-naive"
    SAMPLE_FAST = "sample-fast"
    CONTINGENCY = "contingency-closed-form"


REPORT_KEYS = ("dcov", "dcor", "cov_dist", "cross_cov_dist", "method", "degenerate")


@dataclass(frozen=True)
class DependenceReport:
    """dCov, dCor and the two covariances of distances for one input.

    ``dcov`` and ``dcor`` are *not* square-rooted; see :attr:`dcov_sqrt`
    and :attr:`dcor_sqrt` for the conventional versions.
    """

    dcov: float
    dcor: float
    cov_dist: float
    cross_cov_dist: float
    method: Method
    degenerate: bool = False

    def __post_init__(self):
        object.__setattr__(self, "method", Method(self.method))
        if self.dcov < -1e-9:
            raise InvalidParameter(f"dcov = {self.dcov} is negative")
        if not self.degenerate and not 0.0 <= self.dcor <= 1.0:
            raise InvalidParameter(f"dcor = {self.dcor} outside [0, 1]")

    @property
    def dcov_sqrt(self) -> float:
        return math.sqrt(max(self.dcov, 0.0))

    @property
    def dcor_sqrt(self) -> float:
        return math.sqrt(max(self.dcor, 0.0))

    def to_dict(self) -> dict:
        return {
            "dcov": self.dcov,
            "dcor": self.dcor,
            "cov_dist": self.cov_dist,
            "cross_cov_dist": self.cross_cov_dist,
            "method": self.method.value,
            "degenerate": self.degenerate,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "DependenceReport":
        missing = set(REPORT_KEYS) - set(d)
        if missing:
            raise ParseError(f"report is missing keys {sorted(missing)}")
        return cls(
            float(d["dcov"]),
            float(d["dcor"]),
            float(d["cov_dist"]),
            float(d["cross_cov_dist"]),
            Method(d["method"]),
            bool(d["degenerate"]),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, s: str) -> "DependenceReport":
        return cls.from_dict(json.loads(s))


@dataclass(frozen=True)
class PermTestResult:
    """Outcome of a permutation test.

    ``p_hat = (exceed_count + 1) / (m + 1)``.
    """

    observed: float
    m: int
    exceed_count: int
    p_hat: float
    seed: int
    exceed: np.ndarray | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.m < 1:
            raise InvalidParameter("m must be at least 1")
        if not 0 <= self.exceed_count <= self.m:
            raise InvalidParameter("exceed_count must lie in [0, m]")
        if self.p_hat != (self.exceed_count + 1) / (self.m + 1):
            raise InvalidParameter("p_hat inconsistent with exceed_count and m")

    def to_dict(self) -> dict:
        return {
            "observed": self.observed,
            "m": self.m,
            "exceed_count": self.exceed_count,
            "p_hat": self.p_hat,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PermTestResult":
        return cls(float(d["observed"]), int(d["m"]), int(d["exceed_count"]),
                   float(d["p_hat"]), int(d["seed"]))


# --- CSV formats -----------------------------------------------------------

def _read_rows(path, header):
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"no such file: {path}")
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        try:
            first = next(reader)
        except StopIteration:
            raise ParseError("empty file, header missing", row=1) from None
        if [c.strip() for c in first] != list(header):
            raise ParseError(f"expected header {','.join(header)!r}, got {','.join(first)!r}", row=1)
        rows = []
        for rowno, raw in enumerate(reader, start=2):
            if not raw or all(not c.strip() for c in raw):
                continue
            if len(raw) != len(header):
                raise ParseError(f"row {rowno}: expected {len(header)} fields, got {len(raw)}",
                                 row=rowno)
            vals = []
            for col, (name, c) in enumerate(zip(header, raw), start=1):
                try:
                    vals.append(float(c))
                except ValueError:
                    raise ParseError(f"row {rowno}, column {name!r}: cannot parse {c!r}",
                                     row=rowno, column=col) from None
            rows.append(vals)
    return rows


def read_distribution_csv(path) -> DiscreteBivariate:
    """Read a distribution from a CSV with header ``x,y,p``."""
    return DiscreteBivariate(_read_rows(path, ("x", "y", "p")))


def write_distribution_csv(d: DiscreteBivariate, path) -> None:
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "y", "p"])
        for a in d.atoms:
            w.writerow([repr(a.x), repr(a.y), repr(a.p)])


def read_sample_csv(path) -> PairedSample:
    """Read a paired sample from a CSV with header ``x,y``."""
    rows = _read_rows(path, ("x", "y"))
    if not rows:
        raise LengthTooSmall("sample file has no data rows")
    arr = np.asarray(rows)
    return PairedSample(arr[:, 0], arr[:, 1])


def write_sample_csv(s: PairedSample, path) -> None:
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "y"])
        for x, y in zip(s.xs.tolist(), s.ys.tolist()):
            w.writerow([repr(x), repr(y)])
