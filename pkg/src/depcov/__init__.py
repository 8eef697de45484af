"""Distance covariance and distance correlation.

Exact values for finite discrete distributions, O(n^2) and O(n log n)
sample estimators, and a permutation test of independence.

dCov and dCor are reported *without* the square root that some other
packages apply; :class:`DependenceReport` exposes both conventions.
"""

from .errors import (
    DegenerateMarginal,
    DepcovError,
    InvalidParameter,
    LengthMismatch,
    LengthTooSmall,
    MassNotUnit,
    NonFiniteCoordinate,
    NonPositiveMass,
    ParseError,
    UnknownGenerator,
)
from .generators import GeneratorSpec, generate
from .inference import PermTestConfig, level_experiment, perm_test
from .model import (
    Atom,
    ContingencyTable2x2,
    DependenceReport,
    DiscreteBivariate,
    Method,
    PairedSample,
    PermTestResult,
    validate,
)
from .population import (
    contingency_chisq_pop,
    contingency_cov_dist,
    contingency_dcov,
    pop_cov_distances,
    pop_cross_cov,
    pop_dcor,
    pop_dcov,
    population_report,
)
from .sample import dcor_sample, dcov_fast, dcov_naive, sample_report

__version__ = "0.1.0"
