"""Desk-scale correlation experiments for prime and two-prime sequences.

The package sieves weighted sequences over a window (x, 2x], measures
their shifted correlation sums, and compares them against singular
series main terms.  Side labs cover the exponential sum and Dirichlet
polynomial identities the predictions rest on.
"""

from .circle import (
    ArcLabel,
    ArcParams,
    classify_arc,
    discrete_parseval,
    exponential_sum,
    geometric_phase_sum,
    major_arc_approximation,
    major_arc_fraction,
    major_arc_measure,
)
from .config import ExperimentConfig, load_config
from .correlate import (
    CorrelationProfile,
    correlate_direct,
    correlate_fft,
    correlate_weighted_pair,
)
from .dirichlet import (
    CharacterTable,
    DirichletCharacter,
    character_table,
    e2_dirichlet_poly,
    factorization_check,
    gauss_sum,
    mean_square_report,
)
from .errors import (
    ApcorrError,
    CacheChecksumError,
    CacheError,
    CacheFormatError,
    CacheVersionError,
    ConfigError,
    DomainError,
    ParameterError,
)
from .experiment import ReportBundle, run_experiment
from .kernels import BACKEND
from .predict import (
    ErrorReport,
    PredictionProfile,
    error_report,
    predict_prime_by_e2,
    predict_unweighted,
    predict_weighted_restricted,
    prediction_profile,
)
from .sieve import (
    E2Params,
    SieveSegment,
    WeightedSeries,
    build_segment,
    e2_indicator,
    e2_log_weights,
    factor_two,
    mertens_sum,
    prime_indicator,
    von_mangoldt_weights,
)
from .singular import (
    SingularSeriesTable,
    SmallPrimeCache,
    ramanujan_sum,
    singular_series,
    singular_series_batch,
    singular_series_sum,
    singular_table,
    truncated_batch,
    truncated_singular_series,
    twin_prime_constant,
)

__version__ = "0.1.0"
