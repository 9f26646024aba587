"""Exact counting and asymptotics toolkit for k-noncrossing tangled diagrams.

The counting sequences t(n) (diagrams), t_tilde(n) (diagrams without
isolated points) and f(m) (perfect matchings) are computed by several
independent exact methods that cross-check each other: confined lattice
walk DP, binomial-convolution transforms, a Bessel-determinant generating
function, and guessed-then-verified linear recurrences with polynomial
coefficients.  An asymptotics module validates the predicted growth law
numerically.
"""

__version__ = "0.1.0"

from .asymptotics import (
    AsymptoticsReport,
    PredictedConstants,
    analyze,
    estimate_ck,
    estimate_exponent,
    estimate_growth,
    estimate_joint,
    predicted_constants,
    richardson_extrapolate,
)
from .errors import (
    BruteForceBoundError,
    CompositionError,
    CoverageError,
    InsufficientTermsError,
    IntegrityError,
    NonUnitSeriesError,
    ResourceLimitError,
    SingularLeadingCoefficientError,
    TangleError,
)
from .recurrence import (
    GuessConfig,
    PRecurrence,
    RecurrenceCheck,
    extend_sequence,
    guess_recurrence,
    required_terms,
    verify_recurrence,
)
from .series import (
    FunctionalEquationReport,
    RationalSeries,
    bessel_series,
    matching_counts_via_determinant,
    series,
    series_determinant,
    verify_functional_equation,
)
from .transforms import (
    CountSequence,
    binomial_row,
    inverse_binomial,
    matching_sequence,
    t_from_tilde,
    tilde_from_f,
)
from .walks import (
    StepRegime,
    count_day_walks_brute,
    count_matchings_prefix,
    count_tangled_direct,
    count_tangled_prefix,
    enumerate_day_walks,
    is_chamber_state,
    iter_day_walks,
    legal_steps,
    origin_state,
)

__all__ = [name for name in dir() if not name.startswith("_")]
