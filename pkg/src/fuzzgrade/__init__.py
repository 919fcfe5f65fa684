"""Triangular and trapezoidal fuzzy numbers for grading and ranking student groups."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    ClosedInterval,
    Comparison,
    DegenerateError,
    EmptyInputError,
    FuzzyNumber,
    TrapezoidalFN,
    TriangularFN,
    add,
    alpha_cut,
    compare,
    fuzzy_number,
    mean_fn,
    membership,
    opposite,
    scalar_add,
    scalar_mul,
    subtract,
)
from .defuzz import (  # noqa: E402
    Centroid,
    PiecewiseLinearMembership,
    cog,
    cog_numeric,
    cog_tfn,
    cog_tpfn,
)
from .assessment import (  # noqa: E402
    GradeBand,
    GradeFNMap,
    GradeScale,
    GroupAssessment,
    Ranking,
    ScoreRecord,
    calibrate_grade_fns,
    characterize,
    count_grades,
    default_scale,
    grade_of,
    group_mean_tfn,
    individual_tpfn,
    rank_groups,
    rank_individuals,
)
