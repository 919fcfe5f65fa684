"""Linguistic grading and fuzzy assessment of students and groups.

Scores on a 0-100 scale are mapped to labeled grade bands.  Each band gets
a triangular fuzzy number, a group is summarized by the mean of its
students' numbers, and groups (or individuals, via trapezoids) are ordered
by the abscissa of their center of gravity.
"""
from __future__ import annotations

import enum
import itertools
from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .core import (
    Comparison,
    EmptyInputError,
    FuzzyNumber,
    TrapezoidalFN,
    TriangularFN,
    add,
    compare,
    mean_fn,
    scalar_mul,
)
from .defuzz import cog

SCORE_MIN = 0.0
SCORE_MAX = 100.0
TIE_TOLERANCE = 1e-9


class ScoreRangeError(ValueError):
    def __init__(self, score):
        super().__init__(f"score out of range: {score}")
        self.score = score


@dataclass(frozen=True)
class GradeBand:
    label: str
    lo: float
    hi: float
    description: str = ""

    def __post_init__(self):
        object.__setattr__(self, "lo", float(self.lo))
        object.__setattr__(self, "hi", float(self.hi))
        if not self.lo <= self.hi:
            raise ValueError(f"band {self.label!r}: lo > hi")

    def __contains__(self, score) -> bool:
        return self.lo <= score <= self.hi


@dataclass(frozen=True)
class GradeScale:
    """Ordered, disjoint grade bands, best band first.

    Bands may leave gaps between integer anchors (84 and 85, say); a score
    falling in such a gap belongs to the band below it.
    """

    bands: tuple[GradeBand, ...]

    def __post_init__(self):
        bands = tuple(sorted(self.bands, key=lambda b: b.lo, reverse=True))
        object.__setattr__(self, "bands", bands)
        if not bands:
            raise ValueError("a grade scale needs at least one band")
        labels = [b.label for b in bands]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate band labels in {labels}")
        for upper, lower in zip(bands, bands[1:]):
            if lower.hi >= upper.lo:
                raise ValueError(f"bands {lower.label!r} and {upper.label!r} overlap")
        if bands[-1].lo != SCORE_MIN or bands[0].hi != SCORE_MAX:
            raise ValueError("grade bands must cover [0, 100]")

    @property
    def labels(self) -> list[str]:
        return [b.label for b in self.bands]

    def band(self, label: str) -> GradeBand:
        for b in self.bands:
            if b.label == label:
                return b
        raise KeyError(label)


def default_scale() -> GradeScale:
    return GradeScale(
        (
            GradeBand("A", 85, 100, "excellent"),
            GradeBand("B", 75, 84, "very good"),
            GradeBand("C", 60, 74, "good"),
            GradeBand("D", 50, 59, "fair"),
            GradeBand("F", 0, 49, "unsatisfactory"),
        )
    )


def grade_of(score: float, scale: Optional[GradeScale] = None) -> str:
    scale = scale or default_scale()
    if not SCORE_MIN <= score <= SCORE_MAX:
        raise ScoreRangeError(score)
    # bands are best-first, so the first band starting at or below the score
    # either contains it or is the band just below a gap
    for b in scale.bands:
        if b.lo <= score:
            return b.label
    raise AssertionError("unreachable: scale covers 0")


@dataclass(frozen=True)
class ScoreRecord:
    group_id: str
    student_id: str
    score: float
    rater_id: Optional[str] = None

    def __post_init__(self):
        if not SCORE_MIN <= self.score <= SCORE_MAX:
            raise ScoreRangeError(self.score)


class CalibrationMode(str, enum.Enum):
    MIDPOINT = "midpoint"
    EMPIRICAL = "empirical"


@dataclass(frozen=True)
class GradeFNMap(Mapping):
    """Calibrated triangular number per grade label.

    ``fallback`` lists labels whose number came from the band midpoint
    because the data held no score in that band (empirical mode only).
    """

    fns: dict
    mode: CalibrationMode = CalibrationMode.MIDPOINT
    fallback: tuple = ()

    def __getitem__(self, label: str) -> TriangularFN:
        return self.fns[label]

    def __iter__(self):
        return iter(self.fns)

    def __len__(self):
        return len(self.fns)


def midpoint_tfn(band: GradeBand) -> TriangularFN:
    return TriangularFN(band.lo, (band.lo + band.hi) / 2.0, band.hi)


def calibrate_grade_fns(
    records: Sequence[ScoreRecord],
    scale: Optional[GradeScale] = None,
    mode: CalibrationMode | str = CalibrationMode.MIDPOINT,
) -> GradeFNMap:
    """Assign a triangular number to every band of ``scale``.

    Midpoint mode uses ``(lo, (lo + hi) / 2, hi)`` of each band.  Empirical
    mode uses ``(min, mean, max)`` of the scores observed in the band and
    falls back to the midpoint for empty bands.
    """
    scale = scale or default_scale()
    mode = CalibrationMode(mode)
    records = list(records)
    if not records:
        raise EmptyInputError("no data")

    if mode is CalibrationMode.MIDPOINT:
        return GradeFNMap({b.label: midpoint_tfn(b) for b in scale.bands}, mode)

    by_label: dict[str, list[float]] = {label: [] for label in scale.labels}
    for r in records:
        by_label[grade_of(r.score, scale)].append(r.score)
    fns, fallback = {}, []
    for b in scale.bands:
        scores = by_label[b.label]
        if scores:
            fns[b.label] = TriangularFN(min(scores), sum(scores) / len(scores), max(scores))
        else:
            fns[b.label] = midpoint_tfn(b)
            fallback.append(b.label)
    return GradeFNMap(fns, mode, tuple(fallback))


def count_grades(
    records: Iterable[ScoreRecord | float], scale: Optional[GradeScale] = None
) -> dict[str, int]:
    """Tally scores (or score records) per grade label, in scale order."""
    scale = scale or default_scale()
    counts = {label: 0 for label in scale.labels}
    for r in records:
        score = r.score if isinstance(r, ScoreRecord) else r
        counts[grade_of(score, scale)] += 1
    return counts


def group_mean_tfn(counts: Mapping[str, int], grade_fns: Mapping[str, TriangularFN]) -> TriangularFN:
    """Mean of the grade numbers of every student, weighted by grade counts."""
    n = sum(counts.values())
    if n <= 0:
        raise EmptyInputError("no data")
    total = None
    for label, k in counts.items():
        if k < 0:
            raise ValueError(f"negative count for {label!r}")
        if k == 0:
            continue
        term = scalar_mul(k, grade_fns[label])
        total = term if total is None else add(total, term)
    return TriangularFN(*(x / n for x in total.entries))


def individual_tpfn(scores: Sequence[float], scale: Optional[GradeScale] = None) -> TrapezoidalFN:
    """Trapezoid spanning the grade bands touched, with plateau [min, max] of the scores.

    A top score sitting in the gap above its band (84.5 under the default
    scale) stretches the right foot to the score itself.
    """
    scale = scale or default_scale()
    scores = list(scores)
    if not scores:
        raise EmptyInputError("no data")
    lo, hi = min(scores), max(scores)
    lo_band = scale.band(grade_of(lo, scale))
    hi_band = scale.band(grade_of(hi, scale))
    return TrapezoidalFN(lo_band.lo, lo, hi, max(hi_band.hi, hi))


def characterize(fn: FuzzyNumber, scale: Optional[GradeScale] = None) -> tuple[str, str]:
    """Linguistic range ``(low, high)`` of a fuzzy assessment.

    Triangles are read off their outer entries, trapezoids off their
    plateau.
    """
    scale = scale or default_scale()
    if isinstance(fn, TriangularFN):
        lo, hi = fn.a, fn.c
    else:
        lo, hi = fn.b, fn.c
    clamp = lambda v: min(max(v, SCORE_MIN), SCORE_MAX)  # noqa: E731
    return grade_of(clamp(lo), scale), grade_of(clamp(hi), scale)


class Model(str, enum.Enum):
    TFN = "TFN"
    TPFN = "TpFN"


@dataclass(frozen=True)
class GroupAssessment:
    group_id: str
    model: Model
    fn: FuzzyNumber
    centroid_x: float
    linguistic_range: tuple[str, str]
    grade_counts: dict = field(default_factory=dict, hash=False)


def assess_group_tfn(
    group_id: str,
    scores: Iterable[ScoreRecord | float],
    grade_fns: Mapping[str, TriangularFN],
    scale: Optional[GradeScale] = None,
) -> GroupAssessment:
    scale = scale or default_scale()
    counts = count_grades(scores, scale)
    fn = group_mean_tfn(counts, grade_fns)
    return assessment_from_fn(group_id, fn, scale, counts)


def assess_group_tpfn(
    group_id: str,
    students: Mapping[str, TrapezoidalFN],
    scale: Optional[GradeScale] = None,
    counts: Optional[dict] = None,
) -> GroupAssessment:
    """Group assessment as the mean of the students' trapezoids."""
    if not students:
        raise EmptyInputError("no data")
    fn = mean_fn(students[k] for k in sorted(students))
    return assessment_from_fn(group_id, fn, scale, counts or {})


def assessment_from_fn(
    group_id: str, fn: FuzzyNumber, scale: Optional[GradeScale] = None, counts: Optional[dict] = None
) -> GroupAssessment:
    scale = scale or default_scale()
    model = Model.TFN if isinstance(fn, TriangularFN) else Model.TPFN
    return GroupAssessment(
        group_id=group_id,
        model=model,
        fn=fn,
        centroid_x=cog(fn).x,
        linguistic_range=characterize(fn, scale),
        grade_counts=dict(counts or {}),
    )


@dataclass(frozen=True)
class RankEntry:
    id: str
    centroid_x: float
    rank: int
    tied: bool


@dataclass(frozen=True)
class PairComparison:
    first: str
    second: str
    relation: Comparison


@dataclass(frozen=True)
class Ranking:
    entries: tuple[RankEntry, ...]
    pairs: tuple[PairComparison, ...] = ()

    @property
    def order(self) -> list[str]:
        return [e.id for e in self.entries]

    def rank_of(self, id: str) -> int:
        for e in self.entries:
            if e.id == id:
                return e.rank
        raise KeyError(id)

    @property
    def decided_by_defuzzification(self) -> bool:
        """True when some pair is not comparable under the partial order."""
        return any(not p.relation.comparable for p in self.pairs)


def _rank(items: Sequence[tuple[str, float]]) -> tuple[RankEntry, ...]:
    ids = [i for i, _ in items]
    if len(set(ids)) != len(ids):
        raise ValueError(f"duplicate ids in ranking: {ids}")
    ordered = sorted(items, key=lambda t: (-t[1], t[0]))

    # ties are measured against the first member of each run
    runs: list[list[tuple[str, float]]] = []
    for item in ordered:
        if runs and runs[-1][0][1] - item[1] <= TIE_TOLERANCE:
            runs[-1].append(item)
        else:
            runs.append([item])

    entries, position = [], 1
    for run in runs:
        for id_, x in sorted(run, key=lambda t: t[0]):
            entries.append(RankEntry(id_, x, position, len(run) > 1))
        position += len(run)
    return tuple(entries)


def rank_groups(assessments: Sequence[GroupAssessment]) -> Ranking:
    """Order groups by centroid abscissa, best first.

    Also records, for every pair, how the two fuzzy numbers relate under
    the partial order, which shows whether defuzzification was needed to
    separate them.
    """
    assessments = list(assessments)
    if not assessments:
        raise EmptyInputError("no data")
    entries = _rank([(g.group_id, g.centroid_x) for g in assessments])
    by_id = {g.group_id: g for g in assessments}
    pairs = tuple(
        PairComparison(i, j, compare(by_id[i].fn, by_id[j].fn))
        for i, j in itertools.combinations(sorted(by_id), 2)
    )
    return Ranking(entries, pairs)


def rank_individuals(students: Mapping[str, TrapezoidalFN]) -> Ranking:
    if not students:
        raise EmptyInputError("no data")
    items = []
    for sid in sorted(students):
        fn = students[sid]
        if not isinstance(fn, TrapezoidalFN):
            raise TypeError(f"student {sid!r}: individual ranking needs a trapezoidal number")
        try:
            items.append((sid, cog(fn).x))
        except ValueError as exc:
            raise type(exc)(f"student {sid!r}: {exc}") from exc
    return Ranking(_rank(items))
