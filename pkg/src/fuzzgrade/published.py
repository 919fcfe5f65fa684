"""Published reference values for the bundled datasets, and an audit against them.

The bundled score sets come with printed aggregates (group means,
centroids, classical score means), rounded to two decimals.  ``audit``
recomputes each printed quantity and reports every one that disagrees by
more than the rounding allowance.  Recomputed values are authoritative;
the printed ones are only reported.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .assessment import GroupAssessment, Model
from .core import FuzzyNumber, fuzzy_number, isclose

# printed values carry two decimals; drift past this is an erratum
PRINT_TOLERANCE = 0.01


@dataclass(frozen=True)
class PublishedGroup:
    name: str
    model: Model
    fn: tuple
    counts: Optional[dict] = None
    centroid_x: Optional[float] = None
    score_mean: Optional[float] = None

    @property
    def fuzzy_number(self) -> FuzzyNumber:
        return fuzzy_number(self.fn)

    def matches(self, group: GroupAssessment, fn: Optional[FuzzyNumber] = None) -> bool:
        """Match on grade counts when both sides have them, else on the fuzzy number."""
        if group.model is not self.model:
            return False
        if self.counts is not None and group.grade_counts:
            return {k: v for k, v in group.grade_counts.items() if v} == self.counts
        if self.counts is not None:
            return False
        return isclose(fn or group.fn, self.fuzzy_number, atol=1e-9)


PUBLISHED_GROUPS = (
    PublishedGroup(
        "department D1",
        Model.TFN,
        (63.53, 71.74, 83.47),
        counts={"A": 60, "B": 40, "C": 20, "D": 30, "F": 20},
        centroid_x=72.91,
        score_mean=72.44,
    ),
    PublishedGroup(
        "department D2",
        Model.TFN,
        (65.88, 72.63, 79.53),
        counts={"A": 60, "B": 90, "C": 45, "D": 45, "F": 15},
        centroid_x=72.68,
        score_mean=72.04,
    ),
    PublishedGroup(
        "olympiad trainees (grade model)",
        Model.TFN,
        (60.33, 68.98, 79.63),
        counts={"A": 14, "B": 4, "C": 1, "D": 4, "F": 7},
    ),
    PublishedGroup(
        "olympiad trainees",
        Model.TPFN,
        (47.0, 64.2, 79.0, 86.6),
        centroid_x=68.84,
    ),
    PublishedGroup(
        "olympiad substitutes",
        Model.TPFN,
        (47.8, 65.3, 78.1, 85.9),
        centroid_x=68.13,
    ),
)

# (better, worse): printed conclusions about which group performed better
PUBLISHED_ORDERINGS = (
    ("department D1", "department D2"),
    ("olympiad trainees", "olympiad substitutes"),
)

ENTRY_NAMES = {3: ("left", "middle", "right"), 4: ("a", "b", "c", "d")}


@dataclass(frozen=True)
class Erratum:
    subject: str
    quantity: str
    published: float
    computed: float
    note: str = ""

    @property
    def delta(self) -> float:
        return self.computed - self.published


def find_published(group: GroupAssessment) -> Optional[PublishedGroup]:
    for pub in PUBLISHED_GROUPS:
        if pub.matches(group):
            return pub
    return None


def audit_group(
    group: GroupAssessment, score_mean: Optional[float] = None, tolerance: float = PRINT_TOLERANCE
) -> list[Erratum]:
    """Compare a recomputed group assessment with its printed counterpart, if any."""
    pub = find_published(group)
    if pub is None:
        return []
    subject = f"{group.group_id} ({pub.name})"
    errata = []
    names = ENTRY_NAMES[len(pub.fn)]
    for name, printed, computed in zip(names, pub.fn, group.fn.entries):
        if abs(printed - computed) > tolerance:
            errata.append(
                Erratum(subject, f"mean fuzzy number, {name} entry", printed, computed,
                        "weighted mean of the grade numbers recomputed from the counts")
            )
    if pub.centroid_x is not None and abs(pub.centroid_x - group.centroid_x) > tolerance:
        errata.append(
            Erratum(subject, "centroid abscissa", pub.centroid_x, group.centroid_x,
                    "closed form and quadrature agree on the recomputed value")
        )
    if score_mean is not None and pub.score_mean is not None:
        if abs(pub.score_mean - score_mean) > tolerance:
            errata.append(
                Erratum(subject, "classical score mean", pub.score_mean, score_mean,
                        "arithmetic mean of the listed scores")
            )
    return errata


def audit_ordering(groups: Sequence[GroupAssessment]) -> list[Erratum]:
    """Flag printed better/worse conclusions that the recomputed centroids reverse."""
    found = {}
    for g in groups:
        pub = find_published(g)
        if pub is not None:
            found[pub.name] = g
    errata = []
    for better, worse in PUBLISHED_ORDERINGS:
        if better in found and worse in found:
            gb, gw = found[better], found[worse]
            if gb.centroid_x < gw.centroid_x:
                errata.append(
                    Erratum(
                        f"{gb.group_id} vs {gw.group_id}",
                        "centroid difference (better minus worse)",
                        published=_printed_gap(better, worse),
                        computed=gb.centroid_x - gw.centroid_x,
                        note=f"printed conclusion ranks {gb.group_id} above {gw.group_id}; "
                        "recomputed centroids reverse it",
                    )
                )
    return errata


def _printed_gap(better: str, worse: str) -> float:
    by_name = {p.name: p for p in PUBLISHED_GROUPS}
    xb, xw = by_name[better].centroid_x, by_name[worse].centroid_x
    return round(xb - xw, 10)
