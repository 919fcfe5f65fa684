"""Bundled score sets.

``departments.csv``
    Exam scores of two departments, ``D1`` (170 students) and ``D2`` (255),
    stored as score/count rows.
``olympiad.csv``
    Six raters' scores for five competition trainees (group ``G1``).
``substitutes.json``
    A report holding only the mean trapezoid of a second trainee group
    (``G2``), for comparison against ``G1``.
"""
from __future__ import annotations

from importlib import resources
from pathlib import Path

from .io import ingest_scores

NAMES = ("departments.csv", "olympiad.csv", "substitutes.json")


def path(name: str) -> Path:
    if name not in NAMES:
        raise KeyError(f"unknown dataset {name!r}; choose from {NAMES}")
    return Path(str(resources.files("fuzzgrade.data") / name))


def departments():
    return ingest_scores(path("departments.csv"))


def olympiad():
    return ingest_scores(path("olympiad.csv"))
