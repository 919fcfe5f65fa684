"""Reading score files and grade configurations, writing reports.

Score CSV columns: ``group_id,student_id,rater_id,score,count``.  The
``rater_id`` and ``count`` columns may be omitted or left blank; ``count``
repeats a row, so ``100`` with count ``2`` means two scores of 100.
"""
from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import __version__
from .assessment import (
    SCORE_MAX,
    SCORE_MIN,
    CalibrationMode,
    GradeBand,
    GradeFNMap,
    GradeScale,
    ScoreRecord,
    default_scale,
)
from .core import TriangularFN

REQUIRED_COLUMNS = ("group_id", "student_id", "score")
OPTIONAL_COLUMNS = ("rater_id", "count")


class InputError(ValueError):
    """Malformed input file; carries the location when known."""

    def __init__(self, message: str, path=None, line: Optional[int] = None):
        where = ""
        if path is not None:
            where = f"{path}: "
        super().__init__(f"{where}{message}")
        self.path = path
        self.line = line


def ingest_scores(path) -> list[ScoreRecord]:
    path = Path(path)
    try:
        fh = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot open score file ({exc.strerror})", path) from exc
    with fh:
        reader = csv.DictReader(fh)
        header = [h.strip() for h in (reader.fieldnames or [])]
        unknown = set(header) - set(REQUIRED_COLUMNS) - set(OPTIONAL_COLUMNS)
        if not header or unknown or not set(REQUIRED_COLUMNS) <= set(header):
            raise InputError("malformed CSV header", path, 1)
        reader.fieldnames = header

        records = []
        for row in reader:
            line = reader.line_num
            if None in row:
                raise InputError(f"parse error at line {line}: too many fields", path, line)
            values = {k: (v or "").strip() for k, v in row.items()}
            try:
                score = float(values["score"])
            except ValueError:
                raise InputError(f"parse error at line {line}", path, line) from None
            if not math.isfinite(score):
                raise InputError(f"parse error at line {line}", path, line)
            if not SCORE_MIN <= score <= SCORE_MAX:
                raise InputError(f"score out of range at line {line}", path, line)
            count = 1
            if values.get("count"):
                try:
                    count = int(values["count"])
                except ValueError:
                    raise InputError(f"parse error at line {line}: bad count", path, line) from None
                if count < 0:
                    raise InputError(f"parse error at line {line}: negative count", path, line)
            if not values["group_id"]:
                raise InputError(f"parse error at line {line}: missing group_id", path, line)
            record = ScoreRecord(
                group_id=values["group_id"],
                student_id=values["student_id"],
                score=score,
                rater_id=values.get("rater_id") or None,
            )
            records.extend([record] * count)
    return records


def group_records(records) -> dict[str, list[ScoreRecord]]:
    """Split records by group, groups sorted by id."""
    groups: dict[str, list[ScoreRecord]] = {}
    for r in records:
        groups.setdefault(r.group_id, []).append(r)
    return {k: groups[k] for k in sorted(groups)}


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot open file ({exc.strerror})", path) from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON at line {exc.lineno}", path, exc.lineno) from exc


def scale_from_json(data) -> GradeScale:
    try:
        return GradeScale(
            tuple(
                GradeBand(str(b["label"]), float(b["lo"]), float(b["hi"]), str(b.get("description", "")))
                for b in data
            )
        )
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed grade scale: {exc!r}") from exc
    except ValueError as exc:
        raise InputError(f"invalid grade scale: {exc}") from exc


def scale_to_json(scale: GradeScale) -> list[dict]:
    return [
        {"label": b.label, "lo": b.lo, "hi": b.hi, "description": b.description}
        for b in scale.bands
    ]


def load_scale(path=None) -> GradeScale:
    if path is None:
        return default_scale()
    try:
        return scale_from_json(_read_json(path))
    except InputError as exc:
        if exc.path is None:
            raise InputError(str(exc), path) from exc
        raise


def grade_fns_to_json(grade_fns: GradeFNMap) -> dict:
    return {
        "mode": grade_fns.mode.value,
        "grades": {label: list(fn.entries) for label, fn in grade_fns.items()},
        "fallback": list(grade_fns.fallback),
    }


def grade_fns_from_json(data) -> GradeFNMap:
    """Accept the calibration block of a report or a bare ``{label: [a, b, c]}`` map."""
    try:
        if "grades" in data:
            grades = data["grades"]
            mode = CalibrationMode(data.get("mode", "midpoint"))
            fallback = tuple(data.get("fallback", ()))
        else:
            grades, mode, fallback = data, CalibrationMode.MIDPOINT, ()
        fns = {str(k): TriangularFN(*map(float, v)) for k, v in grades.items()}
    except (TypeError, ValueError, AttributeError) as exc:
        raise InputError(f"malformed grade numbers: {exc}") from exc
    return GradeFNMap(fns, mode, fallback)


def load_grade_fns(path) -> GradeFNMap:
    data = _read_json(path)
    if isinstance(data, dict) and "calibration" in data:
        data = data["calibration"]
    try:
        return grade_fns_from_json(data)
    except InputError as exc:
        raise InputError(str(exc), path) from exc


def _display(x: float) -> str:
    return f"{x:.2f}"


@dataclass
class GroupEntry:
    id: str
    model: str
    fn: list
    centroid_x: float
    range: list
    rank: Optional[int] = None
    grade_counts: dict = field(default_factory=dict)
    score_mean: Optional[float] = None
    source: str = "computed"

    def to_dict(self) -> dict:
        d = {
            "id": self.id,
            "model": self.model,
            "fn": list(self.fn),
            "fn_display": [_display(x) for x in self.fn],
            "centroid_x": self.centroid_x,
            "centroid_x_display": _display(self.centroid_x),
            "range": list(self.range),
            "rank": self.rank,
            "grade_counts": dict(self.grade_counts),
            "source": self.source,
        }
        if self.score_mean is not None:
            d["score_mean"] = self.score_mean
        return d

    @classmethod
    def from_dict(cls, d: dict) -> GroupEntry:
        return cls(
            id=d["id"],
            model=d["model"],
            fn=list(d["fn"]),
            centroid_x=d["centroid_x"],
            range=list(d["range"]),
            rank=d.get("rank"),
            grade_counts=dict(d.get("grade_counts", {})),
            score_mean=d.get("score_mean"),
            source=d.get("source", "computed"),
        )


@dataclass
class StudentEntry:
    id: str
    group: str
    fn: list
    centroid_x: float
    range: list
    rank: Optional[int] = None
    scores: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "group": self.group,
            "fn": list(self.fn),
            "fn_display": [_display(x) for x in self.fn],
            "centroid_x": self.centroid_x,
            "centroid_x_display": _display(self.centroid_x),
            "range": list(self.range),
            "rank": self.rank,
            "scores": list(self.scores),
        }

    @classmethod
    def from_dict(cls, d: dict) -> StudentEntry:
        return cls(
            id=d["id"],
            group=d["group"],
            fn=list(d["fn"]),
            centroid_x=d["centroid_x"],
            range=list(d["range"]),
            rank=d.get("rank"),
            scores=list(d.get("scores", [])),
        )


@dataclass
class ErratumEntry:
    subject: str
    quantity: str
    published: float
    computed: float
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "quantity": self.quantity,
            "published": self.published,
            "computed": self.computed,
            "computed_display": _display(self.computed),
            "note": self.note,
        }

    @classmethod
    def from_dict(cls, d: dict) -> ErratumEntry:
        return cls(d["subject"], d["quantity"], d["published"], d["computed"], d.get("note", ""))


@dataclass
class ReportDocument:
    command: str
    scale: list = field(default_factory=list)
    calibration: Optional[dict] = None
    groups: list = field(default_factory=list)
    students: list = field(default_factory=list)
    comparisons: list = field(default_factory=list)
    errata: list = field(default_factory=list)
    version: str = __version__

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "command": self.command,
            "scale": self.scale,
            "calibration": self.calibration,
            "groups": [g.to_dict() for g in self.groups],
            "students": [s.to_dict() for s in self.students],
            "comparisons": list(self.comparisons),
            "errata": [e.to_dict() for e in self.errata],
        }

    @classmethod
    def from_dict(cls, d: dict) -> ReportDocument:
        try:
            return cls(
                command=d.get("command", ""),
                scale=d.get("scale", []),
                calibration=d.get("calibration"),
                groups=[GroupEntry.from_dict(g) for g in d.get("groups", [])],
                students=[StudentEntry.from_dict(s) for s in d.get("students", [])],
                comparisons=list(d.get("comparisons", [])),
                errata=[ErratumEntry.from_dict(e) for e in d.get("errata", [])],
                version=d.get("version", __version__),
            )
        except (KeyError, TypeError, AttributeError) as exc:
            raise InputError(f"malformed report: {exc!r}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> ReportDocument:
        return cls.from_dict(json.loads(text))


def load_report(path) -> ReportDocument:
    data = _read_json(path)
    if not isinstance(data, dict):
        raise InputError("malformed report: expected a JSON object", path)
    try:
        return ReportDocument.from_dict(data)
    except InputError as exc:
        raise InputError(str(exc), path) from exc
