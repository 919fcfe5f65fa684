"""``fuzzgrade`` command line.

Exit status: 0 on success, 2 for unreadable or malformed input, 3 for
domain failures (no data, zero-area fuzzy numbers, oracle mismatch).
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from statistics import fmean

from .assessment import (
    CalibrationMode,
    GroupAssessment,
    Model,
    Ranking,
    assess_group_tfn,
    assess_group_tpfn,
    assessment_from_fn,
    calibrate_grade_fns,
    characterize,
    individual_tpfn,
    rank_groups,
    rank_individuals,
)
from .core import fuzzy_number
from .defuzz import PiecewiseLinearMembership, cog, cog_numeric
from .io import (
    ErratumEntry,
    GroupEntry,
    InputError,
    ReportDocument,
    StudentEntry,
    grade_fns_to_json,
    group_records,
    ingest_scores,
    load_grade_fns,
    load_report,
    load_scale,
    scale_to_json,
)
from .published import audit_group, audit_ordering, find_published

log = logging.getLogger("fuzzgrade")

ORACLE_TOLERANCE = 1e-5
EXIT_INPUT = 2
EXIT_DOMAIN = 3


class OracleMismatchError(ValueError):
    pass


def _check_oracle(label: str, fn) -> None:
    closed = cog(fn)
    numeric = cog_numeric(PiecewiseLinearMembership.from_fn(fn))
    if abs(closed.x - numeric.x) > ORACLE_TOLERANCE or abs(closed.y - numeric.y) > ORACLE_TOLERANCE:
        raise OracleMismatchError(
            f"{label}: closed-form centroid {closed} disagrees with quadrature {numeric}"
        )


def _group_entry(g: GroupAssessment, ranking: Ranking, source="computed", score_mean=None) -> GroupEntry:
    return GroupEntry(
        id=g.group_id,
        model=g.model.value,
        fn=list(g.fn.entries),
        centroid_x=g.centroid_x,
        range=list(g.linguistic_range),
        rank=ranking.rank_of(g.group_id),
        grade_counts=dict(g.grade_counts),
        score_mean=score_mean,
        source=source,
    )


def _comparisons(ranking: Ranking) -> list[dict]:
    return [
        {"first": p.first, "second": p.second, "relation": p.relation.value}
        for p in ranking.pairs
    ]


def _errata(items) -> list[ErratumEntry]:
    return [ErratumEntry(e.subject, e.quantity, e.published, e.computed, e.note) for e in items]


def cmd_calibrate(args) -> ReportDocument:
    scale = load_scale(args.scale)
    records = ingest_scores(args.scores)
    grade_fns = calibrate_grade_fns(records, scale, args.mode)
    if args.oracle_check:
        for label, fn in grade_fns.items():
            _check_oracle(f"grade {label}", fn)
    return ReportDocument(
        command="calibrate",
        scale=scale_to_json(scale),
        calibration=grade_fns_to_json(grade_fns),
    )


def assess_groups(records, scale, grade_fns, published_fixtures=False):
    """Assess every group of ``records``.

    Returns the reported assessments, their score means and the errata.
    With ``published_fixtures`` a group matching a published aggregate is
    reported with the printed number; errata always compare the
    recomputed values.
    """
    reported, means, errata, recomputed = [], {}, [], []
    for gid, recs in group_records(records).items():
        g = assess_group_tfn(gid, recs, grade_fns, scale)
        means[gid] = fmean(r.score for r in recs)
        recomputed.append(g)
        errata.extend(audit_group(g, means[gid]))
        pub = find_published(g) if published_fixtures else None
        if pub is not None:
            reported.append(
                (assessment_from_fn(gid, pub.fuzzy_number, scale, g.grade_counts), "published")
            )
        else:
            reported.append((g, "computed"))
    errata.extend(audit_ordering(recomputed))
    return reported, means, errata


def cmd_assess_group(args) -> ReportDocument:
    scale = load_scale(args.scale)
    records = ingest_scores(args.scores)
    if args.grades:
        grade_fns = load_grade_fns(args.grades)
        missing = set(scale.labels) - set(grade_fns)
        if missing:
            raise InputError(f"grade numbers missing for {sorted(missing)}", args.grades)
    else:
        grade_fns = calibrate_grade_fns(records, scale, args.mode)

    reported, means, errata = assess_groups(records, scale, grade_fns, args.paper_fixtures)
    if args.oracle_check:
        for g, _ in reported:
            _check_oracle(f"group {g.group_id}", g.fn)
    ranking = rank_groups([g for g, _ in reported])
    return ReportDocument(
        command="assess-group",
        scale=scale_to_json(scale),
        calibration=grade_fns_to_json(grade_fns),
        groups=[_group_entry(g, ranking, src, means[g.group_id]) for g, src in reported],
        comparisons=_comparisons(ranking),
        errata=_errata(errata),
    )


def cmd_assess_individual(args) -> ReportDocument:
    scale = load_scale(args.scale)
    records = ingest_scores(args.scores)
    groups, students, errata = [], [], []
    for gid, recs in group_records(records).items():
        scores: dict[str, list[float]] = {}
        for r in recs:
            scores.setdefault(r.student_id, []).append(r.score)
        fns = {sid: individual_tpfn(scores[sid], scale) for sid in sorted(scores)}
        if args.oracle_check:
            for sid, fn in fns.items():
                _check_oracle(f"student {sid}", fn)
        ranking = rank_individuals(fns)
        for entry in ranking.entries:
            fn = fns[entry.id]
            students.append(
                StudentEntry(
                    id=entry.id,
                    group=gid,
                    fn=list(fn.entries),
                    centroid_x=entry.centroid_x,
                    range=list(characterize(fn, scale)),
                    rank=entry.rank,
                    scores=sorted(scores[entry.id]),
                )
            )
        g = assess_group_tpfn(gid, fns, scale)
        groups.append(g)
        errata.extend(audit_group(g))
    errata.extend(audit_ordering(groups))
    ranking = rank_groups(groups)
    return ReportDocument(
        command="assess-individual",
        scale=scale_to_json(scale),
        groups=[_group_entry(g, ranking) for g in groups],
        students=students,
        comparisons=_comparisons(ranking),
        errata=_errata(errata),
    )


def _groups_from_input(path: Path, scale):
    """Group assessments from a report or, for ``.csv`` input, from raw scores."""
    if path.suffix.lower() == ".csv":
        records = ingest_scores(path)
        grade_fns = calibrate_grade_fns(records, scale)
        reported, _, _ = assess_groups(records, scale, grade_fns)
        return [g for g, _ in reported]
    report = load_report(path)
    out = []
    for entry in report.groups:
        try:
            fn = fuzzy_number(entry.fn)
        except ValueError as exc:
            raise InputError(f"group {entry.id!r}: {exc}", path) from exc
        out.append(assessment_from_fn(entry.id, fn, scale, entry.grade_counts))
    return out


def cmd_compare(args) -> ReportDocument:
    scale = load_scale(args.scale)
    groups: list[GroupAssessment] = []
    seen: set[str] = set()
    for p in args.inputs:
        p = Path(p)
        for g in _groups_from_input(p, scale):
            gid = g.group_id
            if gid in seen:
                gid = f"{p.stem}:{gid}"
                if gid in seen:
                    raise InputError(f"duplicate group id {g.group_id!r}", p)
                g = assessment_from_fn(gid, g.fn, scale, g.grade_counts)
            seen.add(gid)
            groups.append(g)
    if len({g.model for g in groups}) > 1:
        raise ValueError("cannot rank groups assessed with different models")
    if args.oracle_check:
        for g in groups:
            _check_oracle(f"group {g.group_id}", g.fn)

    errata = []
    for g in groups:
        errata.extend(audit_group(g))
    errata.extend(audit_ordering(groups))
    ranking = rank_groups(groups)
    return ReportDocument(
        command="compare",
        scale=scale_to_json(scale),
        groups=[_group_entry(g, ranking) for g in sorted(groups, key=lambda g: ranking.order.index(g.group_id))],
        comparisons=_comparisons(ranking),
        errata=_errata(errata),
    )


def render_text(report: ReportDocument) -> str:
    lines = []
    if report.groups:
        lines.append("rank  group            centroid  range  fuzzy number")
        ranks = [g.rank for g in report.groups]
        for g in report.groups:
            tie = "  (tie)" if ranks.count(g.rank) > 1 else ""
            fn = ", ".join(f"{x:.2f}" for x in g.fn)
            lines.append(
                f"{g.rank:>4}  {g.id:<15}  {g.centroid_x:8.2f}  {g.range[0]}-{g.range[1]:<3}  ({fn}){tie}"
            )
    if report.comparisons:
        lines.append("")
        lines.append("partial order:")
        for c in report.comparisons:
            lines.append(f"  {c['first']} vs {c['second']}: {c['relation'].replace('_', ' ')}")
    if report.students:
        lines.append("")
        lines.append("rank  student          centroid  fuzzy number")
        for s in report.students:
            fn = ", ".join(f"{x:.2f}" for x in s.fn)
            lines.append(f"{s.rank:>4}  {s.group + '/' + s.id:<15}  {s.centroid_x:8.2f}  ({fn})")
    if report.errata:
        lines.append("")
        lines.append("errata (published -> recomputed):")
        for e in report.errata:
            lines.append(f"  {e.subject}: {e.quantity}: {e.published:.2f} -> {e.computed:.4f}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fuzzgrade", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, scores=True):
        if scores:
            p.add_argument("--scores", required=True, help="score CSV file")
        p.add_argument("--scale", help="grade scale JSON (default: A/B/C/D/F)")
        p.add_argument("-o", "--output", default="-", help="output file, '-' for stdout")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--oracle-check", action="store_true",
                       help="verify every centroid against numeric quadrature")

    p = sub.add_parser("calibrate", help="derive grade fuzzy numbers from scores")
    common(p)
    p.add_argument("--mode", choices=[m.value for m in CalibrationMode], default="midpoint")
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("assess-group", help="triangular group assessment from grade counts")
    common(p)
    p.add_argument("--grades", help="grade fuzzy numbers JSON (as written by calibrate)")
    p.add_argument("--mode", choices=[m.value for m in CalibrationMode], default="midpoint")
    p.add_argument("--paper-fixtures", action="store_true",
                   help="report published aggregates verbatim for groups that match them")
    p.set_defaults(func=cmd_assess_group)

    p = sub.add_parser("assess-individual", help="trapezoidal assessment and ranking of students")
    common(p)
    p.set_defaults(func=cmd_assess_individual)

    p = sub.add_parser("compare", help="rank groups from reports or score files")
    p.add_argument("inputs", nargs="+", help="report JSON or score CSV files")
    common(p, scores=False)
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        report = args.func(args)
    except InputError as exc:
        print(f"fuzzgrade: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"fuzzgrade: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN

    text = report.to_json() if args.format == "json" else render_text(report)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text, encoding="utf-8")
        log.info("wrote %s", args.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
