"""
Grading two departments
=======================

Scores are bucketed into five grades, each grade gets a triangular fuzzy
number, and each department is summarised by the mean of its students'
numbers.  The two means are incomparable under the partial order, so the
centroid abscissa decides the ranking.
"""

from fuzzgrade import (
    calibrate_grade_fns,
    characterize,
    compare,
    count_grades,
    datasets,
    group_mean_tfn,
)
from fuzzgrade.assessment import assess_group_tfn, rank_groups
from fuzzgrade.io import group_records
from fuzzgrade.published import audit_group

records = datasets.departments()
grades = calibrate_grade_fns(records)
for label, fn in grades.items():
    print(f"grade {label}: {fn.entries}")

groups = group_records(records)
assessments = []
for gid, recs in groups.items():
    counts = count_grades(recs)
    mean = group_mean_tfn(counts, grades)
    print(f"{gid}: counts={counts}")
    print(f"    mean={tuple(round(x, 2) for x in mean)}  range={characterize(mean)}")
    assessments.append(assess_group_tfn(gid, recs, grades))

print("D1 vs D2 under the partial order:",
      compare(assessments[0].fn, assessments[1].fn).value)

ranking = rank_groups(assessments)
for e in ranking.entries:
    print(f"rank {e.rank}: {e.id} (centroid x = {e.centroid_x:.2f})")

# Printed aggregates that the recomputation does not reproduce
for g in assessments:
    for err in audit_group(g):
        print(f"erratum {err.subject}: {err.quantity} printed {err.published}, "
              f"recomputed {err.computed:.2f}")

# Empirical calibration: (min, mean, max) of the scores actually seen per grade
empirical = calibrate_grade_fns(groups["D1"], mode="empirical")
print("empirical F for D1:", tuple(round(x, 2) for x in empirical["F"]))
