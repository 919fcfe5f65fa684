"""
Ranking individual students with trapezoids
===========================================

Each student is described by a trapezoid whose plateau spans their lowest
and highest score and whose feet reach the edges of the grades touched.
Centroids order the students totally, even where the partial order cannot.
"""

from fuzzgrade import datasets, individual_tpfn, mean_fn, rank_individuals
from fuzzgrade.assessment import assessment_from_fn, rank_groups
from fuzzgrade.core import TrapezoidalFN, compare

scores = {}
for r in datasets.olympiad():
    scores.setdefault(r.student_id, []).append(r.score)

students = {sid: individual_tpfn(v) for sid, v in sorted(scores.items())}
for sid, fn in students.items():
    print(f"{sid}: scores={sorted(scores[sid])} -> {fn.entries}")

ranking = rank_individuals(students)
for e in ranking.entries:
    print(f"rank {e.rank}: {e.id} (centroid x = {e.centroid_x:.2f})")

print("S2 vs S3 under the partial order:", compare(students["S2"], students["S3"]).value)

group = mean_fn(students[k] for k in sorted(students))
print("group mean:", group.entries)

# A second group, known only through its mean trapezoid
substitutes = TrapezoidalFN(47.8, 65.3, 78.1, 85.9)
result = rank_groups([assessment_from_fn("trainees", group),
                      assessment_from_fn("substitutes", substitutes)])
for e in result.entries:
    print(f"rank {e.rank}: {e.id} (centroid x = {e.centroid_x:.4f})")
