import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fuzzgrade import datasets
from fuzzgrade.assessment import (
    GradeBand,
    GradeScale,
    Model,
    ScoreRangeError,
    ScoreRecord,
    assess_group_tfn,
    assessment_from_fn,
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
from fuzzgrade.core import (
    Comparison,
    DegenerateError,
    EmptyInputError,
    TrapezoidalFN,
    TriangularFN,
    compare,
)
from fuzzgrade.io import group_records

from oracles import random_entries, weighted_grade_mean

GRADES = {
    "A": (85, 92.5, 100),
    "B": (75, 79.5, 84),
    "C": (60, 67, 74),
    "D": (50, 54.5, 59),
    "F": (0, 24.5, 49),
}
D1_COUNTS = {"A": 60, "B": 40, "C": 20, "D": 30, "F": 20}
D2_COUNTS = {"A": 60, "B": 90, "C": 45, "D": 45, "F": 15}
E2_COUNTS = {"A": 14, "B": 4, "C": 1, "D": 4, "F": 7}
STUDENT_SCORES = {
    "S1": [43, 48, 49, 49, 50, 52],
    "S2": [81, 83, 85, 88, 91, 95],
    "S3": [76, 82, 89, 95, 95, 98],
    "S4": [86, 86, 87, 87, 87, 88],
    "S5": [35, 40, 44, 52, 59, 62],
}


@pytest.fixture(scope="module")
def departments():
    return group_records(datasets.departments())


@pytest.fixture(scope="module")
def midpoint_grades():
    return calibrate_grade_fns([ScoreRecord("g", "s", 50)])


class TestScale:
    @pytest.mark.parametrize(
        "score, label",
        [(100, "A"), (85, "A"), (84, "B"), (84.5, "B"), (75, "B"), (74.9, "C"),
         (60, "C"), (59, "D"), (50, "D"), (49, "F"), (49.99, "F"), (0, "F")],
    )
    def test_grade_of(self, score, label):
        assert grade_of(score) == label

    @pytest.mark.parametrize("score", [101, -0.1])
    def test_out_of_range(self, score):
        with pytest.raises(ScoreRangeError, match="score out of range"):
            grade_of(score)

    def test_default_scale(self):
        s = default_scale()
        assert s.labels == ["A", "B", "C", "D", "F"]
        assert s.band("B").description == "very good"

    def test_validation(self):
        with pytest.raises(ValueError, match="overlap"):
            GradeScale((GradeBand("P", 50, 100), GradeBand("Q", 0, 50)))
        with pytest.raises(ValueError, match="cover"):
            GradeScale((GradeBand("P", 50, 100), GradeBand("Q", 10, 49)))
        with pytest.raises(ValueError, match="duplicate"):
            GradeScale((GradeBand("P", 50, 100), GradeBand("P", 0, 49)))

    def test_band_order_normalised(self):
        s = GradeScale((GradeBand("lo", 0, 49.5), GradeBand("hi", 50, 100)))
        assert s.labels == ["hi", "lo"]
        assert grade_of(49.7, s) == "lo"

    @given(st.floats(min_value=0, max_value=100))
    def test_every_score_has_one_band(self, x):
        label = grade_of(x)
        band = default_scale().band(label)
        assert band.lo <= x
        assert x <= band.hi or x < band.hi + 1


class TestCalibration:
    def test_midpoint_reproduces_grade_numbers(self, midpoint_grades):
        assert {k: fn.entries for k, fn in midpoint_grades.items()} == GRADES
        assert midpoint_grades.fallback == ()

    def test_empirical_d1_band_f(self, departments):
        fns = calibrate_grade_fns(departments["D1"], mode="empirical")
        f_scores = [48] * 7 + [45] * 8 + [42] + [40] * 3 + [35]
        assert fns["F"] == TriangularFN(35, sum(f_scores) / len(f_scores), 48)
        assert fns["F"].b == pytest.approx(44.65)
        assert fns.fallback == ()

    def test_empirical_single_score_and_fallback(self):
        fns = calibrate_grade_fns([ScoreRecord("g", "s", 90)], mode="empirical")
        assert fns["A"] == TriangularFN(90, 90, 90)
        assert fns.fallback == ("B", "C", "D", "F")
        assert fns["B"] == TriangularFN(75, 79.5, 84)

    def test_no_data(self):
        with pytest.raises(EmptyInputError, match="no data"):
            calibrate_grade_fns([])

    @pytest.mark.parametrize("label", list(GRADES))
    def test_characterize_own_grade(self, midpoint_grades, label):
        assert characterize(midpoint_grades[label]) == (label, label)


class TestCounting:
    def test_department_counts(self, departments):
        assert count_grades(departments["D1"]) == D1_COUNTS
        assert count_grades(departments["D2"]) == D2_COUNTS
        assert len(departments["D1"]) == 170
        assert len(departments["D2"]) == 255

    def test_trainee_counts(self):
        scores = [s for v in STUDENT_SCORES.values() for s in v]
        assert count_grades(scores) == E2_COUNTS

    def test_empty(self):
        assert count_grades([]) == dict.fromkeys(GRADES, 0)

    @given(st.lists(st.floats(min_value=0, max_value=100)))
    def test_tallies_sum(self, scores):
        assert sum(count_grades(scores).values()) == len(scores)


class TestGroupMean:
    @pytest.mark.parametrize("counts", [D1_COUNTS, D2_COUNTS, E2_COUNTS])
    def test_matches_weighted_sum(self, midpoint_grades, counts):
        got = group_mean_tfn(counts, midpoint_grades).entries
        assert got == pytest.approx(weighted_grade_mean(counts, GRADES), abs=1e-12)

    def test_published_entries(self, midpoint_grades):
        d1 = group_mean_tfn(D1_COUNTS, midpoint_grades)
        assert (d1.a, d1.b) == pytest.approx((63.53, 71.74), abs=0.01)
        assert d1.c == pytest.approx(79.94, abs=0.01)
        d2 = group_mean_tfn(D2_COUNTS, midpoint_grades)
        assert (d2.a, d2.c) == pytest.approx((65.88, 79.53), abs=0.01)
        assert d2.b == pytest.approx(72.71, abs=0.01)
        m = group_mean_tfn(E2_COUNTS, midpoint_grades)
        assert (m.b, m.c) == pytest.approx((68.98, 79.63), abs=0.01)
        assert m.a == pytest.approx(58.33, abs=0.01)

    @pytest.mark.parametrize("label", list(GRADES))
    @pytest.mark.parametrize("n", [1, 3, 7, 170])
    def test_single_label_exact(self, midpoint_grades, label, n):
        counts = dict.fromkeys(GRADES, 0)
        counts[label] = n
        assert group_mean_tfn(counts, midpoint_grades) == midpoint_grades[label]

    def test_no_data(self, midpoint_grades):
        with pytest.raises(EmptyInputError):
            group_mean_tfn(dict.fromkeys(GRADES, 0), midpoint_grades)


class TestIndividual:
    @pytest.mark.parametrize(
        "sid, expected",
        [("S1", (0, 43, 52, 59)), ("S2", (75, 81, 95, 100)), ("S3", (75, 76, 98, 100)),
         ("S4", (85, 86, 88, 100)), ("S5", (0, 35, 62, 74))],
    )
    def test_published_trapezoids(self, sid, expected):
        assert individual_tpfn(STUDENT_SCORES[sid]).entries == expected

    def test_single_score(self):
        assert individual_tpfn([90]) == TrapezoidalFN(85, 90, 90, 100)

    def test_gap_score_stretches_right_foot(self):
        assert individual_tpfn([40, 49.5]) == TrapezoidalFN(0, 40, 49.5, 49.5)

    def test_empty(self):
        with pytest.raises(EmptyInputError):
            individual_tpfn([])

    @given(st.lists(st.floats(min_value=0, max_value=100), min_size=1, max_size=12))
    def test_shape(self, scores):
        fn = individual_tpfn(scores)
        assert fn.a <= fn.b <= fn.c <= fn.d
        assert fn.b == min(scores) and fn.c == max(scores)

    def test_characterize(self):
        assert characterize(TriangularFN(63.53, 71.74, 83.47)) == ("C", "B")
        assert characterize(TrapezoidalFN(47, 64.2, 79, 86.6)) == ("C", "B")
        assert characterize(TriangularFN(85, 92.5, 100)) == ("A", "A")


class TestRanking:
    def test_departments_published_numbers(self):
        d1 = assessment_from_fn("D1", TriangularFN(63.53, 71.74, 83.47))
        d2 = assessment_from_fn("D2", TriangularFN(65.88, 72.63, 79.53))
        r = rank_groups([d2, d1])
        assert r.order == ["D1", "D2"]
        assert r.pairs[0].relation is Comparison.INCOMPARABLE
        assert r.decided_by_defuzzification

    def test_departments_recomputed(self, departments, midpoint_grades):
        groups = [assess_group_tfn(g, recs, midpoint_grades) for g, recs in departments.items()]
        assert rank_groups(groups).order == ["D2", "D1"]

    def test_trainee_groups(self):
        s = assessment_from_fn("S", TrapezoidalFN(47, 64.2, 79, 86.6))
        s2 = assessment_from_fn("S'", TrapezoidalFN(47.8, 65.3, 78.1, 85.9))
        assert s.model is Model.TPFN
        # recomputed centroids put the substitutes ahead (68.87 vs 68.84)
        assert rank_groups([s, s2]).order == ["S'", "S"]

    def test_ties_and_single(self):
        fn = TriangularFN(1, 2, 3)
        r = rank_groups([assessment_from_fn("b", fn), assessment_from_fn("a", fn),
                         assessment_from_fn("c", TriangularFN(0, 1, 2))])
        assert r.order == ["a", "b", "c"]
        assert [e.rank for e in r.entries] == [1, 1, 3]
        assert [e.tied for e in r.entries] == [True, True, False]
        assert rank_groups([assessment_from_fn("x", fn)]).rank_of("x") == 1

    def test_errors(self):
        with pytest.raises(EmptyInputError):
            rank_groups([])
        fn = TriangularFN(1, 2, 3)
        with pytest.raises(ValueError, match="duplicate"):
            rank_groups([assessment_from_fn("a", fn), assessment_from_fn("a", fn)])

    def test_permutation_invariance(self, rng):
        rows = random_entries(rng, 6, 3)
        groups = [assessment_from_fn(f"g{i}", TriangularFN(*r)) for i, r in enumerate(rows)]
        groups.append(assessment_from_fn("g9", groups[0].fn))
        base = rank_groups(groups)
        for perm in itertools.islice(itertools.permutations(groups), 0, 720, 37):
            assert rank_groups(list(perm)) == base

    def test_individuals(self):
        fns = {sid: individual_tpfn(v) for sid, v in STUDENT_SCORES.items()}
        r = rank_individuals(fns)
        assert r.order == ["S4", "S2", "S3", "S5", "S1"]
        assert [e.rank for e in r.entries] == [1, 2, 3, 4, 5]

    def test_individual_ties_and_errors(self):
        fn = TrapezoidalFN(0, 1, 2, 3)
        r = rank_individuals({"b": fn, "a": fn})
        assert r.order == ["a", "b"] and all(e.tied for e in r.entries)
        assert rank_individuals({"solo": fn}).rank_of("solo") == 1
        with pytest.raises(DegenerateError, match="'bad'"):
            rank_individuals({"ok": fn, "bad": TrapezoidalFN(5, 5, 5, 5)})
        with pytest.raises(TypeError):
            rank_individuals({"t": TriangularFN(0, 1, 2)})

    def test_consistent_with_partial_order(self, rng):
        for k in (3, 4):
            X, Y = random_entries(rng, 2000, k), random_entries(rng, 2000, k)
            for lo, hi in zip(X, Y):
                cls = TriangularFN if k == 3 else TrapezoidalFN
                A = cls(*[min(p, q) for p, q in zip(lo, hi)])
                B = cls(*[max(p, q) for p, q in zip(lo, hi)])
                assert compare(A, B) in (Comparison.LESS_OR_EQUAL, Comparison.EQUIVALENT)
                r = rank_groups([assessment_from_fn("A", A), assessment_from_fn("B", B)])
                assert not (r.rank_of("A") < r.rank_of("B"))
