import time
from collections import Counter

import pytest

from manifoldstats import (CensusRecord, EnumerationTask, FacetMatching,
                           census_summary, connected_sum, cyclic_bundle,
                           enumerate, enumerate_parallel,
                           filter_missing_facets, g2_minimal_candidates,
                           integral_homology, split_task, validate)
from manifoldstats.enumerator import (has_separating_triangle,
                                      max_degree_range, merge_records,
                                      triangulated_spheres)
from manifoldstats.errors import InfeasibleTaskError
from manifoldstats.facevec import f1_range_for
from manifoldstats.pruning import ALL_RULES, L10_7

NO_RULES = frozenset()


def run(f0, f1_range, rules=NO_RULES, **kwargs):
    return list(enumerate(EnumerationTask(f0, f1_range, rules=rules,
                                          **kwargs)))


@pytest.mark.parametrize("n,min_degree,no_separating,count", [
    (4, 3, False, 1),
    (5, 3, False, 1),
    (6, 3, False, 2),
    (7, 3, False, 5),
    (8, 3, False, 14),
    (6, 4, False, 1),
    (7, 4, False, 1),
    (8, 4, False, 2),
    (8, 4, True, 2),
])
def test_triangulated_spheres(n, min_degree, no_separating, count):
    spheres = triangulated_spheres(n, min_degree, no_separating)
    assert len(spheres) == count
    assert all(len(sphere) == 2 * n - 4 for sphere in spheres)


def test_separating_triangle():
    bipyramid = [(1, 2, 4), (2, 3, 4), (1, 3, 4),
                 (1, 2, 5), (2, 3, 5), (1, 3, 5)]
    assert has_separating_triangle(bipyramid)
    octahedron = triangulated_spheres(6, 4)[0]
    assert not has_separating_triangle(octahedron)


def test_task_validation():
    with pytest.raises(ValueError):
        EnumerationTask(4, (6, 6))
    with pytest.raises(ValueError):
        EnumerationTask(9, (26, 36), rules=frozenset({"L12_3"}))
    with pytest.raises(InfeasibleTaskError):
        EnumerationTask(9, (36, 26))
    with pytest.raises(InfeasibleTaskError):
        EnumerationTask(6, (16, 17)).effective_range
    with pytest.raises(InfeasibleTaskError):
        list(enumerate(EnumerationTask(6, (16, 17))))


def test_task_ranges():
    assert EnumerationTask(10, (0, 100)).effective_range == (30, 45)
    assert EnumerationTask(11, (0, 100),
                           g2_cap=20).effective_range == (51, 54)
    task = EnumerationTask(9, (26, 36), rules=NO_RULES)
    assert task.task_id == "f0=9;f1=26:36;rules="
    assert list(max_degree_range(task)) == [6, 7, 8]
    assert "cap=20" in EnumerationTask(11, (51, 54), g2_cap=20).task_id


def test_split_task():
    task = EnumerationTask(7, (18, 21), rules=NO_RULES)
    subtasks = split_task(task)
    assert [t.label for t in subtasks] == ["star=6/0", "star=6/1"]
    assert all(t.prefix[0][0] == 1 for t in subtasks)
    assert split_task(subtasks[0]) == [subtasks[0]]


def test_boundary_of_simplex_only():
    records = run(5, (10, 10))
    assert len(records) == 1
    assert records[0].f_vector == (5, 10, 10, 5)
    assert records[0].manifold_name == "S^3"


@pytest.mark.parametrize("f0,f1_range,count", [
    (6, (14, 15), 2),
    (7, (18, 21), 5),
])
def test_small_spheres(f0, f1_range, count):
    records = run(f0, f1_range)
    assert len(records) == count
    assert len({r.digest for r in records}) == count
    for record in records:
        assert record.homology.format() == "Z, 0, 0, Z"
        assert validate(record.complex()).is_manifold


def test_subtasks_cover_task():
    task = EnumerationTask(7, (18, 21), rules=NO_RULES)
    from_subtasks = merge_records(
        enumerate(subtask) for subtask in split_task(task))
    assert [r.digest for r in from_subtasks] == sorted(
        r.digest for r in enumerate(task))


def test_parallel_matches_serial():
    task = EnumerationTask(7, (18, 21), rules=NO_RULES)
    assert enumerate_parallel(task, jobs=2) == enumerate_parallel(task)


def test_census_summary():
    rows = census_summary(run(7, (18, 21)))
    assert len(rows) == 1
    row = rows[0]
    assert (row.name, row.homology, row.f0) == ("S^3", "Z, 0, 0, Z", 7)
    assert (row.f1_min, row.f1_max, row.g2_min, row.g2_max) == (18, 21, 0, 3)
    assert row.count == 5


def test_missing_facet_filter_and_candidates():
    records = run(6, (14, 15))
    report = filter_missing_facets(records)
    assert (report.total, report.without_missing) == (2, 1)
    assert report.records[0].f_vector == (6, 15, 18, 9)
    candidates = g2_minimal_candidates(records + run(5, (10, 10)), 20)
    assert [c.f_vector for c in candidates] == [(6, 15, 18, 9)]
    assert g2_minimal_candidates(records, 0) == []


def test_record_from_complex():
    record = CensusRecord.from_complex(cyclic_bundle(9), "bundle")
    assert record.manifold_name == "S^2~S^1"
    assert record.missing_facets == 9
    assert record.g_vector == (1, 4, 10)
    assert record.g2 == 10
    assert record.row()[1:] == ("(9,36,54,27)", "(1,4,10)", "Z, Z, Z_2, 0",
                                "S^2~S^1")
    assert record.provenance == "bundle"


@pytest.fixture(scope="module")
def timed_census_11():
    start = time.perf_counter()
    records = run(11, (51, 54), ALL_RULES)
    return records, time.perf_counter() - start


@pytest.fixture(scope="module")
def census_11(timed_census_11):
    return timed_census_11[0]


def test_census_11(timed_census_11):
    records, seconds = timed_census_11
    assert seconds <= 60
    assert len(records) == 2
    assert {r.homology.format() for r in records} == {"Z, Z_2, 0, Z"}
    assert {r.f_vector[1] for r in records} <= {51, 52}
    assert all(r.manifold_name == "RP^3" for r in records)
    assert all(r.missing_facets == 0 for r in records)
    assert all(validate(r.complex()).is_manifold for r in records)


def test_g2_minimal_candidate_at_cap_20(census_11):
    candidates = g2_minimal_candidates(census_11, 20)
    assert [c.f_vector for c in candidates] == [(11, 51, 80, 40)]
    assert candidates[0].g_vector == (1, 6, 17)


@pytest.mark.slow
def test_subtasks_cover_census_11(census_11):
    task = EnumerationTask(11, (51, 54), rules=ALL_RULES)
    subtasks = split_task(task)
    assert all(t.label.startswith("star=10/") for t in subtasks)
    from_subtasks = merge_records(
        enumerate(subtask) for subtask in subtasks)
    assert [r.digest for r in from_subtasks] == sorted(
        r.digest for r in census_11)
    assert enumerate_parallel(task, jobs=2) == from_subtasks


@pytest.mark.slow
def test_rules_only_prune(census_11):
    without = run(11, (51, 54), ALL_RULES - {L10_7})
    assert {r.digest for r in census_11} <= {r.digest for r in without}


def test_connected_sum_of_projective_spaces(census_11):
    K = min(census_11, key=lambda r: r.f_vector[1]).complex()
    matching = FacetMatching.in_order(K.facets[0], K.facets[0])
    L = connected_sum(K, K, matching)
    assert L.f_vector() == (18, 96, 156, 78)
    assert integral_homology(L).format() == "Z, Z_2 + Z_2, 0, Z"


@pytest.mark.slow
def test_census_12():
    records = run(12, f1_range_for(12), ALL_RULES)
    assert len(records) == 7
    counts = Counter(r.homology.format() for r in records)
    assert counts == {"Z, Z, Z_2, 0": 2, "Z, Z_2, 0, Z": 4, "Z, Z_3, 0, Z": 1}
