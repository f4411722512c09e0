import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from polarflip.faces import conforms, enumerate_faces
from polarflip.fixtures import NAMED, xyz_sum
from polarflip.flag import build_flag
from polarflip.lattice import intersection_lattice
from polarflip.morse import SalvettiCell, build_salvetti, compare_matchings, critical_cells_T6, \
    minimality_report, report_json, review_matching, verify_matching

from conftest import pipeline
from strategies import arrangements

# cell counts per dimension, frozen from the chamber-adjacency count below
CELLS = {
    "E1": (4, 8, 4),
    "E2": (7, 18, 12),
    "E3": (24, 72, 72, 24),
    "E4": (14, 48, 48, 14),
    "boolean3": (8, 24, 24, 8),
}


def _adjacency_count(arr):
    poset = enumerate_faces(arr)
    out = [0] * (arr.dim + 1)
    for F in poset:
        out[poset.codim(F)] += sum(1 for C in poset.chambers if conforms(C.signs, F.signs))
    return tuple(out)


@pytest.mark.parametrize("name", sorted(CELLS))
def test_cell_counts(name):
    arr = NAMED[name]()
    assert build_salvetti(arr).counts() == CELLS[name] == _adjacency_count(arr)


@given(arrangements())
def test_euler_characteristic_matches_the_complement(arr):
    assert build_salvetti(arr).euler() == intersection_lattice(arr).chi(1)


@given(arrangements())
def test_boundary_cells_exist_and_are_incident(arr):
    cx = build_salvetti(arr)
    cells = {c for cs in cx.cells.values() for c in cs}
    for hi, lo in cx.hasse:
        assert lo in cells
        assert cx.in_boundary(lo, hi)


@given(arrangements(), st.integers(0, 10))
def test_polar_matching_is_minimal(arr, seed):
    order, cx, m = pipeline(build_flag(arr, seed))
    report = minimality_report(arr, order, cx)
    assert report["matching_ok"]
    assert report["pass"]


@given(arrangements(), st.integers(0, 10))
def test_unmatched_cells_are_the_formula_cells(arr, seed):
    order, cx, m = pipeline(build_flag(arr, seed))
    unmatched = {c for cells in m.critical().values() for c in cells}
    assert critical_cells_T6(cx, order) == unmatched


@given(arrangements(), st.integers(0, 10))
def test_review_description_contains_the_matching(arr, seed):
    order, cx, m = pipeline(build_flag(arr, seed))
    review = review_matching(cx, order)
    cmp = compare_matchings(m, review)
    assert cmp["only_first"] == 0


def test_review_description_over_pairs():
    """Taking every earlier facet, not only the least one, pairs some cells twice."""
    order, cx, m = pipeline(build_flag(NAMED["E2"](), 0))
    review = review_matching(cx, order)
    assert compare_matchings(m, review)["only_second"] > 0
    assert not verify_matching(review)["matching"]


def test_multiplicity_four_vertex_conflict():
    """For some general flags of xyz(x+y+z) the least-facet rule pairs one
    cell twice: every cell over the chamber (+,-,+,+) is non-critical, but
    least-facet pairs cannot cover all ten of them."""
    order, cx, m = pipeline(build_flag(xyz_sum(), 2))
    check = verify_matching(m)
    assert not check["matching"]
    assert check["witness"] == [["[+-++<+-0+]", "[+-++<+-00]"], ["[+-++<+-+0]", "[+-++<+-00]"]]
    assert critical_cells_T6(cx, order) == {c for cs in m.critical().values() for c in cs}


def test_report_is_json():
    order, cx, m = pipeline(build_flag(NAMED["E1"](), 0))
    data = json.loads(report_json(minimality_report(NAMED["E1"](), order, cx)))
    assert [r["critical"] for r in data["rows"]] == [1, 2, 1]


def test_dot_export_marks_critical_cells():
    order, cx, m = pipeline(build_flag(NAMED["E1"](), 0))
    dot = m.to_dot()
    assert dot.count("shape=box") == 4
    assert dot.startswith("digraph")


def test_cell_labels():
    assert SalvettiCell((1, -1), (0, -1)).label() == "[+-<0-]"
