import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polarflip.fixtures import boolean3, braid3, grid, pencil, random_arrangement, triangle, \
    xyz_sum, xyz_sum_section
from polarflip.flag import build_flag, verify_flag
from polarflip.followup import NotCentral, _zero, candidate_from_flag, decide_followup_2d, \
    enumerate_candidates, filtration_ok, followup_order, is_complete_2d, is_followup, \
    planar_candidate, sectors_2d, segmentato_violations, separation_report, ssfol_flag, ssfol_order, \
    supersolvable_filtration
from polarflip.morse import minimality_report
from polarflip.polar import build_polar_order
from polarflip.sweep import validate_special_ordering

from strategies import arrangements


@settings(max_examples=6)
@given(st.integers(0, 2 ** 32), st.integers(4, 5))
def test_complete_iff_followup_on_planar_candidates(seed, n):
    arr = random_arrangement(random.Random(seed), 2, n)
    for cand in enumerate_candidates(arr, random_budget=1, seed=seed):
        assert is_complete_2d(cand) == is_followup(cand.flag)[0]


def test_grid_candidates_agree_and_none_is_complete():
    dec = decide_followup_2d(grid(), stop_at_first=False)
    assert not dec.followup
    assert dec.candidates
    assert all(r["complete"] == r["followup"] for r in dec.candidates)


@pytest.mark.parametrize("make", [pencil, xyz_sum_section, triangle])
def test_followup_witness_is_a_verified_flag(make):
    arr = make()
    dec = decide_followup_2d(arr)
    assert dec.followup
    assert verify_flag(arr, dec.witness.flag).ok
    assert is_followup(dec.witness.flag) == (True, None)
    assert dec.to_json()["witness"]["h0"] == dec.witness.h0


def test_planar_candidates_start_on_their_base_line():
    arr = xyz_sum_section()
    for h0 in range(len(arr.hyperplanes)):
        cand = planar_candidate(arr, h0, 1, 1)
        assert cand is not None
        assert cand.h0 == h0


def test_sectors_start_on_h0_and_end_at_the_last_crossing():
    cand = decide_followup_2d(xyz_sum_section()).witness
    sec = sectors_2d(cand)
    assert not sec.uncovered
    assert all(a[cand.h0] == 0 for a in sec.points)
    crossing = [next(iter(_zero(p.signs))) for p in cand.flag.points(1)]
    for a, M in zip(sec.points, sec.lines):
        assert set(M) | {cand.h0} == set(_zero(a))
        assert M == sorted(M, key=crossing.index)


def test_followup_order_groups_by_least_covering_point(flags):
    flag = flags["E2a"]
    order = followup_order(flag)
    lower = order[1]
    first = []
    for F in order[2]:
        first.append(min(i for i, J in enumerate(lower) if _zero(J) <= _zero(F)))
    assert first == sorted(first)


def test_candidate_from_flag_reads_the_first_crossing():
    flag = build_flag(triangle(), 3)
    cand = candidate_from_flag(flag)
    assert flag.points(1)[0].signs[cand.h0] == 0


def test_supersolvable_filtrations():
    assert supersolvable_filtration(boolean3()).to_json() == [[0], [0, 1], [0, 1, 2]]
    assert supersolvable_filtration(xyz_sum()) is None
    filt = supersolvable_filtration(braid3())
    assert filt is not None and filtration_ok(braid3(), filt) == (True, None)
    with pytest.raises(NotCentral):
        supersolvable_filtration(triangle())


@given(arrangements(dims=(2, 3), max_n=4, central=True))
def test_found_filtrations_satisfy_the_definition(arr):
    filt = supersolvable_filtration(arr)
    if arr.dim == 2:
        assert filt is not None
    if filt is not None:
        assert filtration_ok(arr, filt) == (True, None)
        assert len(filt) == arr.rank


@pytest.mark.parametrize("make", [boolean3, pencil])
def test_ssfol_pipeline(make):
    arr = make()
    filt = supersolvable_filtration(arr)
    flag = ssfol_flag(arr, filt, seed=0)
    assert verify_flag(arr, flag).ok
    orders = ssfol_order(arr, filt, flag)
    for k in range(1, flag.d + 1):
        assert validate_special_ordering(flag, k, orders[k])[0]
    assert segmentato_violations(arr, filt, flag, orders) == []
    A = filt.steps[arr.dim - 2]
    assert all(r["pass"] for r in separation_report(arr, flag, A, arr.dim - 1))
    assert minimality_report(arr, build_polar_order(flag, orders))["pass"]
