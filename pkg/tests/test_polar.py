import pytest
from hypothesis import given
from hypothesis import strategies as st

from polarflip.fixtures import braid3, triangle_flag_a
from polarflip.flag import build_flag
from polarflip.morse import build_salvetti, polar_matching, verify_matching
from polarflip.polar import PolarError, build_polar_order, check_cinque_rules, check_trilex, \
    cinque_key_order, common_lower_faces
from polarflip.sweep import default_orderings, enumerate_special_orderings

from strategies import arrangements


@given(arrangements(), st.integers(0, 20))
def test_every_face_listed_once(arr, seed):
    flag = build_flag(arr, seed)
    order = build_polar_order(flag, default_orderings(flag))
    assert sorted(F.signs for F in order.order) == sorted(F.signs for F in flag.ambient)


@given(arrangements(), st.integers(0, 20))
def test_signatures_are_lexicographic(arr, seed):
    flag = build_flag(arr, seed)
    assert check_trilex(build_polar_order(flag, default_orderings(flag)))[0]


@given(arrangements(), st.integers(0, 20))
def test_recursive_rules_hold_apart_from_ties(arr, seed):
    flag = build_flag(arr, seed)
    ords = default_orderings(flag)
    order = build_polar_order(flag, ords)
    assert check_cinque_rules(flag, ords, order.order, ties=False)["ok"]


@given(arrangements(), st.integers(0, 20))
def test_base_chamber_first_and_points_lead_their_facets(arr, seed):
    flag = build_flag(arr, seed)
    order = build_polar_order(flag, default_orderings(flag))
    assert order.order[0].signs == flag.points(0)[0].signs
    for F in order.order:
        if order.is_point(F):
            assert all(order.lt(F, G) for G in order.poset.facets(F))


def test_every_special_ordering_of_the_triangle_gives_an_order():
    flag = triangle_flag_a()
    base = default_orderings(flag)
    for k in (1, 2):
        for o in enumerate_special_orderings(flag, k):
            ords = dict(base)
            ords[k] = o
            assert check_trilex(build_polar_order(flag, ords))[0]


def test_non_special_ordering_is_refused():
    flag = triangle_flag_a()
    ords = default_orderings(flag)
    ords[2] = ords[2][::-1]
    with pytest.raises(PolarError):
        build_polar_order(flag, ords)


def test_rows_carry_signatures():
    flag = triangle_flag_a()
    rows = build_polar_order(flag, default_orderings(flag)).to_rows()
    assert [r["rank"] for r in rows] == list(range(len(rows)))
    assert rows[0]["k"] == 0 and rows[0]["codim"] == 0
    assert all(r["k"] >= r["codim"] for r in rows)


def test_common_lower_faces_of_two_vertices():
    flag = triangle_flag_a()
    order = build_polar_order(flag, default_orderings(flag))
    p, q = flag.points(2)[:2]
    common = common_lower_faces(order, p, q)
    assert common and all(G.dim >= 1 for G in common)


def test_key_rule_order_differs_and_can_cycle():
    """The one-pass key rule satisfies its own audit but, on the braid
    arrangement, gives a matching with a cycle."""
    flag = build_flag(braid3(), 0)
    ords = default_orderings(flag)
    keyed = cinque_key_order(flag, ords)
    assert check_cinque_rules(flag, ords, keyed.order)["ok"]
    cx = build_salvetti(keyed.poset)
    assert not verify_matching(polar_matching(cx, keyed))["ok"]
    nested = build_polar_order(flag, ords)
    assert verify_matching(polar_matching(cx, nested))["ok"]
