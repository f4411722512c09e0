import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from polarflip.fixtures import braid3, grid_flag, triangle_flag_a
from polarflip.flag import build_flag
from polarflip.sweep import LimitExceeded, NotNear, SweepError, apply_switch, default_orderings, \
    enumerate_special_orderings, flip, induced_ordering, initial_state, ordering_from_json, \
    ordering_to_json, parse_sign_string, sign_string, switch_graph, sweep_poset, \
    validate_special_ordering

from checks import induced_check, sweep_soundness, switch_check, tripletta
from strategies import arrangements


@given(arrangements(max_n=5), st.integers(0, 20))
def test_validator_accepts_exactly_the_linear_extensions(arr, seed):
    sweep_soundness(build_flag(arr, seed), max_vertices=6)


@given(arrangements(max_n=5), st.integers(0, 20))
def test_swap_validity_matches_common_faces(arr, seed):
    tripletta(build_flag(arr, seed))


@given(arrangements(max_n=5), st.integers(0, 20))
def test_switches_preserve_specialness_and_matching(arr, seed):
    switch_check(build_flag(arr, seed))


@given(arrangements(max_n=5), st.integers(0, 20))
def test_induced_orderings_validate(arr, seed):
    induced_check(build_flag(arr, seed))


@given(arrangements(max_n=5), st.integers(0, 20))
def test_default_orderings_are_special(arr, seed):
    flag = build_flag(arr, seed)
    for k, order in default_orderings(flag).items():
        assert validate_special_ordering(flag, k, order)[0]


def test_sign_strings_round_trip():
    for s in [(1, 0, -1), (0, 0), (-1,)]:
        assert parse_sign_string(sign_string(s)) == s


def test_orderings_json_round_trip():
    flag = grid_flag()
    ords = default_orderings(flag)
    assert ordering_from_json(ordering_to_json(ords)) == ords


def test_first_flip_is_the_lowest_vertex():
    flag = triangle_flag_a()
    st0 = initial_state(flag, 2)
    assert st0.near() == [flag.points(2)[0].signs]


def test_flipping_a_far_vertex_is_rejected():
    flag = triangle_flag_a()
    order = default_orderings(flag)[2]
    ok, cert = validate_special_ordering(flag, 2, order[::-1])
    assert not ok and cert["index"] == 1


def test_induced_ordering_needs_a_near_vertex():
    flag = triangle_flag_a()
    st0 = initial_state(flag, 2)
    far = default_orderings(flag)[2][-1]
    with pytest.raises(NotNear):
        induced_ordering(flag, 2, st0, default_orderings(flag)[1], default_orderings(flag)[1], far)


def test_enumeration_limit():
    flag = build_flag(braid3(), 0)
    with pytest.raises(LimitExceeded):
        enumerate_special_orderings(flag, 2, limit=1)


def test_grid_has_two_orderings_joined_by_a_switch():
    flag = grid_flag()
    g = switch_graph(flag, 2)
    assert g.number_of_nodes() >= 2
    assert nx.is_connected(g)


def test_switch_requires_independence():
    flag = triangle_flag_a()
    ords = default_orderings(flag)
    o = ords[2]
    with pytest.raises(SweepError):
        apply_switch(flag, ords, o[0], o[1])


def test_sweep_poset_orders_vertices_on_each_line():
    flag = grid_flag()
    sp = sweep_poset(flag, 2)
    for order in enumerate_special_orderings(flag, 2):
        assert sp.is_linear_extension(order)
    st1 = flip(initial_state(flag, 2), flag.points(2)[0].signs)
    assert st1.j == 1
