from fractions import Fraction

import pytest
from hypothesis import given

from polarflip.arrangement import AffineSubspace, Arrangement, ArrangementError, DuplicateHyperplane, \
    GeneralPositionViolation, check_general_position, restrict
from polarflip.fixtures import NAMED, braid3, h3, triangle

from strategies import arrangements


@given(arrangements())
def test_json_round_trip(arr):
    assert Arrangement.loads(arr.dumps()) == arr


@pytest.mark.parametrize("name", ["E1", "E2", "E3", "E4", "E5", "pencil", "grid"])
def test_fixture_json_round_trip(name):
    arr = NAMED[name]()
    assert Arrangement.loads(arr.dumps()) == arr


def test_quadratic_fixture_keeps_its_field():
    arr = h3()
    assert arr.radicand == 5
    assert Arrangement.loads(arr.dumps()).radicand == 5
    assert len(arr) == 15


def test_duplicates_rejected():
    with pytest.raises(DuplicateHyperplane):
        Arrangement.from_rows([[1, 2, 3], [2, 4, 6]])


def test_zero_normal_rejected():
    with pytest.raises(ArrangementError):
        Arrangement.from_rows([[0, 0, 1]])


def test_flats_of_braid_arrangement():
    arr = braid3()
    by_dim = {}
    for X in arr.flats:
        by_dim[X.dim] = by_dim.get(X.dim, 0) + 1
    assert by_dim == {3: 1, 2: 6, 1: 7, 0: 1}
    assert arr.is_central and arr.is_essential


@given(arrangements())
def test_every_flat_is_closed(arr):
    for X in arr.flats:
        assert arr.closure(X.space) == X.zero


def test_restriction_to_a_line():
    arr = triangle()
    line = AffineSubspace((Fraction(0), Fraction(3)), ((Fraction(1), Fraction(1)),))
    red = restrict(arr, line)
    assert red.dim == 1
    assert [h.value((Fraction(0),)) for h in red.hyperplanes] == [0, 3, 2]


def test_line_through_a_vertex_is_not_general():
    arr = triangle()
    line = AffineSubspace((Fraction(0), Fraction(0)), ((Fraction(1), Fraction(2)),))
    with pytest.raises(GeneralPositionViolation):
        check_general_position(arr, line)


def test_line_parallel_to_a_hyperplane_is_not_general():
    arr = triangle()
    line = AffineSubspace((Fraction(5), Fraction(7)), ((Fraction(0), Fraction(1)),))
    with pytest.raises(GeneralPositionViolation):
        restrict(arr, line)
