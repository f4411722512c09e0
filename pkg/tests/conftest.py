import random

import pytest
from hypothesis import HealthCheck, settings

from polarflip.fixtures import boolean3, braid3, grid_flag, random_arrangement, triangle_flag_a, \
    triangle_flag_b, two_lines, xyz_sum
from polarflip.flag import build_flag
from polarflip.morse import build_salvetti, polar_matching
from polarflip.polar import build_polar_order
from polarflip.sweep import default_orderings

settings.register_profile("exact", max_examples=20, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("exact")


def fixture_flags():
    """Every named fixture with the flag used throughout the suite."""
    return {
        "E1": build_flag(two_lines(), 0),
        "E2a": triangle_flag_a(),
        "E2b": triangle_flag_b(),
        "grid": grid_flag(),
        "E3": build_flag(braid3(), 0),
        "E4": build_flag(xyz_sum(), 0),
        "boolean3": build_flag(boolean3(), 0),
    }


def random_arrangements(count, seed=11):
    """Small affine arrangements alternating between the plane and space."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        d = 2 + i % 2
        out.append(random_arrangement(rng, d, 4 if d == 3 else 5))
    return out


def pipeline(flag, orderings=None):
    orderings = orderings or default_orderings(flag)
    order = build_polar_order(flag, orderings)
    cx = build_salvetti(order.poset)
    return order, cx, polar_matching(cx, order)


@pytest.fixture(scope="session")
def flags():
    return fixture_flags()
