"""Named arrangements and flags used by tests, scripts and the CLI."""

from __future__ import annotations

import random
from fractions import Fraction

from .arrangement import AffineSubspace, Arrangement, DuplicateHyperplane, Hyperplane, restrict
from .flag import Flag, flag_2d
from .scalar import QuadraticNumber


def two_lines() -> Arrangement:
    """x = 0, y = 0."""
    return Arrangement.from_rows([[1, 0, 0], [0, 1, 0]])


def triangle() -> Arrangement:
    """x = 0, y = 0, x + y = 1."""
    return Arrangement.from_rows([[1, 0, 0], [0, 1, 0], [1, 1, 1]])


def triangle_flag_a() -> Flag:
    return flag_2d(triangle(), (1, 2, -1), (Fraction(-3), Fraction(1)))


def triangle_flag_b() -> Flag:
    return flag_2d(triangle(), (2, 1, -2), (Fraction(-4), Fraction(6)))


def braid3() -> Arrangement:
    """Braid arrangement of rank 3: x_i - x_j with x_4 = 0, in coordinates (x, y, z)."""
    return Arrangement.from_rows([[1, -1, 0, 0], [1, 0, -1, 0], [0, 1, -1, 0],
                                  [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])


def xyz_sum() -> Arrangement:
    """x y z (x + y + z)."""
    return Arrangement.from_rows([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [1, 1, 1, 0]])


def boolean3() -> Arrangement:
    return Arrangement.from_rows([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])


def pencil(n: int = 4) -> Arrangement:
    """``n`` lines through the origin."""
    rows = [[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, -1, 0], [1, 2, 0], [2, 1, 0]]
    return Arrangement.from_rows(rows[:n])


def grid() -> Arrangement:
    """x = 0, x = 1, y = 0, y = 1: (1,0) and (0,1) share no line."""
    return Arrangement.from_rows([[1, 0, 0], [1, 0, 1], [0, 1, 0], [0, 1, 1]])


def grid_flag() -> Flag:
    return flag_2d(grid(), (2, 3, -1), (Fraction(-5), Fraction(3)))


def one_point() -> Arrangement:
    """A single point on the real line."""
    return Arrangement.from_rows([[1, 0]])


def h3(radicand: int = 5) -> Arrangement:
    """The 15 reflecting planes of the icosahedral group (central, over Q(sqrt 5))."""
    one = QuadraticNumber(1, 0, 5)
    zero = QuadraticNumber(0, 0, 5)
    phi = QuadraticNumber(Fraction(1, 2), Fraction(1, 2), 5)
    inv = phi - one
    normals = [(one, zero, zero), (zero, one, zero), (zero, zero, one)]
    base = (one, phi, inv)
    for shift in range(3):
        v = base[shift:] + base[:shift]
        for s1 in (1, -1):
            for s2 in (1, -1):
                normals.append((v[0], v[1] * s1, v[2] * s2))
    return Arrangement(3, tuple(Hyperplane(n, zero) for n in normals), radicand)


def generic_section(arr: Arrangement, plane: AffineSubspace) -> Arrangement:
    """The arrangement cut on a 2-plane, checked for general position."""
    return restrict(arr, plane)


def _q(x, radicand):
    return QuadraticNumber(x, 0, radicand) if radicand else Fraction(x)


def section_plane(radicand=None, offset=(3, 5, 7), basis=((1, 2, 0), (0, 1, 3))) -> AffineSubspace:
    return AffineSubspace(tuple(_q(a, radicand) for a in offset),
                          tuple(tuple(_q(a, radicand) for a in b) for b in basis))


def h3_section() -> Arrangement:
    return generic_section(h3(), section_plane(5, offset=(1, 2, 3), basis=((1, 3, 0), (0, 2, 5))))


def xyz_sum_section(offset=(1, 2, 3), basis=((1, 3, 0), (0, 2, 5))) -> Arrangement:
    return generic_section(xyz_sum(), section_plane(None, offset, basis))


def random_arrangement(rng: random.Random, d: int, n: int, spread: int = 3,
                       central: bool = False) -> Arrangement:
    """Random essential arrangement of ``n`` distinct hyperplanes in ``R^d``."""
    while True:
        hs = []
        while len(hs) < n:
            normal = tuple(Fraction(rng.randint(-spread, spread)) for _ in range(d))
            if all(a == 0 for a in normal):
                continue
            off = Fraction(0) if central else Fraction(rng.randint(-spread, spread))
            h = Hyperplane(normal, off)
            if any(g.same_set(h) for g in hs):
                continue
            hs.append(h)
        try:
            arr = Arrangement(d, tuple(hs))
        except DuplicateHyperplane:
            continue
        if arr.is_essential:
            return arr


NAMED = {
    "E1": two_lines,
    "E2": triangle,
    "E3": braid3,
    "E4": xyz_sum,
    "E5": h3,
    "E5-section": h3_section,
    "E4-section": xyz_sum_section,
    "pencil": pencil,
    "boolean3": boolean3,
    "grid": grid,
    "point": one_point,
}
