"""Intersection lattice, Moebius function, characteristic polynomial, Betti numbers."""

from __future__ import annotations

from dataclasses import dataclass

from .arrangement import Arrangement, Flat


@dataclass(frozen=True)
class IntersectionLattice:
    dim: int
    flats: tuple           # Flat objects, whole space first
    mobius: dict           # zero-set -> mu(whole space, X)

    def codim(self, X: Flat) -> int:
        return self.dim - X.dim

    @property
    def char_poly(self) -> list[int]:
        """Coefficients ``c[i]`` of ``t**i``: ``chi(t) = sum_X mu(X) t**dim X``."""
        c = [0] * (self.dim + 1)
        for X in self.flats:
            c[X.dim] += self.mobius[X.zero]
        return c

    @property
    def betti(self) -> tuple:
        b = [0] * (self.dim + 1)
        for X in self.flats:
            b[self.codim(X)] += abs(self.mobius[X.zero])
        while len(b) > 1 and b[-1] == 0:
            b.pop()
        return tuple(b)

    def chi(self, t: int) -> int:
        return sum(c * t ** i for i, c in enumerate(self.char_poly))

    @property
    def chambers(self) -> int:
        """Zaslavsky: number of regions is ``(-1)**d chi(-1)``."""
        return (-1) ** self.dim * self.chi(-1)

    @property
    def bounded_chambers(self) -> int:
        """Zaslavsky: number of bounded regions is ``|chi(1)|`` (essential case)."""
        return abs(self.chi(1))

    def of_codim(self, k: int) -> list[Flat]:
        return [X for X in self.flats if self.codim(X) == k]


def intersection_lattice(arr: Arrangement) -> IntersectionLattice:
    flats = arr.flats
    mu: dict = {}
    # flats are sorted by decreasing dimension, so every X below Y is done first
    for Y in flats:
        if not Y.zero:
            mu[Y.zero] = 1
            continue
        mu[Y.zero] = -sum(mu[X.zero] for X in flats if X.dim > Y.dim and X.zero < Y.zero)
    return IntersectionLattice(arr.dim, flats, mu)
