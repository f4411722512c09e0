"""Affine hyperplane arrangements with exact coefficients."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .linalg import dot, rank, solve_affine, combine
from .scalar import QuadraticNumber, format_scalar, is_zero, parse_scalar, sign


class ArrangementError(ValueError):
    pass


class DuplicateHyperplane(ArrangementError):
    pass


class GeneralPositionViolation(ArrangementError):
    def __init__(self, msg, flat=None):
        super().__init__(msg)
        self.flat = flat


@dataclass(frozen=True)
class Hyperplane:
    """``{x : <normal, x> = offset}``; the positive side is ``<normal, x> > offset``."""

    normal: tuple
    offset: object = Fraction(0)

    def __post_init__(self):
        if all(is_zero(a) for a in self.normal):
            raise ArrangementError("hyperplane normal must be nonzero")

    def value(self, x):
        return dot(self.normal, x) - self.offset

    def side(self, x) -> int:
        return sign(self.value(x))

    def same_set(self, other: "Hyperplane") -> bool:
        """Equal as point sets (proportional equations, any nonzero factor)."""
        if len(self.normal) != len(other.normal):
            return False
        i = next(i for i, a in enumerate(self.normal) if not is_zero(a))
        if is_zero(other.normal[i]):
            return False
        f = other.normal[i] / self.normal[i]
        return (all(is_zero(b - f * a) for a, b in zip(self.normal, other.normal))
                and is_zero(other.offset - f * self.offset))


@dataclass(frozen=True)
class AffineSubspace:
    point: tuple
    basis: tuple = ()

    @property
    def dim(self) -> int:
        return len(self.basis)

    def at(self, coords) -> tuple:
        return combine(self.point, self.basis, coords)

    def inside(self, h: Hyperplane) -> bool:
        return is_zero(h.value(self.point)) and all(is_zero(dot(h.normal, b)) for b in self.basis)


@dataclass(frozen=True)
class Flat:
    """Intersection of the hyperplanes in ``zero`` (which is closed: every
    hyperplane containing the flat is listed)."""

    zero: frozenset
    space: AffineSubspace

    @property
    def dim(self) -> int:
        return self.space.dim


@dataclass(frozen=True)
class Arrangement:
    dim: int
    hyperplanes: tuple
    radicand: int | None = None

    def __post_init__(self):
        for h in self.hyperplanes:
            if len(h.normal) != self.dim:
                raise ArrangementError(f"normal {h.normal} has wrong length for dim {self.dim}")
        for i, h in enumerate(self.hyperplanes):
            for j in range(i):
                if self.hyperplanes[j].same_set(h):
                    raise DuplicateHyperplane(f"hyperplanes {j} and {i} coincide")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], radicand: int | None = None) -> "Arrangement":
        """Build from rows ``[a_1, ..., a_d, c]`` meaning ``a.x = c``."""
        conv = _converter(radicand)
        hs = tuple(Hyperplane(tuple(conv(a) for a in r[:-1]), conv(r[-1])) for r in rows)
        return cls(len(rows[0]) - 1, hs, radicand)

    def __len__(self):
        return len(self.hyperplanes)

    def signs(self, x) -> tuple:
        return tuple(h.side(x) for h in self.hyperplanes)

    def subspace_of(self, zero) -> AffineSubspace | None:
        """Affine subspace cut out by the hyperplanes indexed by ``zero``."""
        rows = [self.hyperplanes[i].normal for i in sorted(zero)]
        rhs = [self.hyperplanes[i].offset for i in sorted(zero)]
        sol = solve_affine(rows, rhs, self.dim)
        if sol is None:
            return None
        p, basis = sol
        return AffineSubspace(p, tuple(basis))

    def closure(self, space: AffineSubspace) -> frozenset:
        return frozenset(i for i, h in enumerate(self.hyperplanes) if space.inside(h))

    @cached_property
    def flats(self) -> tuple:
        """All flats, including the whole space (empty ``zero``), sorted by
        decreasing dimension then by sorted index tuple."""
        d = self.dim
        whole = Flat(frozenset(), AffineSubspace(tuple(Fraction(0) for _ in range(d)),
                                                 tuple(tuple(Fraction(int(i == j)) for j in range(d))
                                                       for i in range(d))))
        found = {whole.zero: whole}
        layer = [whole]
        while layer:
            nxt = []
            for X in layer:
                for j, h in enumerate(self.hyperplanes):
                    if j in X.zero:
                        continue
                    if all(is_zero(dot(h.normal, b)) for b in X.space.basis):
                        continue  # parallel to X (or contains it)
                    sp = self.subspace_of(X.zero | {j})
                    z = self.closure(sp)
                    if z not in found:
                        found[z] = Flat(z, sp)
                        nxt.append(found[z])
            layer = nxt
        return tuple(sorted(found.values(), key=lambda f: (-f.dim, sorted(f.zero))))

    @cached_property
    def flat_index(self) -> dict:
        return {f.zero: f for f in self.flats}

    @property
    def rank(self) -> int:
        return rank([h.normal for h in self.hyperplanes]) if self.hyperplanes else 0

    @property
    def is_essential(self) -> bool:
        return self.rank == self.dim

    @property
    def is_central(self) -> bool:
        if not self.hyperplanes:
            return True
        return self.subspace_of(range(len(self.hyperplanes))) is not None

    def permuted(self, perm: Sequence[int]) -> "Arrangement":
        return Arrangement(self.dim, tuple(self.hyperplanes[i] for i in perm), self.radicand)

    # -- serialization -------------------------------------------------
    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "scalar": "rational" if self.radicand is None else f"quadratic:{self.radicand}",
            "hyperplanes": [{"normal": [format_scalar(a) for a in h.normal],
                             "offset": format_scalar(h.offset)} for h in self.hyperplanes],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)

    @classmethod
    def from_json(cls, data: dict) -> "Arrangement":
        try:
            dim = int(data["dim"])
            mode = data.get("scalar", "rational")
            radicand = None
            if mode != "rational":
                if not mode.startswith("quadratic:"):
                    raise ArrangementError(f"unknown scalar mode {mode!r}")
                radicand = int(mode.split(":", 1)[1])
            hs = tuple(Hyperplane(tuple(parse_scalar(a, radicand) for a in h["normal"]),
                                  parse_scalar(h.get("offset", "0"), radicand))
                       for h in data["hyperplanes"])
        except (KeyError, TypeError) as exc:
            raise ArrangementError(f"malformed arrangement JSON: {exc}") from exc
        return cls(dim, hs, radicand)

    @classmethod
    def loads(cls, text: str) -> "Arrangement":
        return cls.from_json(json.loads(text))


def _converter(radicand):
    def conv(x):
        if isinstance(x, str):
            return parse_scalar(x, radicand)
        if isinstance(x, QuadraticNumber):
            return x
        return QuadraticNumber(x, 0, radicand) if radicand else Fraction(x)
    return conv


def restrict(arr: Arrangement, space: AffineSubspace) -> Arrangement:
    """The arrangement cut on ``space`` in its intrinsic coordinates.

    Raises :class:`GeneralPositionViolation` unless every flat ``X`` meets
    ``space`` in the expected dimension ``dim X + dim space - d`` (and misses
    it when that is negative).
    """
    check_general_position(arr, space)
    if space.dim == 0:
        return Arrangement(0, (), arr.radicand)
    hs = []
    for h in arr.hyperplanes:
        n = tuple(dot(h.normal, b) for b in space.basis)
        hs.append(Hyperplane(n, h.offset - dot(h.normal, space.point)))
    return Arrangement(space.dim, tuple(hs), arr.radicand)


def meet(arr: Arrangement, flat: Flat, space: AffineSubspace):
    """Intersection of a flat with an affine subspace, in the subspace's
    intrinsic coordinates: ``(particular, basis)`` or ``None``."""
    rows = [tuple(dot(arr.hyperplanes[i].normal, b) for b in space.basis) for i in sorted(flat.zero)]
    rhs = [arr.hyperplanes[i].offset - dot(arr.hyperplanes[i].normal, space.point)
           for i in sorted(flat.zero)]
    return solve_affine(rows, rhs, space.dim)


def check_general_position(arr: Arrangement, space: AffineSubspace) -> None:
    d, k = arr.dim, space.dim
    for X in arr.flats:
        if not X.zero:
            continue
        expect = X.dim + k - d
        sol = meet(arr, X, space)
        if expect < 0:
            if sol is not None:
                raise GeneralPositionViolation(
                    f"flat {sorted(X.zero)} meets the subspace but should miss it", X)
            continue
        if sol is None or len(sol[1]) != expect:
            got = None if sol is None else len(sol[1])
            raise GeneralPositionViolation(
                f"flat {sorted(X.zero)} meets the subspace in dimension {got}, expected {expect}", X)
