"""General flags V_0 < V_1 < ... < V_d and their section arrangements.

A face of the section arrangement on ``V_k`` is stored with the sign vector of
the ambient face containing it: under general position the restriction of
each hyperplane is a distinct hyperplane of ``V_k``, so the embedding of
sections into the ambient face poset is the identity on sign vectors.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .arrangement import (AffineSubspace, Arrangement, Flat, GeneralPositionViolation,
                          check_general_position, restrict)
from .faces import Face, FacePoset, enumerate_faces
from .linalg import dot, nullspace, solve_affine, combine
from .scalar import format_scalar, parse_scalar, sign


class FlagError(ValueError):
    pass


class FlagSearchExhausted(FlagError):
    pass


class NoIntersection(FlagError):
    pass


def _coords_in(space: AffineSubspace, x) -> tuple:
    """Intrinsic coordinates of an ambient point lying in ``space``."""
    d = len(space.point)
    rows = [[space.basis[j][i] for j in range(space.dim)] for i in range(d)]
    rhs = [x[i] - space.point[i] for i in range(d)]
    sol = solve_affine(rows, rhs, space.dim)
    if sol is None:
        raise FlagError("point does not lie in subspace")
    return sol[0]


def _dir_coords_in(space: AffineSubspace, v) -> tuple:
    zero = AffineSubspace(tuple(Fraction(0) for _ in v), space.basis)
    return _coords_in(zero, v)


class Level:
    """Section data at one level ``k``: ``A^k`` on ``V_k`` and the height
    function whose zero set is ``V_{k-1}`` inside ``V_k``."""

    def __init__(self, flag: "Flag", k: int):
        self.flag = flag
        self.k = k
        arr = flag.arrangement
        V = flag.subspaces[k]
        if k == 0:
            self.arrangement = None
            self.poset = None
            s = arr.signs(V.point)
            self.points = [Face(s, 0, ())]
            self._alpha = None
            return
        self.poset = enumerate_faces(restrict(arr, V))
        self.arrangement = self.poset.arrangement
        W = flag.subspaces[k - 1]
        t0 = _coords_in(V, W.point)
        dirs = [_dir_coords_in(V, b) for b in W.basis]
        alpha = nullspace(dirs, k)[0] if dirs else (Fraction(1),)
        beta = dot(alpha, t0)
        vs = self.poset.vertices
        if vs and sign(dot(alpha, vs[0].point) - beta) < 0:
            alpha, beta = tuple(-a for a in alpha), -beta
        self._alpha, self._beta = alpha, beta
        self.points = sorted(vs, key=lambda v: (self.height(v.point), v.signs))

    def height(self, t):
        """Signed height over ``V_{k-1}`` of an intrinsic point of ``V_k``."""
        return dot(self._alpha, t) - self._beta

    def slope(self, direction) -> int:
        return sign(dot(self._alpha, direction))

    def vertex_height(self, v: Face):
        return self.height(v.point)

    @cached_property
    def face_index(self) -> dict:
        return {f.signs: f for f in (self.poset if self.poset else self.points)}

    @cached_property
    def point_by_flat(self) -> dict:
        return {p.zero: p for p in self.points}

    @cached_property
    def lines(self) -> dict:
        """1-flats of ``A^k`` (by zero set) -> vertices on them sorted by height."""
        out = {}
        if self.k == 0:
            return out
        for X in self.arrangement.flats:
            if X.dim == 1:
                vs = [v for v in self.points if X.zero <= v.zero]
                out[X.zero] = sorted(vs, key=lambda v: self.height(v.point))
        return out


@dataclass(frozen=True)
class Flag:
    arrangement: Arrangement
    subspaces: tuple  # V_0, ..., V_d as AffineSubspace in ambient coordinates

    @property
    def d(self) -> int:
        return self.arrangement.dim

    @cached_property
    def levels(self) -> tuple:
        return tuple(Level(self, k) for k in range(self.d + 1))

    def level(self, k: int) -> Level:
        return self.levels[k]

    def points(self, k: int) -> list[Face]:
        """``P^k`` in the default order (increasing height over ``V_{k-1}``)."""
        return self.levels[k].points

    @cached_property
    def ambient(self) -> FacePoset:
        return self.levels[self.d].poset

    # -- serialization -------------------------------------------------
    def to_json(self) -> dict:
        return {"subspaces": [{"point": [format_scalar(a) for a in V.point],
                               "basis": [[format_scalar(a) for a in b] for b in V.basis]}
                              for V in self.subspaces]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)

    @classmethod
    def from_json(cls, arr: Arrangement, data: dict) -> "Flag":
        r = arr.radicand
        subs = tuple(AffineSubspace(tuple(parse_scalar(a, r) for a in V["point"]),
                                    tuple(tuple(parse_scalar(a, r) for a in b) for b in V["basis"]))
                     for V in data["subspaces"])
        return cls(arr, subs)


def section_point(flag: Flag, k: int, flat) -> Face:
    """The unique face of ``P^k`` whose support is ``flat`` (a Flat or zero set)."""
    zero = flat.zero if isinstance(flat, Flat) else frozenset(flat)
    try:
        return flag.levels[k].point_by_flat[zero]
    except KeyError:
        raise NoIntersection(f"flat {sorted(zero)} misses V_{k}") from None


# -- construction -------------------------------------------------------

def _hyperplane_in(V: AffineSubspace, alpha, beta) -> AffineSubspace:
    """``{t : alpha.t = beta}`` inside ``V``, as an ambient subspace."""
    k = V.dim
    sol = solve_affine([alpha], [beta], k)
    t0, null = sol
    point = V.at(t0)
    basis = tuple(combine(tuple(Fraction(0) for _ in V.point), V.basis, n) for n in null)
    return AffineSubspace(point, basis)


def _whole(d: int) -> AffineSubspace:
    return AffineSubspace(tuple(Fraction(0) for _ in range(d)),
                          tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)))


def build_flag(arr: Arrangement, seed: int = 0, retries: int = 200, spread: int = 7) -> Flag:
    """Top-down random flag with every section vertex strictly on the
    positive side of the next lower subspace; verified exactly."""
    if not arr.is_essential:
        raise FlagError("arrangement is not essential")
    rng = random.Random(seed)
    d = arr.dim
    subs = [None] * (d + 1)
    subs[d] = _whole(d)
    for k in range(d, 0, -1):
        V = subs[k]
        section = restrict(arr, V)
        verts = enumerate_faces(section).vertices
        for _ in range(retries):
            alpha = tuple(Fraction(rng.randint(-spread, spread), rng.randint(1, spread))
                          for _ in range(k))
            if all(a == 0 for a in alpha):
                continue
            lo = min((dot(alpha, v.point) for v in verts), default=Fraction(0))
            beta = lo - Fraction(rng.randint(1, spread), rng.randint(1, 3))
            W = _hyperplane_in(V, alpha, beta)
            try:
                check_general_position(arr, W)
            except GeneralPositionViolation:
                continue
            subs[k - 1] = W
            break
        else:
            raise FlagSearchExhausted(f"no general position V_{k - 1} after {retries} tries")
    flag = Flag(arr, tuple(subs))
    report = verify_flag(arr, flag)
    if not report.ok:
        raise FlagSearchExhausted(f"constructed flag failed verification: {report.failures()}")
    return flag


def flag_2d(arr: Arrangement, line: tuple, base_point: tuple) -> Flag:
    """Planar flag from ``V_1 = {a x + b y = c}`` (``line = (a, b, c)``) and ``V_0``."""
    a, b, c = (Fraction(x) if not hasattr(x, "sign") else x for x in line)
    V1 = AffineSubspace(tuple(base_point), ((-b, a),))
    if sign(a * base_point[0] + b * base_point[1] - c) != 0:
        raise FlagError("V_0 does not lie on V_1")
    return Flag(arr, (AffineSubspace(tuple(base_point)), V1, _whole(2)))


# -- verification ---------------------------------------------------------

@dataclass
class FlagReport:
    checks: list  # (name, ok, witness)

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self) -> list:
        return [(n, w) for n, ok, w in self.checks if not ok]

    def to_json(self) -> dict:
        return {"ok": self.ok,
                "checks": [{"check": n, "pass": ok, "witness": None if w is None else str(w)}
                           for n, ok, w in self.checks]}


def _contained(V: AffineSubspace, W: AffineSubspace) -> bool:
    try:
        _coords_in(W, V.point)
        for b in V.basis:
            _dir_coords_in(W, b)
    except FlagError:
        return False
    return True


def verify_flag(arr: Arrangement, flag: Flag) -> FlagReport:
    checks = []
    subs = flag.subspaces
    d = arr.dim
    dims_ok = len(subs) == d + 1 and all(V.dim == k for k, V in enumerate(subs))
    checks.append(("dimensions", dims_ok, None if dims_ok else [V.dim for V in subs]))
    if not dims_ok:
        return FlagReport(checks)
    for k in range(d):
        ok = _contained(subs[k], subs[k + 1])
        checks.append((f"nested V_{k} in V_{k + 1}", ok, None))
        if not ok:
            return FlagReport(checks)
    for k, V in enumerate(subs):
        try:
            check_general_position(arr, V)
            checks.append((f"general position V_{k}", True, None))
        except GeneralPositionViolation as exc:
            checks.append((f"general position V_{k}", False, sorted(exc.flat.zero)))
    if not all(ok for _, ok, _ in checks):
        return FlagReport(checks)
    for k in range(1, d + 1):
        lev = flag.levels[k]
        hs = [(lev.vertex_height(v), v) for v in lev.poset.vertices]
        bad = [v for h, v in hs if sign(h) <= 0]
        checks.append((f"one side V_{k - 1} in V_{k}", not bad,
                       None if not bad else (bad[0], lev.points[0])))
        witness = None
        for C in lev.poset.chambers:
            if lev.poset.is_bounded(C):
                sg = {sign(lev.vertex_height(v)) for v in lev.poset.closure_vertices(C)}
                if -1 in sg and 1 in sg or 0 in sg:
                    witness = C
                    break
        checks.append((f"V_{k - 1} misses bounded chambers of A^{k}", witness is None, witness))
    return FlagReport(checks)
