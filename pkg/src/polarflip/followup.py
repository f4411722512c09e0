"""Follow-up orderings, the planar completeness test and supersolvable flags."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .arrangement import (AffineSubspace, Arrangement, GeneralPositionViolation, check_general_position,
                          restrict)
from .faces import enumerate_faces
from .flag import Flag, FlagError, FlagSearchExhausted, flag_2d, verify_flag
from .linalg import dot, rank, solve_affine, vadd, vscale, vsub
from .scalar import sign
from .sweep import validate_special_ordering


class NotCentral(ValueError):
    pass


class MissingCover(ValueError):
    pass


class DegenerateWalk(ValueError):
    pass


# -- follow-up ordering -----------------------------------------------------

def _group_order(flag: Flag, k: int, lower: Sequence, covers) -> tuple:
    """Sort ``P^k`` by the position of the first lower point covering each
    face, then by height over ``V_{k-1}``."""
    lev = flag.levels[k]
    pos = {s: i for i, s in enumerate(lower)}
    keyed = []
    for F in lev.points:
        cands = [J for J in lower if covers(J, F.signs)]
        if not cands:
            raise MissingCover(f"no point of level {k - 1} covers {F.signs}")
        J = min(cands, key=pos.__getitem__)
        keyed.append(((pos[J], lev.height(F.point)), F.signs))
    keyed.sort()
    for (a, b) in zip(keyed, keyed[1:]):
        if a[0] == b[0]:
            raise DegenerateWalk(f"two faces at the same place on the line of level {k - 1} point")
    return tuple(s for _, s in keyed)


def _zero(s) -> frozenset:
    return frozenset(i for i, x in enumerate(s) if x == 0)


def followup_order(flag: Flag) -> dict:
    """Level by level: faces grouped by their least covering point of the
    level below, each group walked outward along that point's line."""
    out = {0: tuple(p.signs for p in flag.points(0))}
    for k in range(1, flag.d + 1):
        out[k] = _group_order(flag, k, out[k - 1], lambda J, F: _zero(J) <= _zero(F))
    return out


def is_followup(flag: Flag) -> tuple[bool, dict | None]:
    order = followup_order(flag)
    for k in range(1, flag.d + 1):
        ok, cert = validate_special_ordering(flag, k, order[k])
        if not ok:
            return False, {"level": k, **cert}
    return True, None


# -- planar flags and sectors -------------------------------------------------

@dataclass
class FlagCandidate2D:
    """A planar flag ``(b, l)`` together with how it was produced."""

    flag: Flag
    h0: int
    orientation: int | None = None
    side: int | None = None

    @property
    def arrangement(self) -> Arrangement:
        return self.flag.arrangement

    @property
    def b(self) -> tuple:
        return self.flag.subspaces[0].point

    def describe(self) -> dict:
        return {"h0": self.h0, "orientation": self.orientation, "side": self.side}


@dataclass
class Sectors:
    points: list  # a_1, a_2, ... on h0 (sign vectors)
    lines: list  # M_j as lists of line indices in crossing order
    members: list  # vertices in each sector
    uncovered: list
    candidate: FlagCandidate2D = field(repr=False)


def candidate_from_flag(flag: Flag, orientation=None, side=None) -> FlagCandidate2D:
    """``h0`` is the first line met by ``l`` moving away from ``b``."""
    first = flag.points(1)[0]
    (h0,) = tuple(_zero(first.signs))
    return FlagCandidate2D(flag, h0, orientation, side)


def _dist2(x, y):
    d = vsub(x, y)
    return dot(d, d)


def sectors_2d(cand: FlagCandidate2D) -> Sectors:
    arr = cand.arrangement
    flag = cand.flag
    b = cand.b
    h0 = cand.h0
    verts = flag.ambient.vertices
    on_h0 = sorted((v for v in verts if h0 in v.zero), key=lambda v: _dist2(v.point, b))
    crossing = {next(iter(_zero(p.signs))): i for i, p in enumerate(flag.points(1))}
    hs = arr.hyperplanes
    bside = [h.side(b) for h in hs]

    def plus(i, v):
        return v.signs[i] == bside[i]

    lines = []
    for a in on_h0:
        M = sorted((i for i in a.zero if i != h0), key=crossing.__getitem__)
        lines.append(M)
    members = []
    seen = set()
    for j, M in enumerate(lines):
        hi = M[-1]
        if j == 0:
            inside = [v for v in verts if v.signs[h0] in (0, bside[h0]) and not plus(hi, v)]
        else:
            lo = lines[j - 1][-1]
            inside = [v for v in verts if plus(lo, v) and not plus(hi, v)]
        members.append([v.signs for v in inside])
        seen.update(v.signs for v in inside)
    uncovered = [v.signs for v in verts if v.signs not in seen]
    return Sectors([a.signs for a in on_h0], lines, members, uncovered, cand)


def incomplete_points(cand: FlagCandidate2D, sectors: Sectors | None = None) -> list:
    """Vertices of a sector ``L_j`` on no line through ``a_j``. The base
    line ``h0`` counts: its points are flipped first in any case."""
    sec = sectors or sectors_2d(cand)
    bad = []
    for j, (a, M, inside) in enumerate(zip(sec.points, sec.lines, sec.members), start=1):
        for p in inside:
            if p != a and not any(p[i] == 0 for i in M + [cand.h0]):
                bad.append((j, p))
    return bad


def is_complete_2d(cand: FlagCandidate2D, sectors: Sectors | None = None) -> bool:
    sec = sectors or sectors_2d(cand)
    return not sec.uncovered and not incomplete_points(cand, sec)


def _point_on(h) -> tuple:
    sol = solve_affine([h.normal], [h.offset], len(h.normal))
    return sol[0]


def planar_candidate(arr: Arrangement, h0: int, orientation: int, side: int,
                     shrink: int = 12) -> FlagCandidate2D | None:
    """``l`` nearly parallel to ``h0``, crossing it behind every vertex and
    passing beyond all of them on side ``side``; ``b`` just before that
    crossing. Returns ``None`` when no tried slope gives a valid flag."""
    h = arr.hyperplanes[h0]
    n = h.normal
    u = vscale(orientation, (-n[1], n[0]))
    q0 = _point_on(h)
    uu = dot(u, u)
    nn = dot(n, n)
    verts = [v.point for v in _vertices(arr)]
    ts = [dot(u, vsub(p, q0)) / uu for p in verts] or [Fraction(0)]
    vals = [abs(h.value(p)) for p in verts] or [Fraction(0)]
    tmin, dmax = min(ts), max(vals)
    c = Fraction(1, 2)
    for _ in range(shrink):
        T = tmin - dmax / (c * nn) - 1
        direction = vadd(u, vscale(side * c, n))
        start = vadd(q0, vscale(T, u))
        b = vadd(start, vscale(-1, direction))
        line = _line_through(b, direction)
        try:
            flag = flag_2d(arr, line, b)
            if verify_flag(arr, flag).ok:
                return candidate_from_flag(flag, orientation, side)
        except (FlagError, GeneralPositionViolation):
            pass
        c = c / 4
    return None


def _line_through(p, direction) -> tuple:
    a, bb = -direction[1], direction[0]
    return (a, bb, a * p[0] + bb * p[1])


def _vertices(arr: Arrangement):
    return enumerate_faces(arr).vertices


@dataclass
class FollowupDecision:
    followup: bool
    witness: FlagCandidate2D | None
    candidates: list  # one dict per examined candidate

    def to_json(self) -> dict:
        return {"followup": self.followup,
                "witness": None if self.witness is None else
                {**self.witness.describe(), "flag": self.witness.flag.to_json()},
                "candidates": self.candidates}


def enumerate_candidates(arr: Arrangement, random_budget: int = 0, seed: int = 0) -> list:
    from .flag import build_flag
    out = []
    for h0 in range(len(arr.hyperplanes)):
        for orientation in (1, -1):
            for side in (1, -1):
                c = planar_candidate(arr, h0, orientation, side)
                if c is not None:
                    out.append(c)
    rng = random.Random(seed)
    for _ in range(random_budget):
        try:
            out.append(candidate_from_flag(build_flag(arr, rng.randrange(1 << 30))))
        except FlagError:
            continue
    return out


def decide_followup_2d(arr: Arrangement, random_budget: int = 4, seed: int = 0,
                       stop_at_first: bool = True, cross_check: bool = True) -> FollowupDecision:
    """Search candidate flags for one making the arrangement complete. With
    ``cross_check`` each candidate also records whether its follow-up
    ordering is special."""
    if arr.dim != 2:
        raise ValueError("planar arrangements only")
    if not _vertices(arr):
        return FollowupDecision(True, None, [{"vertices": 0}])
    rows = []
    witness = None
    for cand in enumerate_candidates(arr, random_budget, seed):
        complete = is_complete_2d(cand)
        row = {**cand.describe(), "complete": complete}
        if cross_check:
            row["followup"] = is_followup(cand.flag)[0]
        rows.append(row)
        if complete and witness is None:
            witness = cand
            if stop_at_first:
                break
    return FollowupDecision(witness is not None, witness, rows)


# -- supersolvable arrangements ---------------------------------------------

@dataclass(frozen=True)
class Filtration:
    """``A_1 < A_2 < ... < A_d`` as sets of hyperplane indices."""

    steps: tuple

    def __len__(self):
        return len(self.steps)

    def to_json(self) -> list:
        return [sorted(s) for s in self.steps]


def _rank_of(arr: Arrangement, idx) -> int:
    return rank([arr.hyperplanes[i].normal for i in idx]) if idx else 0


def filtration_ok(arr: Arrangement, filt: Filtration) -> tuple[bool, str | None]:
    """Conditions (1) and (2) checked directly from the lattice."""
    for i, A in enumerate(filt.steps, start=1):
        if _rank_of(arr, A) != i:
            return False, f"A_{i} has rank {_rank_of(arr, A)}"
        if i > 1 and not filt.steps[i - 2] <= A:
            return False, f"A_{i - 1} is not contained in A_{i}"
    for i in range(2, len(filt.steps) + 1):
        A, below = filt.steps[i - 1], filt.steps[i - 2]
        for a in A:
            for b in A:
                if a < b:
                    X = arr.closure(arr.subspace_of({a, b}))
                    if not X & below:
                        return False, f"H{a} and H{b} in A_{i} meet outside A_{i - 1}"
    return True, None


def supersolvable_filtration(arr: Arrangement) -> Filtration | None:
    """Backtracking over chains of flats ``X_d < ... < X_1`` with
    ``A_i`` the hyperplanes through ``X_i``."""
    if not arr.is_central:
        raise NotCentral("supersolvability is defined for central arrangements")
    d = arr.rank
    by_rank = {}
    for X in arr.flats:
        r = _rank_of(arr, X.zero)
        by_rank.setdefault(r, []).append(X.zero)
    top = frozenset(range(len(arr.hyperplanes)))

    def pair_ok(A, below):
        for a in A:
            for b in A:
                if a < b and not arr.closure(arr.subspace_of({a, b})) & below:
                    return False
        return True

    def rec(chain):
        i = d - len(chain) + 1  # rank of the last element of chain
        if i == 1:
            return chain
        A = chain[-1]
        for Z in by_rank.get(i - 1, []):
            if Z < A and pair_ok(A, Z):
                res = rec(chain + [Z])
                if res:
                    return res
        return None

    res = rec([top])
    return None if res is None else Filtration(tuple(reversed(res)))


def _old_point(arr: Arrangement, signs, A, k) -> bool:
    return _rank_of(arr, _zero(signs) & A) == k


def separation_report(arr: Arrangement, flag: Flag, A, upto: int) -> list:
    """Per level ``k <= upto``: largest squared distance from ``V_0`` of a
    point of ``A`` versus smallest of the remaining points."""
    v0 = flag.subspaces[0].point
    rows = []
    for k in range(1, upto + 1):
        V = flag.subspaces[k]
        old, new = [], []
        for p in flag.points(k):
            dist = _dist2(V.at(p.point), v0)
            (old if _old_point(arr, p.signs, A, k) else new).append(dist)
        ok = not old or not new or max(old) < min(new)
        rows.append({"level": k, "old": len(old), "new": len(new), "pass": ok})
    return rows


def _sub(arr: Arrangement, idx) -> tuple[Arrangement, list]:
    order = sorted(idx)
    return Arrangement(arr.dim, tuple(arr.hyperplanes[i] for i in order), arr.radicand), order


def _slide(arr: Arrangement, old, new, point, first, rng: random.Random):
    """A direction inside every hyperplane of ``old`` that moves the
    crossings of every new hyperplane with the first flag line the same way,
    oriented so that forward steps push them past the old crossings: sliding
    along it fixes the old picture and pushes the new points away."""
    basis = arr.subspace_of(old).basis
    fresh = [arr.hyperplanes[j] for j in new - old]
    for _ in range(100):
        coeffs = [Fraction(rng.randint(-3, 3)) for _ in basis]
        v = tuple(sum((c * b[t] for c, b in zip(coeffs, basis)), Fraction(0)) for t in range(arr.dim))
        if not any(v):
            continue
        rates = {sign(dot(h.normal, v)) * sign(dot(h.normal, first)) for h in fresh}
        if len(rates) != 1 or 0 in rates:
            continue
        crossing = next((-arr.hyperplanes[j].value(point) / dot(arr.hyperplanes[j].normal, first)
                         for j in sorted(old) if dot(arr.hyperplanes[j].normal, first) != 0), None)
        if crossing is not None and rates.pop() * sign(crossing) > 0:
            v = vscale(-1, v)
        return v
    return None


def ssfol_flag(arr: Arrangement, filt: Filtration, seed: int = 0, budget: int = 200,
               tilts: int = 8, max_shift: int = 12) -> Flag:
    """Grow the flag one filtration step at a time: add a direction (a tilt)
    and then slide the whole chain along the common line of the previous
    step until the flag is general for the bigger arrangement and the old
    points sit closer to ``V_0`` than the new ones."""
    ok, why = filtration_ok(arr, filt)
    if not ok:
        raise ValueError(f"invalid filtration: {why}")
    d = arr.dim
    rng = random.Random(seed)

    def rand_vec():
        while True:
            v = tuple(Fraction(rng.randint(-19, 19)) for _ in range(d))
            if any(v):
                return v

    def intrinsic(point, basis, m):
        zero = tuple(Fraction(0) for _ in range(m))
        unit = [tuple(Fraction(int(i == j)) for j in range(m)) for i in range(m)]
        return [AffineSubspace(zero, tuple(unit[:k])) for k in range(m + 1)]

    subs = {i: _sub(arr, filt.steps[i - 1]) for i in range(1, d + 1)}

    def cheap(point, basis, sub):
        # the crossings on the first line sit on one side of the point, and
        # every partial span is in general position in ambient coordinates
        ts = [h.value(point) * dot(h.normal, basis[0]) for h in sub.hyperplanes]
        if len({sign(t) for t in ts}) != 1 or sign(ts[0]) == 0:
            return False
        for k in range(len(basis)):
            check_general_position(sub, AffineSubspace(point, tuple(basis[:k])))
        return True

    def good(point, basis, i):
        sub, order = subs[i]
        try:
            if not cheap(point, basis, sub):
                return False
            space = AffineSubspace(point, tuple(basis[:i]))
            red = restrict(sub, space)
            fl = Flag(red, tuple(intrinsic(point, basis, i)))
            if not verify_flag(red, fl).ok:
                return False
            if i > 1:
                prev = {order.index(j) for j in filt.steps[i - 2]}
                if not all(r["pass"] for r in separation_report(red, fl, prev, i - 1)):
                    return False
        except (GeneralPositionViolation, FlagError):
            return False
        return True

    for _ in range(budget):
        point = rand_vec()
        basis = [rand_vec()]
        if any(_slide(arr, filt.steps[i - 2], filt.steps[i - 1], point, basis[0], rng) is None
               for i in range(2, d + 1)):
            continue
        if not good(point, basis, 1):
            continue
        for i in range(2, d + 1):
            found = False
            for _ in range(tilts):
                slide = _slide(arr, filt.steps[i - 2], filt.steps[i - 1], point, basis[0], rng)
                if slide is None:
                    break
                u = rand_vec()
                trial = basis + [u]
                # a tilt that fails far out along the slide is hopeless
                if not good(vadd(point, vscale(2 ** (max_shift - 1), slide)), trial, i):
                    continue
                for s in [0] + [2 ** e for e in range(max_shift)]:
                    p = vadd(point, vscale(s, slide))
                    if good(p, trial, i):
                        point, basis, found = p, trial, True
                        break
                if found:
                    break
            if not found:
                break
        else:
            subs = tuple(AffineSubspace(point, tuple(basis[:k])) for k in range(d + 1))
            flag = Flag(arr, subs)
            if verify_flag(arr, flag).ok:
                return flag
    raise FlagSearchExhausted("no supersolvable flag found within the budget")


def ssfol_order(arr: Arrangement, filt: Filtration, flag: Flag) -> dict:
    """Each level grouped by the least covering point of ``A_{d-1}`` one
    level down, walked outward along its line."""
    d = arr.dim
    A = filt.steps[d - 2] if d >= 2 else filt.steps[0]
    out = {0: tuple(p.signs for p in flag.points(0))}
    for k in range(1, d + 1):
        lower = [J for J in out[k - 1] if k - 1 == 0 or _old_point(arr, J, A, k - 1)]
        out[k] = _group_order(flag, k, lower, lambda J, F: (_zero(J) & A) <= _zero(F))
    return out


def segmentato_violations(arr: Arrangement, filt: Filtration, flag: Flag, orderings: dict) -> list:
    """Pairs breaking: a point of ``A_{i-1}`` precedes a point of
    ``A_i`` outside it when both lie on the line of one lower point."""
    bad = []
    for i in range(2, len(filt.steps) + 1):
        old_set, new_set = filt.steps[i - 2], filt.steps[i - 1]
        for k in range(1, i):
            pos = {s: n for n, s in enumerate(orderings[k])}
            pts = [p.signs for p in flag.points(k)]
            olds = [s for s in pts if _old_point(arr, s, old_set, k)]
            news = [s for s in pts if _old_point(arr, s, new_set, k) and s not in olds]
            for F in flag.points(k - 1) if k > 1 else []:
                z = _zero(F.signs)
                for a in olds:
                    for b in news:
                        if z <= _zero(a) and z <= _zero(b) and pos[a] > pos[b]:
                            bad.append((k, a, b))
    return bad
