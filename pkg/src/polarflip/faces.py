"""Face enumeration by sign vectors and the face poset.

Faces are identified by their sign vectors. The order is the one used
throughout: ``F <= G`` when the closure of ``F`` contains ``G`` (so chambers
are minimal and vertices maximal), and the rank of a face is its codimension.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from .arrangement import Arrangement, Flat
from .linalg import dot, vadd, vscale, vsub
from .scalar import is_zero, sign


class NotIncident(ValueError):
    pass


@dataclass(frozen=True)
class Face:
    signs: tuple
    dim: int
    point: tuple  # exact point in the relative interior

    @property
    def zero(self) -> frozenset:
        return frozenset(i for i, s in enumerate(self.signs) if s == 0)

    def __repr__(self):
        return "Face(" + "".join("+" if s > 0 else "-" if s < 0 else "0" for s in self.signs) + ")"


def conforms(lower: tuple, upper: tuple) -> bool:
    """``lower <= upper``: ``upper`` lies in the closure of ``lower``."""
    return all(u == 0 or u == l for l, u in zip(lower, upper))


def _pushoffs(arr: Arrangement, X: Flat, Y: Flat, q):
    """Two points of X just off the hyperplane Y of X, on either side of ``q``."""
    h_new = next(i for i in sorted(Y.zero - X.zero))
    normal = arr.hyperplanes[h_new].normal
    u = next(b for b in X.space.basis if not is_zero(dot(normal, b)))
    pos, neg = [], []
    for i, h in enumerate(arr.hyperplanes):
        if i in Y.zero:
            continue
        s = dot(h.normal, u)
        if is_zero(s):
            continue
        t = -h.value(q) / s
        (pos if sign(t) > 0 else neg).append(t)
    eps_p = min(pos) / 2 if pos else Fraction(1)
    eps_n = max(neg) / 2 if neg else Fraction(-1)
    return vadd(q, vscale(eps_p, u)), vadd(q, vscale(eps_n, u))


def _crosses(arr: Arrangement, X: Flat) -> bool:
    return any(i not in X.zero and not all(is_zero(dot(h.normal, b)) for b in X.space.basis)
               for i, h in enumerate(arr.hyperplanes))


def _enumerate(arr: Arrangement) -> list[Face]:
    flats = sorted(arr.flats, key=lambda f: f.dim)
    on_flat: dict[frozenset, dict[tuple, Face]] = {}
    for X in flats:
        faces: dict[tuple, Face] = {}
        if not _crosses(arr, X):
            s = arr.signs(X.space.point)
            faces[s] = Face(s, X.dim, X.space.point)
        else:
            for Y in flats:
                if Y.dim != X.dim - 1 or not X.zero < Y.zero:
                    continue
                for G in on_flat[Y.zero].values():
                    for pt in _pushoffs(arr, X, Y, G.point):
                        s = arr.signs(pt)
                        if s not in faces:
                            faces[s] = Face(s, X.dim, pt)
        on_flat[X.zero] = faces
    out = [f for faces in on_flat.values() for f in faces.values()]
    out.sort(key=lambda f: (arr.dim - f.dim, tuple(-s for s in f.signs)))
    return out


class FacePoset:
    """All faces of an arrangement with the closure order, facets and
    recession data."""

    def __init__(self, arr: Arrangement):
        self.arrangement = arr
        self.faces: list[Face] = _enumerate(arr)
        self.index = {f.signs: i for i, f in enumerate(self.faces)}
        n = len(self.faces)
        self._up = [[] for _ in range(n)]     # facets: codim + 1
        self._down = [[] for _ in range(n)]   # cofacets: codim - 1
        by_dim: dict[int, list[int]] = {}
        for i, f in enumerate(self.faces):
            by_dim.setdefault(f.dim, []).append(i)
        for i, f in enumerate(self.faces):
            for j in by_dim.get(f.dim - 1, []):
                if conforms(f.signs, self.faces[j].signs):
                    self._up[i].append(j)
                    self._down[j].append(i)

    def __len__(self):
        return len(self.faces)

    def __iter__(self):
        return iter(self.faces)

    def __getitem__(self, signs) -> Face:
        return self.faces[self.index[tuple(signs)]]

    def __contains__(self, signs) -> bool:
        return tuple(signs) in self.index

    @property
    def d(self) -> int:
        return self.arrangement.dim

    def codim(self, f: Face) -> int:
        return self.d - f.dim

    def leq(self, f: Face, g: Face) -> bool:
        return conforms(f.signs, g.signs)

    def facets(self, f: Face) -> list[Face]:
        return [self.faces[j] for j in self._up[self.index[f.signs]]]

    def cofacets(self, f: Face) -> list[Face]:
        return [self.faces[j] for j in self._down[self.index[f.signs]]]

    def of_dim(self, k: int) -> list[Face]:
        return [f for f in self.faces if f.dim == k]

    @cached_property
    def chambers(self) -> list[Face]:
        return self.of_dim(self.d)

    @cached_property
    def vertices(self) -> list[Face]:
        return self.of_dim(0)

    def above(self, f: Face) -> list[Face]:
        """Faces ``G >= f`` (the closure of ``f``)."""
        return [g for g in self.faces if conforms(f.signs, g.signs)]

    def below(self, f: Face) -> list[Face]:
        """Faces ``G <= f`` (the star of ``f``)."""
        return [g for g in self.faces if conforms(g.signs, f.signs)]

    @cached_property
    def _closure_vertices(self) -> dict:
        return {f.signs: [v for v in self.vertices if conforms(f.signs, v.signs)] for f in self.faces}

    def closure_vertices(self, f: Face) -> list[Face]:
        return self._closure_vertices[f.signs]

    @cached_property
    def unbounded_edges(self) -> dict:
        """Edge signs -> (vertex, outward direction) for edges with one vertex."""
        out = {}
        for e in self.of_dim(1):
            vs = self.closure_vertices(e)
            if len(vs) == 1:
                out[e.signs] = (vs[0], vsub(e.point, vs[0].point))
        return out

    def rays(self, f: Face) -> list[tuple]:
        """Directions of the unbounded edges in the closure of ``f``; for an
        essential arrangement these generate its recession cone."""
        return [direction for s, (_, direction) in self.unbounded_edges.items()
                if conforms(f.signs, s)]

    def is_bounded(self, f: Face) -> bool:
        return not self.rays(f)

    def opposite(self, f: Face, g: Face) -> Face:
        return opposite_face(self, f, g)


@lru_cache(maxsize=128)
def enumerate_faces(arr: Arrangement) -> FacePoset:
    """Face poset, shared between equal arrangements."""
    return FacePoset(arr)


def opposite_face(poset: FacePoset, f: Face, g: Face) -> Face:
    """``op_g(f)``: negate the signs of ``f`` on every hyperplane through ``g``."""
    if not conforms(f.signs, g.signs):
        raise NotIncident(f"{f} is not below {g}")
    s = tuple(-a if b == 0 else a for a, b in zip(f.signs, g.signs))
    return poset[s]


def face_counts(poset: FacePoset) -> dict:
    counts = {}
    for f in poset:
        counts[f.dim] = counts.get(f.dim, 0) + 1
    return counts
