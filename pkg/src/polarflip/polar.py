"""The combinatorial polar ordering of all faces.

The order is read off the nested sweeps. At level ``k`` the faces meeting
``V_{k-1}`` come first, in the order of level ``k-1``. Then, for each flipped
vertex ``p_j`` in turn, come ``p_j`` and the faces first crossed by that flip.
Those faces are faces of the section carried by the moving hyperplane, and
they are ordered as they appear in the polar order of that section. The
section is swept in the same way, starting from its induced ordering.

The one-pass key rule (least facet first, ties by the position of the
section point on the support) is kept as :func:`cinque_key_order` for
comparison; on some inputs it yields a cyclic matching.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .faces import Face, conforms
from .flag import Flag
from .sweep import DegenerateSweep, induced_sequence, sign_string, sweep_poset


class PolarError(ValueError):
    pass


class KeyTie(PolarError):
    pass


@dataclass(frozen=True)
class Signature:
    k: int
    j: int

    def as_tuple(self) -> tuple:
        return (self.k, self.j)


def positions(flag: Flag, orderings: dict) -> dict:
    """``level -> {signs: position}``; 1-based, the base chamber gets 0."""
    pos = {0: {flag.points(0)[0].signs: 0}}
    for k in range(1, flag.d + 1):
        order = orderings[k]
        expect = sorted(p.signs for p in flag.points(k))
        if sorted(tuple(x) for x in order) != expect:
            raise PolarError(f"ordering of level {k} is not a permutation of P^{k}")
        pos[k] = {tuple(x): i for i, x in enumerate(order, start=1)}
    return pos


# -- strata: real levels and the sections carried by moving hyperplanes -----

class _Stratum:
    """A (pseudo)arrangement of dimension ``n`` with a vertex ordering and
    the stratum of the next lower flag level. Faces are ambient sign vectors
    with dimensions relative to the stratum."""

    def __init__(self, n, faces, order, lower, ends, section_orders=None):
        self.n = n
        self.faces = faces              # signs -> dim
        self.order = tuple(order)
        self.lower = lower
        self.ends = ends                # signs -> (closure vertices, slopes)
        self.section_orders = section_orders

    def crossed(self, j: int) -> frozenset:
        swept = set(self.order[:j])
        out = []
        for s in self.faces:
            verts, slopes = self.ends[s]
            seen = set(slopes)
            seen.update(-1 if v in swept else 1 for v in verts)
            if len(seen) > 1:
                out.append(s)
        return frozenset(out)

    def section(self, j: int) -> "_Stratum":
        crossed = self.crossed(j)
        faces = {s: self.faces[s] - 1 for s in crossed}
        n = self.n - 1
        lower = self.lower.lower if self.lower is not None else None
        verts = [s for s, dm in faces.items() if dm == 0]
        edges = [s for s, dm in faces.items() if dm == 1]
        back = lower.faces if lower is not None else {}
        edge_verts = {e: [v for v in verts if conforms(e, v)] for e in edges}
        edge_slopes = {}
        for e, vs in edge_verts.items():
            if len(vs) == 2:
                edge_slopes[e] = ()
            elif len(vs) == 1:
                edge_slopes[e] = (-1,) if e in back else (1,)
            elif not vs:
                edge_slopes[e] = (-1, 1)
            else:
                raise DegenerateSweep(f"section edge {sign_string(e)} has {len(vs)} vertices")
        ends = {}
        for s in faces:
            cv = frozenset(v for v in verts if conforms(s, v))
            sl = frozenset(x for e in edges if conforms(s, e) for x in edge_slopes[e])
            ends[s] = (cv, sl)
        if n == 0:
            order = ()
        elif n == 1:
            order = _walk(faces, lower)
        elif self.section_orders is not None:
            order = self.section_orders[j]
        else:
            raise PolarError("sections of sections beyond dimension one are not supported")
        return _Stratum(n, faces, order, lower, ends)


def _walk(faces: dict, lower: "_Stratum") -> tuple:
    """Vertices of a one-dimensional stratum from the face on the lower level outward."""
    (start,) = lower.faces
    if start not in faces:
        raise DegenerateSweep(f"section line misses the face {sign_string(start)}")
    out, seen, cur = [], {start}, start
    while True:
        want = 0 if faces[cur] == 1 else 1
        nxt = [s for s, dm in faces.items() if dm == want and s not in seen
               and (conforms(cur, s) if want == 0 else conforms(s, cur))]
        if not nxt:
            break
        if len(nxt) > 1:
            raise DegenerateSweep(f"section line branches at {sign_string(cur)}")
        cur = nxt[0]
        seen.add(cur)
        if want == 0:
            out.append(cur)
    if len(seen) != len(faces):
        raise DegenerateSweep("section line is not a single path")
    return tuple(out)


def _strata(flag: Flag, orderings: dict) -> list:
    base = flag.points(0)[0].signs
    out = [_Stratum(0, {base: 0}, (), None, {base: (frozenset(), frozenset())})]
    for k in range(1, flag.d + 1):
        sp = sweep_poset(flag, k)
        faces = {f.signs: f.dim for f in sp.poset}
        sections = None
        if k >= 3:
            sections = induced_sequence(flag, k, orderings[k], orderings[k - 1])
        out.append(_Stratum(k, faces, orderings[k], out[k - 1], sp.ends, sections))
    return out


def _sequence(st: _Stratum) -> list:
    if st.n == 0:
        if len(st.faces) != 1:
            raise DegenerateSweep(f"a point section holds {len(st.faces)} faces")
        return list(st.faces)
    seq = _sequence(st.lower)
    prev = st.crossed(0)
    if set(seq) != prev:
        raise DegenerateSweep("faces crossed at the start differ from the lower level")
    for j, p in enumerate(st.order, start=1):
        cur = st.crossed(j)
        new = cur - prev
        seq.append(p)
        if new:
            sub = [s for s in _sequence(st.section(j)) if s in new]
            if len(sub) != len(new):
                raise DegenerateSweep(f"faces first crossed at {sign_string(p)} are missing "
                                      "from the section order")
            seq.extend(sub)
        prev = cur
    if len(seq) != len(st.faces) or len(set(seq)) != len(seq):
        raise DegenerateSweep("sweep does not meet every face exactly once")
    return seq


def sweep_sequence(flag: Flag, orderings: dict) -> list:
    """All faces in polar order, as sign vectors."""
    orderings = {k: tuple(tuple(x) for x in o) for k, o in orderings.items()}
    return _sequence(_strata(flag, orderings)[flag.d])


# -- the order object --------------------------------------------------------

class PolarOrder:
    def __init__(self, flag: Flag, orderings: dict, sequence: Sequence | None = None):
        self.flag = flag
        self.orderings = {k: tuple(tuple(x) for x in o) for k, o in orderings.items()}
        self.poset = flag.ambient
        self.pos = positions(flag, self.orderings)
        if sequence is None:
            sequence = sweep_sequence(flag, self.orderings)
        self.order = tuple(self.poset[s] for s in sequence)
        self.rank = {F.signs: i for i, F in enumerate(self.order)}
        if len(self.rank) != len(self.poset):
            raise PolarError("order does not list every face once")

    def __len__(self):
        return len(self.order)

    def lt(self, F, G) -> bool:
        return self.rank[_s(F)] < self.rank[_s(G)]

    def is_point(self, F) -> bool:
        """``F`` in ``P``: it meets ``V_{codim F}``."""
        s = _s(F)
        return s in self.pos[self.poset.codim(self.poset[s])]

    def min_facet(self, F) -> Face | None:
        facets = self.poset.facets(self.poset[_s(F)])
        if not facets:
            return None
        return min(facets, key=lambda G: self.rank[G.signs])

    @cached_property
    def least(self) -> dict:
        out = {}
        for F in self.poset:
            m = self.min_facet(F)
            out[F.signs] = None if m is None else m.signs
        return out

    @cached_property
    def signatures(self) -> dict:
        return {F.signs: signature(self.flag, self.orderings, F) for F in self.poset}

    def to_rows(self) -> list[dict]:
        rows = []
        for i, F in enumerate(self.order):
            sig = self.signatures[F.signs]
            m = self.least[F.signs]
            rows.append({"rank": i, "face": sign_string(F.signs), "codim": self.poset.codim(F),
                         "k": sig.k, "j": sig.j, "point": self.is_point(F),
                         "least_facet": None if m is None else sign_string(m)})
        return rows


def _s(F) -> tuple:
    return F.signs if isinstance(F, Face) else tuple(F)


def build_polar_order(flag: Flag, orderings: dict, validate: bool = True) -> PolarOrder:
    if validate:
        from .sweep import validate_special_ordering
        for k in range(1, flag.d + 1):
            ok, cert = validate_special_ordering(flag, k, orderings[k])
            if not ok:
                raise PolarError(f"ordering of level {k} is not special: {cert}")
    return PolarOrder(flag, orderings)


def min_facet(order: PolarOrder, F) -> Face | None:
    return order.min_facet(F)


def signature(flag: Flag, orderings: dict, F) -> Signature:
    """``(k_F, j_F)``: the first level meeting ``F`` and the sweep step at
    which that level's moving hyperplane first reaches ``F``."""
    s = _s(F)
    if s == flag.points(0)[0].signs:
        return Signature(0, 0)
    for k in range(1, flag.d + 1):
        lev = flag.levels[k]
        if s not in lev.poset:
            continue
        pos = {tuple(x): i for i, x in enumerate(orderings[k], start=1)}
        if s in pos:
            return Signature(k, pos[s])
        verts = lev.poset.closure_vertices(lev.poset[s])
        if not verts:
            raise PolarError(f"section of {sign_string(s)} on V_{k} has no vertex")
        return Signature(k, min(pos[v.signs] for v in verts))
    raise PolarError(f"face {sign_string(s)} meets no level of the flag")


def check_trilex(order: PolarOrder) -> tuple[bool, tuple | None]:
    """Lexicographically smaller ``(k, j)`` must come first in the order."""
    sig = order.signatures
    best: dict = {}
    for F in order.order:
        t = sig[F.signs].as_tuple()
        for u, G in best.items():
            if t < u:
                return False, (G, F)
        best.setdefault(t, F)
    return True, None


# -- the one-pass key rule and the rule audit ---------------------------------

def cinque_keys(flag: Flag, orderings: dict, reverse_ties: bool = False) -> dict:
    """Keys of the one-pass rule: a point of ``P^c`` gets ``((c, pos),)``;
    any other face extends the key of its least facet by ``(c, pos of F_0)``."""
    pos = positions(flag, orderings)
    poset = flag.ambient
    d = flag.d
    keys: dict = {}
    for c in range(d, -1, -1):
        for F in poset.of_dim(d - c):
            s = F.signs
            if s in pos[c]:
                keys[s] = ((c, pos[c][s]),)
                continue
            Fp = min(poset.facets(F), key=lambda G: keys[G.signs])
            p0 = pos[c][flag.levels[c].point_by_flat[F.zero].signs]
            keys[s] = keys[Fp.signs] + ((c, -p0 if reverse_ties else p0),)
    return keys


def cinque_key_order(flag: Flag, orderings: dict, reverse_ties: bool = False) -> PolarOrder:
    keys = cinque_keys(flag, orderings, reverse_ties)
    seq = sorted(keys, key=keys.get)
    for a, b in zip(seq, seq[1:]):
        if keys[a] == keys[b]:
            raise KeyTie(f"{sign_string(a)} and {sign_string(b)} share the key {keys[a]}")
    return PolarOrder(flag, orderings, seq)


def check_cinque_rules(flag: Flag, orderings: dict, ranked: Sequence, ties: bool = True) -> dict:
    """Audit a total order of faces against the recursive rules, with least
    facets taken from the order being audited. ``ties=False`` skips the
    tie rule for faces sharing their least facet."""
    poset = flag.ambient
    rank = {_s(F): i for i, F in enumerate(ranked)}
    pos = positions(flag, {k: tuple(tuple(x) for x in o) for k, o in orderings.items()})
    d = flag.d
    violations = []

    def least(F):
        return min(poset.facets(F), key=lambda G: rank[G.signs])

    def before(a, b):
        return rank[a.signs] < rank[b.signs]

    for c in range(d, -1, -1):
        faces = poset.of_dim(d - c)
        inP = [F for F in faces if F.signs in pos[c]]
        outP = [F for F in faces if F.signs not in pos[c]]
        for F in inP:
            for G in inP:
                if pos[c][F.signs] < pos[c][G.signs] and not before(F, G):
                    violations.append((1, F, G))
            for G in outP:
                if not before(F, G):
                    violations.append((2, F, G))
            for G in poset.facets(F):
                if not before(F, G):
                    violations.append((4, F, G))
        lf = {F.signs: least(F) for F in outP}
        for F in outP:
            Fp = lf[F.signs]
            if not before(Fp, F):
                violations.append((5, Fp, F))
            for G in poset.facets(F):
                if before(Fp, G) and not before(F, G):
                    violations.append((5, F, G))
            for G in outP:
                if G is F:
                    continue
                Gp = lf[G.signs]
                if Fp.signs != Gp.signs:
                    if before(Fp, Gp) and not before(F, G):
                        violations.append((3.1, F, G))
                elif ties:
                    F0 = flag.levels[c].point_by_flat[F.zero]
                    G0 = flag.levels[c].point_by_flat[G.zero]
                    if pos[c][F0.signs] < pos[c][G0.signs] and not before(F, G):
                        violations.append((3.2, F, G))
    return {"ok": not violations,
            "violations": [{"rule": r, "first": sign_string(a.signs), "second": sign_string(b.signs)}
                           for r, a, b in violations[:20]],
            "count": len(violations)}


def common_lower_faces(order: PolarOrder, F1, F2) -> list[Face]:
    """Faces whose closure contains both ``F1`` and ``F2``."""
    a, b = _s(F1), _s(F2)
    return [G for G in order.poset if conforms(G.signs, a) and conforms(G.signs, b)]
