"""Sweeping ``V_{k-1}`` across ``A^k`` by flips.

The moving pseudohyperplane is represented by the ordered list of vertices it
has already been flipped across. Everything else (which faces it crosses, its
own section arrangement, nearness) is derived from that prefix: a face is
crossed when the ends of its closure (vertices and unbounded edge directions)
do not all lie on the same side.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .faces import Face, conforms
from .flag import Flag, Level


class SweepError(ValueError):
    pass


class NotNear(SweepError):
    def __init__(self, p, line=None, blocker=None):
        super().__init__(f"{_fmt(p)} is not near the moving hyperplane"
                         + (f" (blocked by {_fmt(blocker)} on line {sorted(line)})" if line else ""))
        self.vertex, self.line, self.blocker = p, line, blocker


class LimitExceeded(SweepError):
    pass


class DegenerateSweep(SweepError):
    pass


def _fmt(s) -> str:
    if isinstance(s, Face):
        s = s.signs
    return "".join("+" if x > 0 else "-" if x < 0 else "0" for x in s)


def sign_string(s) -> str:
    return _fmt(s)


def parse_sign_string(text: str) -> tuple:
    table = {"+": 1, "-": -1, "0": 0}
    return tuple(table[c] for c in text)


class SweepPoset:
    """Per-line chains of ``P^k`` ordered away from ``V_{k-1}`` and derived
    per-face data used by every sweep computation at this level."""

    def __init__(self, level: Level):
        if level.k == 0:
            raise SweepError("level 0 has nothing to sweep")
        self.level = level
        self.poset = level.poset
        self.chains = {z: tuple(v.signs for v in vs) for z, vs in level.lines.items()}
        self.vertices = tuple(v.signs for v in level.points)
        pred = {v: set() for v in self.vertices}
        self.lines_through = {v: [] for v in self.vertices}
        for z, ch in self.chains.items():
            for i, v in enumerate(ch):
                self.lines_through[v].append(z)
                pred[v].update(ch[:i])
        self.predecessors = {v: frozenset(p) for v, p in pred.items()}
        self.ends = {}
        for f in self.poset:
            verts = frozenset(v.signs for v in self.poset.closure_vertices(f))
            slopes = frozenset(level.slope(r) for r in self.poset.rays(f))
            self.ends[f.signs] = (verts, slopes)

    def is_linear_extension(self, order: Sequence[tuple]) -> bool:
        pos = {v: i for i, v in enumerate(order)}
        return all(pos[u] < pos[v] for v in self.vertices for u in self.predecessors[v])

    def linear_extensions(self, limit: int | None = None) -> list[tuple]:
        out: list[tuple] = []
        verts = self.vertices
        remaining = {v: len(self.immediate(v)) for v in verts}
        succ = {v: [] for v in verts}
        for v in verts:
            for u in self.immediate(v):
                succ[u].append(v)
        prefix: list[tuple] = []

        def rec():
            if len(prefix) == len(verts):
                out.append(tuple(prefix))
                if limit is not None and len(out) > limit:
                    raise LimitExceeded(f"more than {limit} orderings")
                return
            for v in verts:
                if remaining[v] == 0 and v not in placed:
                    placed.add(v)
                    prefix.append(v)
                    for w in succ[v]:
                        remaining[w] -= 1
                    rec()
                    for w in succ[v]:
                        remaining[w] += 1
                    prefix.pop()
                    placed.discard(v)

        placed: set = set()
        rec()
        return out

    @cached_property
    def _immediate(self) -> dict:
        imm = {v: set() for v in self.vertices}
        for ch in self.chains.values():
            for a, b in zip(ch, ch[1:]):
                imm[b].add(a)
        return imm

    def immediate(self, v) -> set:
        return self._immediate[v]


@dataclass(frozen=True)
class SweepState:
    flag: Flag
    k: int
    swept: tuple = ()

    @cached_property
    def sweep_poset(self) -> SweepPoset:
        return sweep_poset(self.flag, self.k)

    @cached_property
    def swept_set(self) -> frozenset:
        return frozenset(self.swept)

    @property
    def j(self) -> int:
        return len(self.swept)

    @cached_property
    def crossed(self) -> frozenset:
        """Faces of ``A^k`` cut by the moving hyperplane (the section ``F^k_j``)."""
        return frozenset(f.signs for f in self.sweep_poset.poset if extension_sign(self, f) == 0)

    @cached_property
    def section_points(self) -> frozenset:
        """``P^k_j``: crossed edges."""
        P = self.sweep_poset.poset
        return frozenset(s for s in self.crossed if P[s].dim == 1)

    def pending(self) -> list:
        return [v for v in self.sweep_poset.vertices if v not in self.swept_set]

    def near(self) -> list:
        return [v for v in self.pending() if is_near(self, v)]

    def X(self, p) -> frozenset:
        """Crossed faces in the star of ``p``."""
        return frozenset(s for s in self.crossed if conforms(s, _signs(p)))

    def Y(self, p) -> frozenset:
        """All faces of ``A^k`` in the star of ``p``."""
        return frozenset(f.signs for f in self.sweep_poset.poset if conforms(f.signs, _signs(p)))

    def C(self, p) -> frozenset:
        p = _signs(p)
        X = self.X(p)
        return frozenset(x for x in X if _op(x, p) not in X)


_SWEEP_CACHE: dict = {}


def sweep_poset(flag: Flag, k: int) -> SweepPoset:
    key = (id(flag), k)
    hit = _SWEEP_CACHE.get(key)
    if hit is None or hit[0] is not flag:
        hit = (flag, SweepPoset(flag.levels[k]))
        _SWEEP_CACHE[key] = hit
    return hit[1]


def _signs(f) -> tuple:
    return f.signs if isinstance(f, Face) else tuple(f)


def _op(x: tuple, p: tuple) -> tuple:
    return tuple(-a if b == 0 else a for a, b in zip(x, p))


def initial_state(flag: Flag, k: int) -> SweepState:
    return SweepState(flag, k, ())


def extension_sign(state: SweepState, face) -> int:
    """Side of the moving hyperplane on ``face``: -1 behind, +1 ahead, 0 crossed."""
    verts, slopes = state.sweep_poset.ends[_signs(face)]
    seen = set(slopes)
    for v in verts:
        seen.add(-1 if v in state.swept_set else 1)
    if len(seen) == 1:
        return seen.pop()
    return 0


def blocking(state: SweepState, p) -> tuple | None:
    """``(line, vertex)`` witnessing that ``p`` is not near, else ``None``."""
    sp = state.sweep_poset
    p = _signs(p)
    for z in sp.lines_through[p]:
        ch = sp.chains[z]
        for u in ch[:ch.index(p)]:
            if u not in state.swept_set:
                return z, u
    return None


def is_near(state: SweepState, p) -> bool:
    """Chain test: every vertex before ``p`` on every line through ``p`` is swept."""
    p = _signs(p)
    if p in state.swept_set:
        return False
    return blocking(state, p) is None


def is_near_oracle(state: SweepState, p) -> bool:
    """Direct test: on each line through ``p`` the crossed edges lie in the
    region of the hyperplanes avoiding ``p`` that contains ``p``."""
    p = _signs(p)
    if p in state.swept_set:
        return False
    sp = state.sweep_poset
    P = sp.poset
    avoid = [i for i, s in enumerate(p) if s != 0]
    for z in sp.lines_through[p]:
        edges = [e.signs for e in P.of_dim(1) if z <= e.zero]
        crossed = [e for e in edges if extension_sign(state, e) == 0]
        if not crossed:
            return False
        for e in crossed:
            if any(e[i] != p[i] for i in avoid):
                return False
    return True


def flip(state: SweepState, p) -> SweepState:
    p = _signs(p)
    if p in state.swept_set:
        raise NotNear(p)
    w = blocking(state, p)
    if w is not None:
        raise NotNear(p, *w)
    return SweepState(state.flag, state.k, state.swept + (p,))


def surgery(state: SweepState, p) -> frozenset:
    """Crossed faces after flipping ``p``, computed by the local surgery:
    drop ``C(p)`` and add the opposite faces through ``p``."""
    p = _signs(p)
    C = state.C(p)
    return (state.crossed - C) | frozenset(_op(x, p) for x in C)


def validate_special_ordering(flag: Flag, k: int, order: Sequence) -> tuple[bool, dict | None]:
    """Replay flips in order. Returns ``(True, None)`` or ``(False, certificate)``
    with the 1-based failing index."""
    order = [_signs(v) for v in order]
    if k == 0:
        ok = len(order) == 1 and order[0] == flag.points(0)[0].signs
        return ok, None if ok else {"index": 1, "reason": "level 0 holds the base chamber only"}
    sp = sweep_poset(flag, k)
    if sorted(order) != sorted(sp.vertices):
        return False, {"index": None, "reason": "not a permutation of the section vertices"}
    state = initial_state(flag, k)
    for i, v in enumerate(order, start=1):
        w = blocking(state, v)
        if w is not None:
            return False, {"index": i, "vertex": sign_string(v),
                           "line": sorted(w[0]), "blocker": sign_string(w[1])}
        state = SweepState(flag, k, state.swept + (v,))
    return True, None


def enumerate_special_orderings(flag: Flag, k: int, limit: int = 10000) -> list[tuple]:
    if k == 0:
        return [tuple(p.signs for p in flag.points(0))]
    exts = sweep_poset(flag, k).linear_extensions(limit)
    for o in exts:
        ok, cert = validate_special_ordering(flag, k, o)
        if not ok:
            raise SweepError(f"linear extension rejected by the flip simulator: {cert}")
    return exts


def default_orderings(flag: Flag) -> dict:
    """Per-level orderings by increasing height (the realizable parallel sweep)."""
    return {k: tuple(p.signs for p in flag.points(k)) for k in range(flag.d + 1)}


def sweep_states(flag: Flag, k: int, order: Sequence) -> list[SweepState]:
    st = initial_state(flag, k)
    out = [st]
    for v in order:
        st = flip(st, v)
        out.append(st)
    return out


def swap_is_special(flag: Flag, k: int, order: Sequence, i: int) -> bool:
    o = list(order)
    o[i], o[i + 1] = o[i + 1], o[i]
    return validate_special_ordering(flag, k, o)[0]


def common_faces_precede(flag: Flag, k: int, order: Sequence, i: int) -> bool:
    """For consecutive ``p = order[i]``, ``q = order[i+1]``: every face whose
    closure holds both is already crossed before ``p``, i.e. it reaches back
    past ``V_{k-1}`` or its first vertex comes strictly before ``p``."""
    sp = sweep_poset(flag, k)
    p, q = _signs(order[i]), _signs(order[i + 1])
    pos = {_signs(v): n for n, v in enumerate(order)}
    for f in sp.poset:
        if not (conforms(f.signs, p) and conforms(f.signs, q)):
            continue
        verts, slopes = sp.ends[f.signs]
        if -1 in slopes:
            continue
        if min(pos[v] for v in verts) >= i:
            return False
    return True


# -- the section carried by the moving hyperplane ---------------------------

def _two_flats(flag: Flag, k: int) -> list:
    arr = flag.levels[k].arrangement
    return [X for X in arr.flats if X.dim == 2]


def section_lines(state: SweepState) -> dict:
    """Lines of the section arrangement, one per 2-flat ``E`` of ``A^k``:
    the crossed edges inside ``E`` in the order the section meets them,
    starting from the end that lies on the copy of ``V_{k-2}``."""
    flag, k = state.flag, state.k
    if k < 2:
        return {}
    sp = state.sweep_poset
    P = sp.poset
    crossed = state.crossed
    start_level = flag.levels[k - 2]
    out = {}
    for E in _two_flats(flag, k):
        start = start_level.point_by_flat.get(E.zero)
        if start is None:
            raise DegenerateSweep(f"2-flat {sorted(E.zero)} misses V_{k - 2}")
        start = start.signs
        if start not in crossed:
            raise DegenerateSweep(f"start face of 2-flat {sorted(E.zero)} is not crossed")
        faces2 = {s for s in crossed if P[s].dim == 2 and P[s].zero == E.zero}
        edges = {s for s in crossed if P[s].dim == 1 and E.zero <= P[s].zero}
        path, seen = [], {start}
        cur = start
        while True:
            if P[cur].dim == 2:
                nxt = [e for e in edges if e not in seen and conforms(cur, e)]
            else:
                path.append(cur)
                nxt = [g for g in faces2 if g not in seen and conforms(g, cur)]
            if not nxt:
                break
            if len(nxt) > 1:
                raise DegenerateSweep(f"section of 2-flat {sorted(E.zero)} branches at {_fmt(cur)}")
            cur = nxt[0]
            seen.add(cur)
        if len(path) != len(edges):
            raise DegenerateSweep(f"section of 2-flat {sorted(E.zero)} is not a single path")
        out[E.zero] = (start, tuple(path), seen)
    return out


def section_chains(state: SweepState) -> dict:
    return {z: path for z, (_, path, _) in section_lines(state).items()}


def validate_section_ordering(state: SweepState, order: Sequence) -> tuple[bool, dict | None]:
    """Is ``order`` (of ``P^k_j``) a linear extension of the section's line chains?"""
    order = [_signs(x) for x in order]
    if sorted(order) != sorted(state.section_points):
        return False, {"reason": "not a permutation of the section points"}
    pos = {x: i for i, x in enumerate(order)}
    for z, ch in section_chains(state).items():
        for a, b in zip(ch, ch[1:]):
            if pos[a] > pos[b]:
                return False, {"line": sorted(z), "before": sign_string(b), "after": sign_string(a)}
    return True, None


def induced_ordering(flag: Flag, k: int, state_before: SweepState, ord_prev: Sequence,
                     ord_lower: Sequence, p) -> tuple:
    """Order of ``P^k_j`` induced from ``P^k_{j-1}`` by flipping ``p``.

    Survivors keep their order; the new points ``op_p(x)`` come in reverse
    order of the lower-level points sharing their support and are inserted
    right after the latest entry point ``y+`` over the affected section lines.
    """
    p = _signs(p)
    ord_prev = [_signs(x) for x in ord_prev]
    if not is_near(state_before, p):
        raise NotNear(p, *(blocking(state_before, p) or (None, None)))
    pos_prev = {x: i for i, x in enumerate(ord_prev)}
    X = state_before.X(p)
    C = state_before.C(p)
    gone = [x for x in ord_prev if x in C]
    survivors = [x for x in ord_prev if x not in C]
    lower_pos = {_signs(x): i for i, x in enumerate(ord_lower)}
    lower_by_flat = {frozenset(i for i, s in enumerate(_signs(x)) if s == 0): _signs(x)
                     for x in ord_lower}
    P = state_before.sweep_poset.poset

    def star_key(x):
        return lower_pos[lower_by_flat[P[x].zero]]

    block = [_op(x, p) for x in sorted(gone, key=star_key, reverse=True)]
    entries = []
    for z, (start, path, seen) in section_lines(state_before).items():
        if not any(x in X for x in path):
            continue
        walk = _walk_faces(P, start, path, seen)
        inside = [i for i, f in enumerate(walk) if f in X]
        lo, hi = inside[0], inside[-1]
        if any(walk[i] not in X for i in range(lo, hi + 1)):
            raise DegenerateSweep(f"star of {_fmt(p)} meets section line {sorted(z)} twice")
        before = [f for f in walk[:lo] if P[f].dim == 1]
        if before:
            entries.append(before[-1])
    if entries:
        ybar = max(entries, key=lambda y: pos_prev[y])
        cut = survivors.index(ybar) + 1
    else:
        cut = 0
    return tuple(survivors[:cut] + block + survivors[cut:])


def _walk_faces(P, start, path, seen) -> list:
    """The full alternating walk (2-faces and edges) of a section line."""
    walk = [start]
    rest = set(seen) - {start}
    cur = start
    while rest:
        if P[cur].dim == 2:
            nxt = [e for e in rest if P[e].dim == 1 and conforms(cur, e)]
        else:
            nxt = [g for g in rest if P[g].dim == 2 and conforms(g, cur)]
        if len(nxt) != 1:
            break
        cur = nxt[0]
        rest.discard(cur)
        walk.append(cur)
    return walk


def induced_sequence(flag: Flag, k: int, order: Sequence, lower: Sequence) -> list[tuple]:
    """Induced orderings of ``P^k_0, P^k_1, ...`` along the sweep ``order``,
    starting from the lower-level ordering."""
    states = sweep_states(flag, k, order)
    cur = tuple(_signs(x) for x in lower)
    out = [cur]
    for st, p in zip(states, order):
        cur = induced_ordering(flag, k, st, cur, lower, p)
        out.append(cur)
    return out


def ordering_to_json(orderings: dict) -> dict:
    return {str(k): [sign_string(v) for v in o] for k, o in sorted(orderings.items())}


def ordering_from_json(data: dict) -> dict:
    return {int(k): tuple(parse_sign_string(s) for s in v) for k, v in data.items()}


def all_pairs(seq: Iterable) -> list:
    seq = list(seq)
    return [(a, b) for i, a in enumerate(seq) for b in seq[i + 1:]]


# -- switches ----------------------------------------------------------------

class NotConsecutive(SweepError):
    pass


def _consecutive(orderings: dict, F1, F2) -> tuple[int, int]:
    a, b = _signs(F1), _signs(F2)
    for k, o in orderings.items():
        o = [_signs(x) for x in o]
        if a in o and b in o:
            i, j = o.index(a), o.index(b)
            if abs(i - j) == 1:
                return k, min(i, j)
            break
    raise NotConsecutive(f"{_fmt(a)} and {_fmt(b)} are not consecutive in one ordering")


def c_independent(flag: Flag, orderings: dict, F1, F2, order=None) -> bool:
    """Every face whose closure holds both ``F1`` and ``F2`` precedes both
    in the polar order built from ``orderings``."""
    from .polar import build_polar_order, common_lower_faces

    _consecutive(orderings, F1, F2)
    order = order or build_polar_order(flag, orderings, validate=False)
    return all(order.lt(G, F1) and order.lt(G, F2) for G in common_lower_faces(order, F1, F2))


def apply_switch(flag: Flag, orderings: dict, F1, F2) -> dict:
    """Transpose the consecutive c-independent pair ``F1, F2``."""
    k, i = _consecutive(orderings, F1, F2)
    if not c_independent(flag, orderings, F1, F2):
        raise SweepError(f"{_fmt(F1)} and {_fmt(F2)} are not c-independent")
    o = [_signs(x) for x in orderings[k]]
    o[i], o[i + 1] = o[i + 1], o[i]
    out = {j: tuple(_signs(x) for x in v) for j, v in orderings.items()}
    out[k] = tuple(o)
    return out


def switch_graph(flag: Flag, k: int, limit: int = 10000, base: dict | None = None):
    """Graph on the special orderings of level ``k`` (other levels fixed to
    ``base``), with an edge for each switch."""
    import networkx as nx

    base = base or default_orderings(flag)
    nodes = enumerate_special_orderings(flag, k, limit)
    g = nx.Graph()
    g.add_nodes_from(nodes)
    for o in nodes:
        ords = dict(base)
        ords[k] = o
        for i in range(len(o) - 1):
            try:
                ok = c_independent(flag, ords, o[i], o[i + 1])
            except NotConsecutive:
                ok = False
            if ok:
                s = list(o)
                s[i], s[i + 1] = s[i + 1], s[i]
                g.add_edge(o, tuple(s))
    return g


def switch_graph_connected(flag: Flag, k: int, limit: int = 10000) -> bool:
    import networkx as nx

    g = switch_graph(flag, k, limit)
    return g.number_of_nodes() <= 1 or nx.is_connected(g)
