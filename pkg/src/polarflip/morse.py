"""Salvetti complex, the polar matching and its critical cells."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx

from .arrangement import Arrangement
from .faces import FacePoset, conforms, enumerate_faces
from .lattice import intersection_lattice
from .polar import PolarOrder
from .sweep import sign_string


def compose(G: tuple, C: tuple) -> tuple:
    """``G o C``: signs of ``G`` where nonzero, of ``C`` on hyperplanes through ``G``."""
    return tuple(g if g != 0 else c for g, c in zip(G, C))


@dataclass(frozen=True, order=True)
class SalvettiCell:
    chamber: tuple
    face: tuple

    def label(self) -> str:
        return f"[{sign_string(self.chamber)}<{sign_string(self.face)}]"


class SalvettiComplex:
    """Cells ``[C < F]`` for chambers ``C`` with ``F`` in their closure; the
    cell has dimension ``codim F``. Its codimension-one boundary consists of
    the cells ``[G o C < G]`` for the faces ``G`` having ``F`` as a facet."""

    def __init__(self, poset: FacePoset):
        self.poset = poset
        d = poset.d
        cells = {k: [] for k in range(d + 1)}
        for F in poset:
            for C in poset.chambers:
                if conforms(C.signs, F.signs):
                    cells[poset.codim(F)].append(SalvettiCell(C.signs, F.signs))
        self.cells = {k: sorted(v) for k, v in cells.items()}

    @property
    def dim(self) -> int:
        return self.poset.d

    def counts(self) -> tuple:
        return tuple(len(self.cells[k]) for k in range(self.dim + 1))

    def euler(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.counts()))

    def boundary(self, cell: SalvettiCell) -> list[SalvettiCell]:
        F = self.poset[cell.face]
        return [SalvettiCell(compose(G.signs, cell.chamber), G.signs) for G in self.poset.cofacets(F)]

    def in_boundary(self, low: SalvettiCell, high: SalvettiCell) -> bool:
        """Face relation between cells of any dimensions."""
        return (conforms(low.face, high.face)
                and all(low.chamber[i] == high.chamber[i] for i, s in enumerate(low.face) if s == 0))

    @cached_property
    def hasse(self) -> list[tuple]:
        return [(c, b) for k in range(1, self.dim + 1) for c in self.cells[k] for b in self.boundary(c)]


def build_salvetti(arr_or_poset) -> SalvettiComplex:
    if isinstance(arr_or_poset, Arrangement):
        arr_or_poset = enumerate_faces(arr_or_poset)
    return SalvettiComplex(arr_or_poset)


@dataclass
class Matching:
    pairs: list  # (lower cell, upper cell)
    complex: SalvettiComplex = field(repr=False)

    @cached_property
    def matched(self) -> set:
        return {c for p in self.pairs for c in p}

    def critical(self) -> dict:
        return {k: [c for c in cells if c not in self.matched] for k, cells in self.complex.cells.items()}

    def critical_counts(self) -> tuple:
        crit = self.critical()
        return tuple(len(crit[k]) for k in range(self.complex.dim + 1))

    def as_set(self) -> frozenset:
        return frozenset(self.pairs)

    def to_dot(self) -> str:
        up = {b: a for a, b in self.pairs}
        lines = ["digraph matching {", "  rankdir=BT;"]
        for k, cells in self.complex.cells.items():
            for c in cells:
                shape = "box" if c not in self.matched else "ellipse"
                lines.append(f'  "{c.label()}" [shape={shape}, label="{c.label()}\\n{k}"];')
        for hi, lo in self.complex.hasse:
            if up.get(hi) == lo:
                lines.append(f'  "{lo.label()}" -> "{hi.label()}" [color=red];')
            else:
                lines.append(f'  "{hi.label()}" -> "{lo.label()}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def polar_matching(cx: SalvettiComplex, order: PolarOrder) -> Matching:
    """Pair ``[C < F]`` with ``[C < F']`` whenever ``F`` misses
    ``V_{codim F}`` and no face ``G`` between ``C`` and ``F`` (other than
    ``F``) has ``F`` as its least facet."""
    poset = cx.poset
    least = {F.signs: order.min_facet(F) for F in poset}
    least = {s: (f.signs if f is not None else None) for s, f in least.items()}
    pairs = []
    for k in range(cx.dim + 1):
        for cell in cx.cells[k]:
            F = cell.face
            if order.is_point(F):
                continue
            blocked = any(least[G.signs] == F for G in poset.below(poset[F])
                          if G.signs != F and conforms(cell.chamber, G.signs))
            if not blocked:
                pairs.append((cell, SalvettiCell(cell.chamber, least[F])))
    return Matching(pairs, cx)


def review_matching(cx: SalvettiComplex, order: PolarOrder) -> Matching:
    """The two-condition description: ``([C < F1], [C < F2])`` with ``F2`` a
    facet of ``F1``, ``F2`` before ``F1``, and every face ``G`` of one lower
    codimension with ``C < G < F1`` also before ``F1``."""
    poset = cx.poset
    pairs = []
    for k in range(cx.dim):
        for cell in cx.cells[k]:
            F1 = poset[cell.face]
            lower = [G for G in poset.cofacets(F1) if conforms(cell.chamber, G.signs)
                     and G.signs != cell.chamber]
            if not all(order.lt(G, F1) for G in lower):
                continue
            for F2 in poset.facets(F1):
                if order.lt(F2, F1):
                    pairs.append((cell, SalvettiCell(cell.chamber, F2.signs)))
    return Matching(pairs, cx)


def compare_matchings(a: Matching, b: Matching) -> dict:
    sa, sb = a.as_set(), b.as_set()
    return {"equal": sa == sb, "only_first": len(sa - sb), "only_second": len(sb - sa)}


def verify_matching(m: Matching) -> dict:
    """Each cell in at most one pair, every pair a codim-one incidence, and
    no directed cycle once matched edges are reversed."""
    seen: dict = {}
    shared = None
    for p in m.pairs:
        for c in p:
            if c in seen and shared is None:
                shared = (seen[c], p)
            seen[c] = p
    cx = m.complex
    bad_pair = next((p for p in m.pairs if p[0] not in cx.boundary(p[1])), None)
    g = nx.DiGraph()
    pairs = set(m.pairs)
    for hi, lo in cx.hasse:
        if (lo, hi) in pairs:
            g.add_edge(lo, hi)
        else:
            g.add_edge(hi, lo)
    cycle = None
    try:
        cycle = nx.find_cycle(g)
    except nx.NetworkXNoCycle:
        pass
    return {"matching": shared is None, "incidence": bad_pair is None, "acyclic": cycle is None,
            "ok": shared is None and bad_pair is None and cycle is None,
            "witness": None if shared is None else [[c.label() for c in p] for p in shared],
            "cycle": None if cycle is None else [e[0].label() for e in cycle]}


def critical_cells_T6(cx: SalvettiComplex, order: PolarOrder) -> set:
    """``[C < F]`` with ``F`` meeting ``V_{codim F}`` and every face strictly
    between ``C`` and ``F`` (``C`` included) coming before ``F``."""
    poset = cx.poset
    out = set()
    for k in range(cx.dim + 1):
        for cell in cx.cells[k]:
            F = cell.face
            if not order.is_point(F):
                continue
            if all(order.lt(G, F) for G in poset.below(poset[F])
                   if G.signs != F and conforms(cell.chamber, G.signs)):
                out.add(cell)
    return out


def minimality_report(arr: Arrangement, order: PolarOrder, cx: SalvettiComplex | None = None) -> dict:
    cx = cx or SalvettiComplex(order.poset)
    m = polar_matching(cx, order)
    betti = intersection_lattice(arr).betti
    crit = m.critical_counts()
    rows = []
    for k in range(cx.dim + 1):
        b = betti[k] if k < len(betti) else 0
        rows.append({"dim": k, "critical": crit[k], "betti": b, "pass": crit[k] == b})
    check = verify_matching(m)
    t6 = critical_cells_T6(cx, order)
    unmatched = {c for cells in m.critical().values() for c in cells}
    return {"rows": rows, "cells": list(cx.counts()), "euler": cx.euler(),
            "matching_ok": check["ok"], "t6_equal": t6 == unmatched,
            "pass": all(r["pass"] for r in rows) and check["ok"] and t6 == unmatched}


def report_json(report: dict) -> str:
    return json.dumps(report, indent=1, sort_keys=True)
