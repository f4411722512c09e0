"""Static SVG figures of line arrangements.

Geometry is exact up to the last step: coordinates are converted to floats
only when written out, at a fixed number of decimals, so the same input
always gives the same bytes.
"""

from __future__ import annotations

from .arrangement import Arrangement
from .faces import enumerate_faces

SIZE = 480
MARGIN = 24
PALETTE = ("#fde0c5", "#c9e4f5", "#d7f0d0", "#eadcf5", "#f8f3c2", "#f5cfd6")


class NotPlanar(ValueError):
    """Rendering needs an arrangement of lines in the plane."""


def _f(x) -> float:
    return float(x)


class _Frame:
    def __init__(self, pts, precision: int):
        xs = [p[0] for p in pts] or [0.0]
        ys = [p[1] for p in pts] or [0.0]
        span = max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
        pad = span * 0.35
        self.x0, self.y0 = min(xs) - pad, min(ys) - pad
        self.x1, self.y1 = max(xs) + pad, max(ys) + pad
        self.scale = (SIZE - 2 * MARGIN) / max(self.x1 - self.x0, self.y1 - self.y0)
        self.precision = precision

    def box(self):
        return [(self.x0, self.y0), (self.x1, self.y0), (self.x1, self.y1), (self.x0, self.y1)]

    def pair(self, p) -> tuple[str, str]:
        x = MARGIN + (p[0] - self.x0) * self.scale
        y = SIZE - MARGIN - (p[1] - self.y0) * self.scale
        return f"{x:.{self.precision}f}", f"{y:.{self.precision}f}"

    def xy(self, p) -> str:
        return ",".join(self.pair(p))

    def segment(self, seg) -> str:
        (x1, y1), (x2, y2) = self.pair(seg[0]), self.pair(seg[1])
        return f'x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"'

    def clip_line(self, point, direction):
        """End points of ``point + t direction`` inside the frame."""
        ts = []
        for axis, lo, hi in ((0, self.x0, self.x1), (1, self.y0, self.y1)):
            if direction[axis] == 0:
                if not lo <= point[axis] <= hi:
                    return None
                continue
            ts.append(sorted(((lo - point[axis]) / direction[axis], (hi - point[axis]) / direction[axis])))
        lo_t = max(t[0] for t in ts)
        hi_t = min(t[1] for t in ts)
        if lo_t > hi_t:
            return None
        return [(point[0] + t * direction[0], point[1] + t * direction[1]) for t in (lo_t, hi_t)]


def _halfplane_clip(poly, a, b, c, keep: int):
    """Keep the part of ``poly`` where ``keep * (a x + b y - c) >= 0``."""
    out = []
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        fp = keep * (a * p[0] + b * p[1] - c)
        fq = keep * (a * q[0] + b * q[1] - c)
        if fp >= 0:
            out.append(p)
        if (fp >= 0) != (fq >= 0):
            t = fp / (fp - fq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def _line_of(h):
    a, b = _f(h.normal[0]), _f(h.normal[1])
    c = _f(h.offset)
    point = (a * c / (a * a + b * b), b * c / (a * a + b * b))
    return (a, b, c), point, (-b, a)


def render_svg_2d(arr: Arrangement, flag=None, state=None, sectors=None, precision: int = 2) -> str:
    """Lines, vertices and, when given, the flag ``V_1``/``V_0``, the vertices
    already swept by ``state`` and the sectors ``Lambda_j``."""
    if arr.dim != 2:
        raise NotPlanar(f"expected a planar arrangement, got dimension {arr.dim}")
    poset = enumerate_faces(arr)
    verts = sorted(poset.vertices, key=lambda v: v.signs)
    pts = [(_f(v.point[0]), _f(v.point[1])) for v in verts]
    if flag is not None:
        pts.append(tuple(_f(x) for x in flag.subspaces[0].point))
    frame = _Frame(pts, precision)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
           f'viewBox="0 0 {SIZE} {SIZE}">',
           f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>']

    if sectors is not None:
        hs = arr.hyperplanes
        b = tuple(_f(x) for x in sectors.candidate.b)

        def side(i):
            a_, b_, c_ = _line_of(hs[i])[0]
            return 1 if a_ * b[0] + b_ * b[1] - c_ > 0 else -1

        h0 = sectors.candidate.h0
        for j, M in enumerate(sectors.lines):
            poly = frame.box()
            if j == 0:
                poly = _halfplane_clip(poly, *_line_of(hs[h0])[0], side(h0))
            else:
                lo = sectors.lines[j - 1][-1]
                poly = _halfplane_clip(poly, *_line_of(hs[lo])[0], side(lo))
            hi = M[-1]
            poly = _halfplane_clip(poly, *_line_of(hs[hi])[0], -side(hi))
            if len(poly) >= 3:
                colour = PALETTE[j % len(PALETTE)]
                out.append(f'<polygon class="sector" data-j="{j + 1}" points="'
                           + " ".join(frame.xy(p) for p in poly) + f'" fill="{colour}"/>')

    for i, h in enumerate(arr.hyperplanes):
        _, point, direction = _line_of(h)
        seg = frame.clip_line(point, direction)
        if seg:
            out.append(f'<line class="hyperplane" data-i="{i}" {frame.segment(seg)} '
                       'stroke="black" stroke-width="1.5"/>')

    if flag is not None:
        V1 = flag.subspaces[1]
        p = tuple(_f(x) for x in V1.point)
        seg = frame.clip_line(p, tuple(_f(x) for x in V1.basis[0]))
        if seg:
            out.append(f'<line class="flag-line" {frame.segment(seg)} '
                       'stroke="#1f6fb2" stroke-width="1.5" stroke-dasharray="6,4"/>')
        x, y = frame.pair(tuple(_f(c) for c in flag.subspaces[0].point))
        out.append(f'<circle class="flag-point" cx="{x}" cy="{y}" r="5" fill="#1f6fb2"/>')

    swept = state.swept_set if state is not None else frozenset()
    for v, p in zip(verts, pts):
        x, y = frame.pair(p)
        hit = v.signs in swept
        cls = "vertex swept" if hit else "vertex"
        fill = "#d62728" if hit else "black"
        r = 5 if hit else 3
        out.append(f'<circle class="{cls}" cx="{x}" cy="{y}" r="{r}" fill="{fill}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
