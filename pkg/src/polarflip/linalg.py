"""Exact linear algebra over any field whose elements support + - * / and sign()."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .scalar import is_zero

Vector = tuple
Matrix = list


def dot(u: Sequence, v: Sequence):
    acc = Fraction(0)
    for a, b in zip(u, v):
        acc = acc + a * b
    return acc


def vadd(u, v) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, u) -> Vector:
    return tuple(c * a for a in u)


def combine(base, basis, coeffs) -> Vector:
    """``base + sum coeffs[i] * basis[i]``."""
    out = tuple(base)
    for c, b in zip(coeffs, basis):
        out = vadd(out, vscale(c, b))
    return out


def rref(rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if not is_zero(m[i][c])), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c] if not isinstance(m[r][c], int) else Fraction(1, m[r][c])
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Basis of {x : rows @ x = 0}."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    red, piv = rref(rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r, pc in enumerate(piv):
            x[pc] = -red[r][f]
        basis.append(tuple(x))
    return basis


def solve_affine(rows: Sequence[Sequence], rhs: Sequence, ncols: int):
    """Solve ``rows @ x = rhs``.

    Returns ``(particular, nullspace_basis)`` or ``None`` if inconsistent.
    """
    if not rows:
        return tuple(Fraction(0) for _ in range(ncols)), nullspace([], ncols)
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, piv = rref(aug)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(piv):
        x[pc] = red[r][ncols]
    return tuple(x), nullspace(rows, ncols)
