"""Exact ordered-field scalars.

Two instantiations are supported: plain rationals (``fractions.Fraction``)
and elements ``a + b*sqrt(n)`` of a real quadratic field, ``QuadraticNumber``.
Rationals mix freely with quadratic numbers; a quadratic number whose
irrational part vanishes still compares and hashes like the rational.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering
from math import isqrt

from gmpy2 import mpq


_ZERO = mpq(0)
_MPQ = type(_ZERO)


class ScalarError(ValueError):
    pass


def _squarefree(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


@total_ordering
class QuadraticNumber:
    """``a + b*sqrt(n)`` with rational ``a``, ``b`` and square-free ``n > 1``.
    The coefficients are stored as GMP rationals for speed."""

    __slots__ = ("a", "b", "n")

    def __init__(self, a, b=0, n: int = 5):
        if not _squarefree(n):
            raise ScalarError(f"radicand {n} is not a square-free integer > 1")
        self.a = mpq(a)
        self.b = mpq(b)
        self.n = n

    @classmethod
    def _make(cls, a, b, n: int) -> "QuadraticNumber":
        q = object.__new__(cls)
        q.a, q.b, q.n = a, b, n
        return q

    def _coerce(self, other):
        if isinstance(other, QuadraticNumber):
            if other.n != self.n and other.b != 0 and self.b != 0:
                raise ScalarError(f"cannot mix sqrt({self.n}) and sqrt({other.n})")
            return other
        if isinstance(other, (int, Fraction, _MPQ)):
            return QuadraticNumber._make(mpq(other), _ZERO, self.n)
        return NotImplemented

    def _n_with(self, other):
        return self.n if self.b != 0 or other.b == 0 else other.n

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber._make(self.a + o.a, self.b + o.b, self._n_with(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber._make(-self.a, -self.b, self.n)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber._make(self.a - o.a, self.b - o.b, self._n_with(o))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = self._n_with(o)
        if self.b == 0 or o.b == 0:
            return QuadraticNumber._make(self.a * o.a, self.a * o.b + self.b * o.a, n)
        return QuadraticNumber._make(self.a * o.a + self.b * o.b * n,
                                     self.a * o.b + self.b * o.a, n)

    __rmul__ = __mul__

    def conjugate(self):
        return QuadraticNumber._make(self.a, -self.b, self.n)

    def norm(self):
        return self.a * self.a - self.b * self.b * self.n

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        nrm = o.norm()
        if nrm == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        num = self * o.conjugate()
        return QuadraticNumber._make(num.a / nrm, num.b / nrm, num.n)

    def __rtruediv__(self, other):
        return QuadraticNumber(other, 0, self.n) / self

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with n b^2
        d = self.a * self.a - self.b * self.b * self.n
        return sa if d > 0 else sb

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.a == o.a and self.b == o.b

    def __lt__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return (self - o).sign() < 0

    def __gt__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return (self - o).sign() > 0

    def __le__(self, other):
        r = self.__gt__(other)
        return r if r is NotImplemented else not r

    def __ge__(self, other):
        r = self.__lt__(other)
        return r if r is NotImplemented else not r

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.n))

    def __float__(self):
        return float(self.a) + float(self.b) * self.n ** 0.5

    def __repr__(self):
        return f"QuadraticNumber({format_scalar(self)!r})"


def sign(x) -> int:
    if isinstance(x, QuadraticNumber):
        return x.sign()
    return (x > 0) - (x < 0)


def is_zero(x) -> bool:
    return sign(x) == 0


def _fmt_frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(x) -> str:
    """Canonical string: ``p/q`` or ``a+b*sqrt(n)`` (rational part omitted when 0)."""
    if isinstance(x, QuadraticNumber):
        if x.b == 0:
            return _fmt_frac(x.a)
        if x.b == 1:
            irr = f"sqrt({x.n})"
        elif x.b == -1:
            irr = f"-sqrt({x.n})"
        else:
            irr = f"{_fmt_frac(x.b)}*sqrt({x.n})"
        if x.a == 0:
            return irr
        return f"{_fmt_frac(x.a)}{'' if irr.startswith('-') else '+'}{irr}"
    return _fmt_frac(Fraction(x))


_RAT = r"[+-]?\d+(?:/\d+)?"
_QUAD = re.compile(
    rf"^\s*(?:(?P<a>{_RAT})(?=[+-]|$))?\s*"
    rf"(?:(?P<bs>[+-])?\s*(?:(?P<b>\d+(?:/\d+)?)\s*\*\s*)?sqrt\(\s*(?P<n>\d+)\s*\))?\s*$"
)


def parse_scalar(text: str, radicand: int | None = None):
    """Parse ``"p/q"`` or ``"a+b*sqrt(n)"``.

    With ``radicand`` set every result is a :class:`QuadraticNumber` over that
    field; otherwise rationals come back as ``Fraction``.
    """
    if not isinstance(text, str):
        raise ScalarError(f"scalars must be strings, got {type(text).__name__}")
    s = text.strip()
    if re.fullmatch(_RAT, s):
        q = Fraction(s)
        return QuadraticNumber(q, 0, radicand) if radicand else q
    m = _QUAD.match(s)
    if not m or m.group("n") is None:
        raise ScalarError(f"cannot parse scalar {text!r}")
    n = int(m.group("n"))
    if radicand is not None and n != radicand:
        raise ScalarError(f"scalar {text!r} uses sqrt({n}) but field is sqrt({radicand})")
    a = Fraction(m.group("a")) if m.group("a") else Fraction(0)
    b = Fraction(m.group("b")) if m.group("b") else Fraction(1)
    if m.group("bs") == "-":
        b = -b
    elif m.group("bs") is None and m.group("a"):
        raise ScalarError(f"cannot parse scalar {text!r}")
    r = isqrt(n)
    if r * r == n:
        raise ScalarError(f"sqrt({n}) is rational")
    return QuadraticNumber(a, b, n)
