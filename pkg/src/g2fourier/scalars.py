"""Exact scalars: rationals and the Gaussian field K = Q(t), t^2 = -1.

Rationals are :class:`fractions.Fraction`.  ``t`` is kept distinct from the
quaternion unit ``i``: a :class:`GaussRational` is never a quaternion
coordinate by itself, only a coefficient.
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from numbers import Rational as _RationalABC

Rational = Fraction

__all__ = ["Rational", "GaussRational", "K", "to_k", "parse_scalar", "format_scalar", "T"]


class GaussRational:
    """Element ``re + im*t`` of K with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def _raw(cls, re, im):
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    def __repr__(self):
        return f"GaussRational({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __eq__(self, other):
        if isinstance(other, GaussRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __neg__(self):
        return GaussRational._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, GaussRational):
            return GaussRational._raw(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return GaussRational._raw(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GaussRational):
            return GaussRational._raw(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return GaussRational._raw(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussRational._raw(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b:
                return GaussRational._raw(a * c, a * d)
            if not d:
                return GaussRational._raw(a * c, b * c)
            return GaussRational._raw(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return GaussRational._raw(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm re^2 + im^2."""
        return self.re * self.re + self.im * self.im

    def conjugate(self) -> "GaussRational":
        """Galois conjugate t -> -t."""
        return GaussRational._raw(self.re, -self.im)

    def inverse(self) -> "GaussRational":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("inverse of zero in K")
        return GaussRational._raw(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, GaussRational):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero in K")
            return GaussRational._raw(self.re / other, self.im / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_rational(self) -> bool:
        return not self.im

    def is_integral(self) -> bool:
        """True for Gaussian integers."""
        return self.re.denominator == 1 and self.im.denominator == 1

    def denominator(self) -> int:
        a, b = self.re.denominator, self.im.denominator
        return a * b // gcd(a, b)


ZERO = GaussRational._raw(Fraction(0), Fraction(0))
ONE = GaussRational._raw(Fraction(1), Fraction(0))
T = GaussRational._raw(Fraction(0), Fraction(1))
K = GaussRational


def to_k(x) -> GaussRational:
    """Coerce an int, Fraction, GaussRational or scalar string into K."""
    if isinstance(x, GaussRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussRational(x)
    if isinstance(x, _RationalABC):
        return GaussRational(Fraction(x))
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"cannot interpret {x!r} as an element of K")


def _fmt_rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(x) -> str:
    """Serialize exactly: ``p/q`` for rationals, ``p/q+r/s*t`` otherwise."""
    x = to_k(x)
    if not x.im:
        return _fmt_rat(x.re)
    im = _fmt_rat(x.im)
    if not x.re:
        return f"{im}*t"
    sign = "" if x.im < 0 else "+"
    return f"{_fmt_rat(x.re)}{sign}{im}*t"


_RAT = r"[+-]?\d+(?:/\d+)?"
_SCALAR_RE = re.compile(rf"^(?:(?P<re>{_RAT})(?=[+-]|$))?(?:(?P<im>[+-]?(?:\d+(?:/\d+)?)?)\*?t)?$")


def parse_scalar(s: str) -> GaussRational:
    """Inverse of :func:`format_scalar`; also accepts ``t``, ``-t``, ``3t``."""
    text = s.strip().replace(" ", "")
    m = _SCALAR_RE.match(text)
    if not text or m is None or (m.group("re") is None and m.group("im") is None):
        raise ValueError(f"not a scalar in K: {s!r}")
    re_part = Fraction(m.group("re")) if m.group("re") else Fraction(0)
    im_txt = m.group("im")
    if im_txt is None:
        im_part = Fraction(0)
    elif im_txt in ("", "+"):
        im_part = Fraction(1)
    elif im_txt == "-":
        im_part = Fraction(-1)
    else:
        im_part = Fraction(im_txt)
    return GaussRational(re_part, im_part)
