"""Matrices and vectors over K stored as (re + im*t) / den.

``re`` and ``im`` are numpy object arrays of Python ints, so products are
exact and never overflow; ``den`` is a positive int.  This is the fast path
for the 27 x 27 operator algebra; entries convert to GaussRational on demand.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd

import numpy as np

from .scalars import GaussRational, to_k


def _ints(shape) -> np.ndarray:
    a = np.empty(shape, dtype=object)
    a.fill(0)
    return a


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class KArray:
    """Exact array over K: (re + t*im) / den."""

    __slots__ = ("re", "im", "den")

    def __init__(self, re: np.ndarray, im: np.ndarray, den: int = 1):
        self.re, self.im, self.den = re, im, den

    @classmethod
    def zeros(cls, shape) -> "KArray":
        return cls(_ints(shape), _ints(shape), 1)

    @classmethod
    def identity(cls, n: int) -> "KArray":
        re = _ints((n, n))
        for i in range(n):
            re[i, i] = 1
        return cls(re, _ints((n, n)), 1)

    @classmethod
    def from_scalars(cls, values) -> "KArray":
        arr = np.asarray(values, dtype=object)
        flat = [to_k(v) for v in arr.flat]
        den = reduce(_lcm, (x.denominator() for x in flat), 1)
        re = _ints(arr.shape)
        im = _ints(arr.shape)
        for idx, x in zip(np.ndindex(arr.shape), flat):
            re[idx] = int(x.re * den)
            im[idx] = int(x.im * den)
        return cls(re, im, den).reduced()

    @classmethod
    def from_ints(cls, a) -> "KArray":
        a = np.asarray(a)
        re = _ints(a.shape)
        for idx in np.ndindex(a.shape):
            re[idx] = int(a[idx])
        return cls(re, _ints(a.shape), 1)

    @property
    def shape(self):
        return self.re.shape

    def reduced(self) -> "KArray":
        g = self.den
        for v in self.re.flat:
            if g == 1:
                break
            g = gcd(g, v)
        for v in self.im.flat:
            if g == 1:
                break
            g = gcd(g, v)
        if g > 1:
            return KArray(self.re // g, self.im // g, self.den // g)
        return self

    def __getitem__(self, idx) -> GaussRational:
        return GaussRational(Fraction(self.re[idx], self.den), Fraction(self.im[idx], self.den))

    def scalars(self) -> np.ndarray:
        out = np.empty(self.shape, dtype=object)
        for idx in np.ndindex(self.shape):
            out[idx] = self[idx]
        return out

    def _align(self, other: "KArray"):
        d = _lcm(self.den, other.den)
        a, b = d // self.den, d // other.den
        return self.re * a, self.im * a, other.re * b, other.im * b, d

    def __add__(self, other: "KArray") -> "KArray":
        r1, i1, r2, i2, d = self._align(other)
        return KArray(r1 + r2, i1 + i2, d).reduced()

    def __sub__(self, other: "KArray") -> "KArray":
        r1, i1, r2, i2, d = self._align(other)
        return KArray(r1 - r2, i1 - i2, d).reduced()

    def __neg__(self) -> "KArray":
        return KArray(-self.re, -self.im, self.den)

    def scale(self, s) -> "KArray":
        s = to_k(s)
        d = s.denominator()
        a, b = int(s.re * d), int(s.im * d)
        re = self.re * a - self.im * b if b else self.re * a
        im = self.re * b + self.im * a if b else self.im * a
        return KArray(re, im, self.den * d).reduced()

    def dot(self, other: "KArray") -> "KArray":
        a, b, c, d = self.re, self.im, other.re, other.im
        re = a.dot(c)
        im = a.dot(d)
        if b.any():
            re = re - b.dot(d)
            im = im + b.dot(c)
        return KArray(re, im, self.den * other.den).reduced()

    def is_zero(self) -> bool:
        return not self.re.any() and not self.im.any()

    def __eq__(self, other):
        if not isinstance(other, KArray):
            return NotImplemented
        if self.shape != other.shape:
            return False
        return (self - other).is_zero()

    def common_scale(self) -> tuple[np.ndarray, np.ndarray, int]:
        """(re, im, den) as int64 arrays; raises if entries exceed int64."""
        lim = 1 << 62
        if any(abs(v) >= lim for v in self.re.flat) or any(abs(v) >= lim for v in self.im.flat):
            raise OverflowError("entries too large for int64")
        return self.re.astype(np.int64), self.im.astype(np.int64), self.den
