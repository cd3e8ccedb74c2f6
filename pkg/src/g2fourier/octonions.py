"""Quaternions and octonions over Q or K, Coxeter's integral order R.

Octonions are Cayley-Dickson pairs of Hamilton quaternions with
gamma = -1::

    (x1, y1)(x2, y2) = (x1 x2 - y2* y1, y2 x1 + y1 x2*)

Two bases are provided: the Coxeter basis of R (the E8 simple roots) and
the split basis of O (x) K, ordered [eps1, e1, e2, e3, e1*, e2*, e3*, eps2].
Both are built from their definitions at import time and self-checked.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .linalg import as_object, inverse, det, ldl
from .scalars import GaussRational, ZERO, ONE, T, to_k

__all__ = [
    "Quaternion", "Octonion", "oct_mul", "oct_conj", "oct_trace", "oct_norm",
    "bilinear_O", "trilinear_O", "to_coords", "from_coords", "gram_matrix_O",
    "coxeter_basis", "split_basis", "BETA", "E_UNIT", "H_UNIT",
]


class Quaternion:
    """a + b i + c j + d k with coefficients in K."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a=0, b=0, c=0, d=0):
        self.a, self.b, self.c, self.d = to_k(a), to_k(b), to_k(c), to_k(d)

    def coeffs(self):
        return (self.a, self.b, self.c, self.d)

    def __repr__(self):
        return "Quaternion(%s, %s, %s, %s)" % tuple(str(x) for x in self.coeffs())

    def __eq__(self, other):
        if not isinstance(other, Quaternion):
            return NotImplemented
        return self.coeffs() == other.coeffs()

    def __hash__(self):
        return hash(self.coeffs())

    def __bool__(self):
        return any(self.coeffs())

    def __add__(self, o):
        return Quaternion(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    def __sub__(self, o):
        return Quaternion(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __neg__(self):
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def scale(self, s) -> "Quaternion":
        s = to_k(s)
        return Quaternion(s * self.a, s * self.b, s * self.c, s * self.d)

    def __mul__(self, o):
        if not isinstance(o, Quaternion):
            return self.scale(o)
        a1, b1, c1, d1 = self.coeffs()
        a2, b2, c2, d2 = o.coeffs()
        return Quaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def __rmul__(self, s):
        return self.scale(s)

    def conj(self) -> "Quaternion":
        return Quaternion(self.a, -self.b, -self.c, -self.d)

    def norm(self) -> GaussRational:
        return self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d

    def trace(self) -> GaussRational:
        return self.a * 2


class Octonion:
    """Cayley-Dickson pair (first, second) of quaternions over K."""

    __slots__ = ("first", "second")

    def __init__(self, first: Quaternion | None = None, second: Quaternion | None = None):
        self.first = first if first is not None else Quaternion()
        self.second = second if second is not None else Quaternion()

    @classmethod
    def from_cd(cls, coeffs: Sequence) -> "Octonion":
        """From the 8 coefficients on (1, i, j, k) x {first, second}."""
        if len(coeffs) != 8:
            raise ValueError("an octonion has 8 coordinates")
        return cls(Quaternion(*coeffs[:4]), Quaternion(*coeffs[4:]))

    def cd(self) -> tuple:
        return self.first.coeffs() + self.second.coeffs()

    def __repr__(self):
        return "Octonion(%s)" % ", ".join(str(x) for x in self.cd())

    def __eq__(self, other):
        if not isinstance(other, Octonion):
            return NotImplemented
        return self.cd() == other.cd()

    def __hash__(self):
        return hash(self.cd())

    def __bool__(self):
        return bool(self.first) or bool(self.second)

    def __add__(self, o):
        return Octonion(self.first + o.first, self.second + o.second)

    def __sub__(self, o):
        return Octonion(self.first - o.first, self.second - o.second)

    def __neg__(self):
        return Octonion(-self.first, -self.second)

    def scale(self, s) -> "Octonion":
        return Octonion(self.first.scale(s), self.second.scale(s))

    def __mul__(self, o):
        if isinstance(o, Octonion):
            return oct_mul(self, o)
        return self.scale(o)

    def __rmul__(self, s):
        return self.scale(s)

    def conj(self) -> "Octonion":
        return Octonion(self.first.conj(), -self.second)

    def norm(self) -> GaussRational:
        return self.first.norm() + self.second.norm()

    def trace(self) -> GaussRational:
        return self.first.trace()


def oct_mul(x: Octonion, y: Octonion) -> Octonion:
    x1, y1 = x.first, x.second
    x2, y2 = y.first, y.second
    return Octonion(x1 * x2 - y2.conj() * y1, y2 * x1 + y1 * x2.conj())


def oct_conj(x: Octonion) -> Octonion:
    return x.conj()


def oct_trace(x: Octonion) -> GaussRational:
    return x.trace()


def oct_norm(x: Octonion) -> GaussRational:
    return x.norm()


def bilinear_O(x: Octonion, y: Octonion) -> GaussRational:
    """(x, y) = n(x+y) - n(x) - n(y), the K-bilinear polarization."""
    return sum((p * q for p, q in zip(x.cd(), y.cd())), ZERO) * 2


def trilinear_O(x: Octonion, y: Octonion, z: Octonion) -> GaussRational:
    """(x, y, z) = tr(x (y z))."""
    return oct_trace(oct_mul(x, oct_mul(y, z)))


def _oct(*coeffs) -> Octonion:
    return Octonion.from_cd([to_k(c) for c in coeffs])


HALF = Fraction(1, 2)
O_ONE = _oct(1, 0, 0, 0, 0, 0, 0, 0)
O_I = _oct(0, 1, 0, 0, 0, 0, 0, 0)
O_J = _oct(0, 0, 1, 0, 0, 0, 0, 0)
O_K = _oct(0, 0, 0, 1, 0, 0, 0, 0)
E_UNIT = _oct(0, 0, 0, 0, 1, 0, 0, 0)
H_UNIT = (O_I + O_J + O_K + E_UNIT).scale(HALF)
BETA = _oct(-HALF, HALF, HALF, HALF, HALF, HALF, HALF, HALF)

COXETER_NAMES = ("jh", "e", "-h", "j", "ih", "1", "eh", "ke")
SPLIT_NAMES = ("eps1", "e1", "e2", "e3", "e1*", "e2*", "e3*", "eps2")


@lru_cache(maxsize=None)
def coxeter_basis() -> tuple[Octonion, ...]:
    e, h = E_UNIT, H_UNIT
    return (O_J * h, e, -h, O_J, O_I * h, O_ONE, e * h, O_K * e)


@lru_cache(maxsize=None)
def split_basis() -> tuple[Octonion, ...]:
    t = T

    def first(q):
        return Octonion(q, Quaternion())

    def second(q):
        return Octonion(Quaternion(), q)

    one, qi, qj, qk = Quaternion(1), Quaternion(0, 1), Quaternion(0, 0, 1), Quaternion(0, 0, 0, 1)
    e2 = (second(one) - second(qi).scale(t)).scale(HALF)
    e3s = (second(qj) - second(qk).scale(t)).scale(HALF)
    e3 = (second(-qj) - second(qk).scale(t)).scale(HALF)
    e2s = (second(-one) - second(qi).scale(t)).scale(HALF)
    eps1 = (first(one) - first(qi).scale(t)).scale(HALF)
    eps2 = (first(one) + first(qi).scale(t)).scale(HALF)
    e1 = (first(qj) - first(qk).scale(t)).scale(HALF)
    e1s = (first(-qj) - first(qk).scale(t)).scale(HALF)
    return (eps1, e1, e2, e3, e1s, e2s, e3s, eps2)


def _basis(name: str) -> tuple[Octonion, ...]:
    if name == "coxeter":
        return coxeter_basis()
    if name == "split":
        return split_basis()
    raise ValueError(f"unknown basis {name!r}; expected 'coxeter' or 'split'")


@lru_cache(maxsize=None)
def _inverse_change(name: str) -> np.ndarray:
    # columns of the basis matrix are CD coordinates of the basis vectors
    cols = _basis(name)
    mat = as_object([[cols[j].cd()[i] for j in range(8)] for i in range(8)])
    return inverse(mat)


def to_coords(x: Octonion, basis: str = "coxeter") -> tuple[GaussRational, ...]:
    inv = _inverse_change(basis)
    v = x.cd()
    return tuple(sum((inv[i, j] * v[j] for j in range(8)), ZERO) for i in range(8))


def from_coords(coords: Iterable, basis: str = "coxeter") -> Octonion:
    coords = [to_k(c) for c in coords]
    if len(coords) != 8:
        raise ValueError("expected 8 coordinates")
    out = Octonion()
    for c, b in zip(coords, _basis(basis)):
        if c:
            out = out + b.scale(c)
    return out


def in_order(x: Octonion) -> bool:
    """Membership in Coxeter's order R."""
    return all(c.im == 0 and c.re.denominator == 1 for c in to_coords(x, "coxeter"))


def gram_matrix_O(basis: str = "coxeter", pairing: str = "norm") -> np.ndarray:
    """Gram matrix of the norm pairing (x, y) or the trace pairing tr(x y)."""
    b = _basis(basis)
    if pairing == "norm":
        f = bilinear_O
    elif pairing == "trace":
        def f(x, y):
            return oct_trace(oct_mul(x, y))
    else:
        raise ValueError(f"unknown pairing {pairing!r}")
    return as_object([[f(x, y) for y in b] for x in b])


# --- integer structure constants on Coxeter coordinates -------------------

@lru_cache(maxsize=None)
def coxeter_int_gram() -> np.ndarray:
    g = gram_matrix_O("coxeter", "norm")
    return np.array([[int(x.re) for x in row] for row in g], dtype=np.int64)


@lru_cache(maxsize=None)
def coxeter_mult_table() -> np.ndarray:
    """M[a, b, c]: c-th Coxeter coordinate of basis_a * basis_b."""
    b = coxeter_basis()
    M = np.zeros((8, 8, 8), dtype=np.int64)
    for p in range(8):
        for q in range(8):
            for r, c in enumerate(to_coords(oct_mul(b[p], b[q]))):
                if c.im or c.re.denominator != 1:
                    raise AssertionError("R is not closed under multiplication")
                M[p, q, r] = int(c.re)
    return M


@lru_cache(maxsize=None)
def coxeter_conj_matrix() -> np.ndarray:
    """C with coords(x*) = C @ coords(x)."""
    b = coxeter_basis()
    C = np.zeros((8, 8), dtype=np.int64)
    for q in range(8):
        for r, c in enumerate(to_coords(b[q].conj())):
            C[r, q] = int(c.re)
    return C


@lru_cache(maxsize=None)
def coxeter_trace_vector() -> np.ndarray:
    return np.array([int(x.trace().re) for x in coxeter_basis()], dtype=np.int64)


@lru_cache(maxsize=None)
def coxeter_trilinear_tensor() -> np.ndarray:
    """Tr[a, b, c] = (basis_a, basis_b, basis_c), integral on R."""
    M = coxeter_mult_table()
    tr = coxeter_trace_vector()
    # tr(x (y z)) with (y z) = sum_c M[b, c, d] basis_d
    xyz = np.einsum("bcd,ade->abce", M, M)
    return np.einsum("abce,e->abc", xyz, tr)


def _self_check() -> None:
    for x in coxeter_basis():
        assert x.norm() == 1
    g = gram_matrix_O("coxeter", "norm")
    assert det(g) == 1
    ldl(g)
    coxeter_mult_table()
    sb = split_basis()
    for x in sb:
        assert x.norm() == 0


_self_check()
