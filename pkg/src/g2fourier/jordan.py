"""The exceptional cubic norm structure J = H_3(O) over Q and K.

Elements are written ``[c1, c2, c3; x1, x2, x3]``.  Dual vectors are always
represented by their images under the identification J ~ J^v given by
(.,.)_I, so ``sharp`` and ``cross`` return elements of J and the natural
pairing is ``pair_I``.

Lattice coordinates on J_R are ordered (e11, e22, e33, Coxeter basis of
slot 1, slot 2, slot 3).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from ._once import once
from .linalg import as_object, ldl
from .octonions import (
    BETA, Octonion, bilinear_O, from_coords, oct_mul, to_coords, trilinear_O,
)
from .scalars import GaussRational, ZERO, to_k

__all__ = [
    "JElement", "SymMatrix3", "norm_J", "sharp", "cross", "trilinear_J",
    "pair_I", "pair_natural", "pair_E", "rank", "gram_E", "gram_I",
    "projection_sym3", "J_I", "J_E", "E11", "E22", "E33", "V", "V1", "V2", "V3",
]


class JElement:
    __slots__ = ("c1", "c2", "c3", "x1", "x2", "x3")

    def __init__(self, c1=0, c2=0, c3=0, x1=None, x2=None, x3=None):
        self.c1, self.c2, self.c3 = to_k(c1), to_k(c2), to_k(c3)
        self.x1 = x1 if x1 is not None else Octonion()
        self.x2 = x2 if x2 is not None else Octonion()
        self.x3 = x3 if x3 is not None else Octonion()

    @property
    def cs(self):
        return (self.c1, self.c2, self.c3)

    @property
    def xs(self):
        return (self.x1, self.x2, self.x3)

    def __repr__(self):
        return f"JElement([{self.c1}, {self.c2}, {self.c3}; {self.x1}, {self.x2}, {self.x3}])"

    def __eq__(self, other):
        if not isinstance(other, JElement):
            return NotImplemented
        return self.cs == other.cs and self.xs == other.xs

    def __hash__(self):
        return hash((self.cs, self.xs))

    def __bool__(self):
        return any(self.cs) or any(self.xs)

    def __add__(self, o):
        return JElement(self.c1 + o.c1, self.c2 + o.c2, self.c3 + o.c3,
                        self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3)

    def __sub__(self, o):
        return JElement(self.c1 - o.c1, self.c2 - o.c2, self.c3 - o.c3,
                        self.x1 - o.x1, self.x2 - o.x2, self.x3 - o.x3)

    def __neg__(self):
        return JElement(-self.c1, -self.c2, -self.c3, -self.x1, -self.x2, -self.x3)

    def scale(self, s) -> "JElement":
        s = to_k(s)
        return JElement(s * self.c1, s * self.c2, s * self.c3,
                        self.x1.scale(s), self.x2.scale(s), self.x3.scale(s))

    def __mul__(self, s):
        return self.scale(s)

    __rmul__ = __mul__

    def trace(self) -> GaussRational:
        return self.c1 + self.c2 + self.c3

    def coords(self) -> tuple[GaussRational, ...]:
        """The 27 lattice coordinates."""
        return self.cs + to_coords(self.x1) + to_coords(self.x2) + to_coords(self.x3)

    @classmethod
    def from_coords(cls, coords: Sequence) -> "JElement":
        coords = list(coords)
        if len(coords) != 27:
            raise ValueError("expected 27 coordinates")
        return cls(coords[0], coords[1], coords[2],
                   from_coords(coords[3:11]), from_coords(coords[11:19]),
                   from_coords(coords[19:27]))

    def in_lattice(self) -> bool:
        """Membership in J_R."""
        return all(c.im == 0 and c.re.denominator == 1 for c in self.coords())


def V(x=None, y=None, z=None) -> JElement:
    return JElement(0, 0, 0, x, y, z)


def _as_oct(x) -> Octonion:
    if isinstance(x, Octonion):
        return x
    return Octonion.from_cd([to_k(x)] + [0] * 7)


def V1(x) -> JElement:
    return V(_as_oct(x), None, None)


def V2(y) -> JElement:
    return V(None, _as_oct(y), None)


def V3(z) -> JElement:
    return V(None, None, _as_oct(z))


J_I = JElement(1, 1, 1)
J_E = JElement(2, 2, 2, BETA, BETA, BETA)
E11 = JElement(1, 0, 0)
E22 = JElement(0, 1, 0)
E33 = JElement(0, 0, 1)
J_ZERO = JElement()


def norm_J(X: JElement) -> GaussRational:
    c1, c2, c3 = X.cs
    x1, x2, x3 = X.xs
    return (c1 * c2 * c3 - c1 * x1.norm() - c2 * x2.norm() - c3 * x3.norm()
            + trilinear_O(x1, x2, x3))


def sharp(X: JElement) -> JElement:
    """iota(X^#)."""
    c1, c2, c3 = X.cs
    x1, x2, x3 = X.xs
    return JElement(
        c2 * c3 - x1.norm(), c3 * c1 - x2.norm(), c1 * c2 - x3.norm(),
        oct_mul(x2, x3).conj() - x1.scale(c1),
        oct_mul(x3, x1).conj() - x2.scale(c2),
        oct_mul(x1, x2).conj() - x3.scale(c3),
    )


def cross(X: JElement, Y: JElement) -> JElement:
    """iota(X x Y) = iota((X+Y)^# - X^# - Y^#), written out bilinearly."""
    c1, c2, c3 = X.cs
    x1, x2, x3 = X.xs
    d1, d2, d3 = Y.cs
    y1, y2, y3 = Y.xs
    return JElement(
        c2 * d3 + d2 * c3 - bilinear_O(x1, y1),
        c3 * d1 + d3 * c1 - bilinear_O(x2, y2),
        d1 * c2 + c1 * d2 - bilinear_O(x3, y3),
        (oct_mul(y2, x3) + oct_mul(x2, y3)).conj() - x1.scale(d1) - y1.scale(c1),
        (oct_mul(y3, x1) + oct_mul(x3, y1)).conj() - x2.scale(d2) - y2.scale(c2),
        (oct_mul(y1, x2) + oct_mul(x1, y2)).conj() - x3.scale(d3) - y3.scale(c3),
    )


def trilinear_J(X: JElement, Y: JElement, Z: JElement) -> GaussRational:
    """Symmetric trilinear form with (X, X, X) = 6 N(X), by polarizing N."""
    return (norm_J(X + Y + Z) - norm_J(X + Y) - norm_J(X + Z) - norm_J(Y + Z)
            + norm_J(X) + norm_J(Y) + norm_J(Z))


def pair_I(X: JElement, Y: JElement) -> GaussRational:
    return (X.c1 * Y.c1 + X.c2 * Y.c2 + X.c3 * Y.c3 + bilinear_O(X.x1, Y.x1)
            + bilinear_O(X.x2, Y.x2) + bilinear_O(X.x3, Y.x3))


def pair_natural(G: JElement, X: JElement) -> GaussRational:
    """Pairing of the dual vector with iota-image G against X."""
    return pair_I(G, X)


@once
def _E_sharp() -> JElement:
    return sharp(J_E)


def pair_U(U: JElement, X: JElement, Y: JElement) -> GaussRational:
    """(X, Y)_U = (X, U^#)(Y, U^#) - (U, X, Y) for N(U) = 1."""
    us = sharp(U)
    return pair_I(X, us) * pair_I(Y, us) - pair_I(U, cross(X, Y))


def pair_E(X: JElement, Y: JElement) -> GaussRational:
    es = _E_sharp()
    return pair_I(X, es) * pair_I(Y, es) - pair_I(J_E, cross(X, Y))


def rank(X: JElement) -> int:
    if not X:
        return 0
    if not sharp(X):
        return 1
    if not norm_J(X):
        return 2
    return 3


@once
def lattice_basis() -> tuple[JElement, ...]:
    out = []
    for i in range(27):
        v = [0] * 27
        v[i] = 1
        out.append(JElement.from_coords(v))
    return tuple(out)


@once
def gram_I() -> np.ndarray:
    """27 x 27 integer Gram matrix of (.,.)_I in lattice coordinates."""
    from .octonions import coxeter_int_gram
    g = np.zeros((27, 27), dtype=np.int64)
    g[0, 0] = g[1, 1] = g[2, 2] = 1
    cg = coxeter_int_gram()
    for s in range(3):
        g[3 + 8 * s:11 + 8 * s, 3 + 8 * s:11 + 8 * s] = cg
    return g


@once
def gram_E() -> np.ndarray:
    """27 x 27 integer Gram matrix of (.,.)_E, computed from pair_E.

    Checked positive definite by an exact LDL^T before it is returned.
    """
    basis = lattice_basis()
    es = _E_sharp()
    lin = [pair_I(b, es) for b in basis]
    g = np.zeros((27, 27), dtype=np.int64)
    for a in range(27):
        ca = cross(basis[a], J_E)
        for b in range(a, 27):
            v = lin[a] * lin[b] - pair_I(ca, basis[b])
            if v.im or v.re.denominator != 1:
                raise AssertionError("(.,.)_E is not integral on J_R")
            g[a, b] = g[b, a] = int(v.re)
    ldl(g.tolist())
    return g


@once
def cross_tensor() -> np.ndarray:
    """C[a, b, :] = lattice coordinates of cross(e_a, e_b); integral."""
    basis = lattice_basis()
    C = np.zeros((27, 27, 27), dtype=np.int64)
    for a in range(27):
        for b in range(a, 27):
            vals = cross(basis[a], basis[b]).coords()
            for c, v in enumerate(vals):
                if v.im or v.re.denominator != 1:
                    raise AssertionError("J_R is not closed under cross")
                C[a, b, c] = C[b, a, c] = int(v.re)
    return C


@dataclass(frozen=True)
class SymMatrix3:
    """Half-integral symmetric 3x3 matrix; off-diagonal entries are t_i / 2.

    t1 sits in position (2,3), t2 in (3,1), t3 in (1,2), matching the
    octonion slots of J.
    """
    c1: int
    c2: int
    c3: int
    t1: int
    t2: int
    t3: int

    def as_tuple(self) -> tuple[int, ...]:
        return (self.c1, self.c2, self.c3, self.t1, self.t2, self.t3)

    def matrix(self) -> list[list[Fraction]]:
        h = Fraction(1, 2)
        return [[Fraction(self.c1), self.t3 * h, self.t2 * h],
                [self.t3 * h, Fraction(self.c2), self.t1 * h],
                [self.t2 * h, self.t1 * h, Fraction(self.c3)]]


def projection_sym3(T: JElement) -> SymMatrix3:
    if not T.in_lattice():
        raise ValueError("projection is defined on J_R only")
    vals = [T.c1, T.c2, T.c3] + [x.trace() for x in T.xs]
    return SymMatrix3(*(int(v.re) for v in vals))
