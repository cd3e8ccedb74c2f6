"""Exact nilpotent operators on O (x) K and J (x) K and their exponentials.

Operators on the octonions act on split-basis coordinates; operators on J
act on the 27 lattice coordinates.  Matrices are :class:`KArray` values
(Gaussian integers over a common denominator).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from ._once import once
from .jordan import (
    E11, E22, JElement, V1, V2, V3, cross_tensor, gram_I, lattice_basis,
)
from .kmat import KArray
from .octonions import BETA, Octonion, bilinear_O, from_coords, oct_mul, split_basis, to_coords
from .scalars import GaussRational, T, to_k

__all__ = [
    "LinOp", "wedge_op_O", "g2_nilpotents", "exp_nilpotent", "NullPair",
    "make_null_pair", "phi_op", "phi_wedge", "f4_generators", "delta", "delta_inv",
    "delta_factors", "SingularPair", "base_singular_pair", "make_singular_pair",
    "to_E_frame", "in_V1", "word_operator", "ConsistencyError", "NotNilpotent",
]


class ConsistencyError(AssertionError):
    """An exact identity that must hold by construction failed."""


class NotNilpotent(ValueError):
    pass


class LinOp:
    """Dense exact operator on 'O' (8-dim, split coordinates) or 'J' (27-dim)."""

    __slots__ = ("mat", "space")

    def __init__(self, mat: KArray, space: str):
        self.mat = mat
        self.space = space

    @classmethod
    def identity(cls, space: str) -> "LinOp":
        return cls(KArray.identity(8 if space == "O" else 27), space)

    @classmethod
    def zero(cls, space: str) -> "LinOp":
        n = 8 if space == "O" else 27
        return cls(KArray.zeros((n, n)), space)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def entries(self) -> np.ndarray:
        """Matrix of GaussRationals."""
        return self.mat.scalars()

    def __matmul__(self, other: "LinOp") -> "LinOp":
        return LinOp(self.mat.dot(other.mat), self.space)

    def __add__(self, other: "LinOp") -> "LinOp":
        return LinOp(self.mat + other.mat, self.space)

    def __sub__(self, other: "LinOp") -> "LinOp":
        return LinOp(self.mat - other.mat, self.space)

    def __neg__(self) -> "LinOp":
        return LinOp(-self.mat, self.space)

    def scale(self, s) -> "LinOp":
        return LinOp(self.mat.scale(s), self.space)

    def __eq__(self, other):
        if not isinstance(other, LinOp):
            return NotImplemented
        return self.space == other.space and self.mat == other.mat

    def is_zero(self) -> bool:
        return self.mat.is_zero()

    def bracket(self, other: "LinOp") -> "LinOp":
        return self @ other - other @ self

    def power(self, k: int) -> "LinOp":
        out = LinOp.identity(self.space)
        for _ in range(k):
            out = out @ self
        return out

    def trace(self) -> GaussRational:
        re = sum(self.mat.re[i, i] for i in range(self.dim))
        im = sum(self.mat.im[i, i] for i in range(self.dim))
        return GaussRational(Fraction(re, self.mat.den), Fraction(im, self.mat.den))

    def apply_vec(self, v: KArray) -> KArray:
        return self.mat.dot(v)

    def __call__(self, x):
        if self.space == "O":
            if not isinstance(x, Octonion):
                raise TypeError("operator on O applied to a non-octonion")
            v = self.apply_vec(KArray.from_scalars(to_coords(x, "split")))
            return from_coords(list(v.scalars()), "split")
        if not isinstance(x, JElement):
            raise TypeError("operator on J applied to a non-J element")
        v = self.apply_vec(KArray.from_scalars(x.coords()))
        return JElement.from_coords(list(v.scalars()))


# --- g2 ------------------------------------------------------------------

def wedge_op_O(x: Octonion, y: Octonion) -> LinOp:
    """z -> (y, z) x - (x, z) y on split coordinates."""
    if x.trace() or y.trace():
        raise ValueError("x ^ y needs trace-zero octonions")
    xs = to_coords(x, "split")
    ys = to_coords(y, "split")
    M = [[None] * 8 for _ in range(8)]
    for j, z in enumerate(split_basis()):
        a, b = bilinear_O(y, z), bilinear_O(x, z)
        for i in range(8):
            M[i][j] = a * xs[i] - b * ys[i]
    return LinOp(KArray.from_scalars(M), "O")


@once
def g2_nilpotents() -> tuple[LinOp, ...]:
    eps1, e1, e2, e3, e1s, e2s, e3s, eps2 = split_basis()
    l1 = wedge_op_O(e1s, e2)
    l2 = wedge_op_O(eps1 - eps2, e2s) + wedge_op_O(e3, e1)
    l3 = l1.bracket(l2)
    l4 = l3.bracket(l2).scale(Fraction(1, 2))
    l5 = l4.bracket(l2).scale(Fraction(1, 3))
    l6 = l5.bracket(l1)
    return (l1, l2, l3, l4, l5, l6)


def exp_nilpotent(N: LinOp) -> LinOp:
    """Terminating exponential series; raises NotNilpotent if N^dim != 0."""
    result = LinOp.identity(N.space)
    term = LinOp.identity(N.space)
    for k in range(1, N.dim + 1):
        term = (term @ N).scale(Fraction(1, k))
        if term.is_zero():
            return result
        result = result + term
    raise NotNilpotent("operator is not nilpotent")


@dataclass(frozen=True)
class NullPair:
    u: Octonion
    v: Octonion

    def check(self) -> bool:
        u, v = self.u, self.v
        return (not u.trace() and not v.trace() and not oct_mul(u, u) and not oct_mul(u, v)
                and not oct_mul(v, u) and not oct_mul(v, v))


def make_null_pair(r: Sequence) -> NullPair:
    """u = exp(n) e3*, v = exp(n) e1 with n = sum r_j l_j."""
    r = [to_k(x) for x in r]
    if len(r) != 6:
        raise ValueError("a null pair is parametrized by 6 scalars")
    n = LinOp.zero("O")
    for rj, lj in zip(r, g2_nilpotents()):
        if rj:
            n = n + lj.scale(rj)
    g = exp_nilpotent(n)
    basis = split_basis()
    pair = NullPair(g(basis[6]), g(basis[1]))
    if not pair.check():
        raise ConsistencyError("exp(n) did not produce a null pair")
    return pair


# --- operators on J ---------------------------------------------------------

@once
def _cross_obj() -> np.ndarray:
    return cross_tensor().astype(object)


@once
def _gram_I_obj() -> np.ndarray:
    return gram_I().astype(object)


def _kvec(X: JElement) -> KArray:
    return KArray.from_scalars(X.coords())


def _cross_matrix(x: KArray) -> KArray:
    """Matrix of z -> cross(x, z) on lattice coordinates."""
    C = _cross_obj()
    # M[c, b] = sum_a x_a C[a, b, c]
    re = np.tensordot(x.re, C, axes=(0, 0)).T
    im = np.tensordot(x.im, C, axes=(0, 0)).T
    return KArray(np.ascontiguousarray(re), np.ascontiguousarray(im), x.den)


def _outer(x: KArray, y: KArray) -> KArray:
    re = np.outer(x.re, y.re) - np.outer(x.im, y.im)
    im = np.outer(x.re, y.im) + np.outer(x.im, y.re)
    return KArray(re, im, x.den * y.den)


def phi_op(G: JElement, x: JElement) -> LinOp:
    """Phi'_{gamma,x}: z -> -gamma x (x x z) + (gamma, z) x + 1/3 (gamma, x) z.

    ``G`` is the iota-image of gamma.
    """
    g, xv = _kvec(G), _kvec(x)
    gI = KArray(_gram_I_obj().dot(g.re), _gram_I_obj().dot(g.im), g.den)  # z -> (G, z)_I
    first = _cross_matrix(g).dot(_cross_matrix(xv))
    second = _outer(xv, gI)
    pairing = g.re.dot(_gram_I_obj()).dot(xv.re) - g.im.dot(_gram_I_obj()).dot(xv.im)
    pairing_im = g.re.dot(_gram_I_obj()).dot(xv.im) + g.im.dot(_gram_I_obj()).dot(xv.re)
    third = KArray.identity(27).scale(GaussRational(Fraction(pairing, 3 * g.den * xv.den),
                                                    Fraction(pairing_im, 3 * g.den * xv.den)))
    return LinOp(second - first + third, "J")


def phi_wedge(X: JElement, Y: JElement) -> LinOp:
    """Phi_{X ^ Y} = Phi'_{iota(X), Y} - Phi'_{iota(Y), X}."""
    return phi_op(X, Y) - phi_op(Y, X)


def in_V1(X: JElement, Y: JElement) -> bool:
    return phi_wedge(X, Y).is_zero()


@once
def f4_generators() -> tuple[LinOp, ...]:
    """The 24 nilpotents Phi_{u ^ v}: (e11, V2(v')), (e11, V3(v')), (e22, V1(v'))."""
    gens = []
    for u, slot in ((E11, V2), (E11, V3), (E22, V1)):
        for vp in split_basis():
            gens.append(phi_wedge(u, slot(vp)))
    return tuple(gens)


@once
def delta_factors() -> tuple[LinOp, ...]:
    half = Fraction(1, 2)
    b = BETA
    one = Octonion.from_cd([1, 0, 0, 0, 0, 0, 0, 0])
    return (
        phi_op(E22, V1(-1)),
        phi_op(V1(Fraction(3, 2)), E22),
        phi_op(E22, V1(-1)),
        phi_op(V1(1), E22),
        phi_op(E22, V1(b.scale(-half))),
        phi_op(E11, V2((b + one).scale(-half))),
        phi_op(V3(b.scale(-half)), E11),
    )


@once
def delta() -> LinOp:
    out = LinOp.identity("J")
    for f in delta_factors():
        out = out @ exp_nilpotent(f)
    return out


@once
def delta_inv() -> LinOp:
    out = LinOp.identity("J")
    for f in reversed(delta_factors()):
        out = out @ exp_nilpotent(-f)
    return out


# --- singular pairs ---------------------------------------------------------

@dataclass(frozen=True)
class SingularPair:
    X: JElement
    Y: JElement

    def swapped(self) -> "SingularPair":
        return SingularPair(self.Y, self.X)

    def check(self) -> bool:
        return not self.X.trace() and not self.Y.trace() and in_V1(self.X, self.Y)


@once
def base_singular_pair() -> SingularPair:
    """(X!, Y!); the pair check is part of construction."""
    half = Fraction(1, 2)
    one = Octonion.from_cd([1, 0, 0, 0, 0, 0, 0, 0])
    iK = Octonion.from_cd([0, 1, 0, 0, 0, 0, 0, 0])

    def second(q: Octonion) -> Octonion:
        return Octonion(q.second, q.first)  # (a, 0) -> (0, a)

    r1 = second(one - iK.scale(T)).scale(half)
    r3 = iK.scale(-T)
    s1 = second(iK).scale(-T)
    s2 = second(one + iK.scale(T)).scale(half)
    s3 = (one + iK.scale(T)).scale(-half)
    pair = SingularPair(JElement(1, -1, 0, r1, r1, r3), JElement(0, -1, 1, s1, s2, s3))
    if not pair.check():
        raise ConsistencyError("(X!, Y!) is not in V1")
    return pair


Word = Sequence[tuple[int, object]]


def word_operator(word: Iterable[tuple[int, object]]) -> LinOp:
    gens = f4_generators()
    g = LinOp.identity("J")
    for idx, coeff in word:
        if not 0 <= idx < len(gens):
            raise IndexError(f"generator index {idx} out of range 0..{len(gens) - 1}")
        g = g @ exp_nilpotent(gens[idx].scale(to_k(coeff)))
    return g


def make_singular_pair(word: Iterable[tuple[int, object]] = ()) -> SingularPair:
    """(g X!, g Y!) with g the product of exp(c * generator) over the word."""
    g = word_operator(list(word))
    base = base_singular_pair()
    pair = SingularPair(g(base.X), g(base.Y))
    if not pair.check():
        raise ConsistencyError("transported pair left V1")
    return pair


def to_E_frame(P: SingularPair) -> SingularPair:
    d = delta_inv()
    return SingularPair(d(P.X), d(P.Y))
