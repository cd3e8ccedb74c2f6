"""Small dense exact linear algebra over Q and K.

Matrices are numpy object arrays holding Fractions or GaussRationals.
Only what the package needs: products, inverses, rank and an LDL^T
factorization for positive-definiteness checks.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .scalars import GaussRational, ZERO, ONE


class NotPositiveDefinite(ValueError):
    pass


def as_object(rows) -> np.ndarray:
    arr = np.empty((len(rows), len(rows[0])), dtype=object)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            arr[i, j] = x
    return arr


def k_matrix(n: int, m: int | None = None) -> np.ndarray:
    """Zero n x m matrix over K."""
    m = n if m is None else m
    arr = np.empty((n, m), dtype=object)
    arr.fill(ZERO)
    return arr


def k_identity(n: int) -> np.ndarray:
    arr = k_matrix(n)
    for i in range(n):
        arr[i, i] = ONE
    return arr


def k_vector(n: int) -> np.ndarray:
    arr = np.empty(n, dtype=object)
    arr.fill(ZERO)
    return arr


def is_zero(a: np.ndarray) -> bool:
    return not any(bool(x) for x in a.flat)


def _rat(x) -> Fraction:
    if isinstance(x, GaussRational):
        if x.im:
            raise ValueError(f"{x} is not rational")
        return x.re
    return Fraction(x)


def _is_zero_scalar(x) -> bool:
    return not x


def inverse(a: np.ndarray) -> np.ndarray:
    """Exact Gauss-Jordan inverse; raises ZeroDivisionError if singular."""
    n = a.shape[0]
    work = [list(a[i]) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not _is_zero_scalar(work[r][col])), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        work[col], work[piv] = work[piv], work[col]
        inv_p = ONE / work[col][col]
        work[col] = [x * inv_p for x in work[col]]
        for r in range(n):
            if r != col and not _is_zero_scalar(work[r][col]):
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return as_object([row[n:] for row in work])


def rank(rows) -> int:
    """Rank of a list of vectors (rows) over K."""
    work = [list(r) for r in rows]
    if not work:
        return 0
    ncols = len(work[0])
    rk = 0
    for col in range(ncols):
        piv = next((r for r in range(rk, len(work)) if not _is_zero_scalar(work[r][col])), None)
        if piv is None:
            continue
        work[rk], work[piv] = work[piv], work[rk]
        p = work[rk][col]
        for r in range(rk + 1, len(work)):
            if not _is_zero_scalar(work[r][col]):
                f = work[r][col] / p
                work[r] = [x - f * y for x, y in zip(work[r], work[rk])]
        rk += 1
        if rk == len(work):
            break
    return rk


def det(a) -> Fraction:
    """Exact determinant of a square rational matrix."""
    work = [[_rat(x) for x in row] for row in np.asarray(a, dtype=object)]
    n = len(work)
    result = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if work[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            work[col], work[piv] = work[piv], work[col]
            result = -result
        p = work[col][col]
        result *= p
        for r in range(col + 1, n):
            if work[r][col]:
                f = work[r][col] / p
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return result


def ldl(gram) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Exact LDL^T of a symmetric rational matrix.

    Returns (L, D) with L unit lower triangular.  Raises
    :class:`NotPositiveDefinite` as soon as a pivot is <= 0.
    """
    g = [[_rat(x) for x in row] for row in np.asarray(gram, dtype=object)]
    n = len(g)
    for i in range(n):
        for j in range(i):
            if g[i][j] != g[j][i]:
                raise ValueError("Gram matrix is not symmetric")
    L = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    D: list[Fraction] = []
    for j in range(n):
        d = g[j][j] - sum(L[j][k] * L[j][k] * D[k] for k in range(j))
        if d <= 0:
            raise NotPositiveDefinite(f"pivot {j} is {d}")
        D.append(d)
        for i in range(j + 1, n):
            s = g[i][j] - sum(L[i][k] * L[j][k] * D[k] for k in range(j))
            L[i][j] = s / d
    return L, D


def leading_minors(gram) -> list[Fraction]:
    """Leading principal minors via the LDL^T pivots (all > 0 for PD input)."""
    _, D = ldl(gram)
    out, acc = [], Fraction(1)
    for d in D:
        acc *= d
        out.append(acc)
    return out
