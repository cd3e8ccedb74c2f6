"""Fincke-Pohst enumeration of lattice vectors in a norm window.

The search tree is pruned with float64 Cholesky data whose budget is
inflated by a fixed margin, so rounding can only add nodes, never drop
them.  Every emitted vector is re-checked with exact integer arithmetic
against the integer Gram matrix, so the output is exactly the set of
integer x with lo <= x^T G x <= hi.

The kernel is re-entrant: the traversal state lives in arrays owned by
the caller, which lets huge shells stream out in fixed-size chunks.
"""
from __future__ import annotations

from fractions import Fraction

import numba
import numpy as np

from .linalg import ldl

# Upper bound on the float error of any partial sum in the traversal, for
# Gram matrices with |entries| < 2^20 and dimension <= 64, relative to the
# budget; the margin below exceeds it by several orders of magnitude.
_MARGIN = 1e-6


@numba.njit(cache=True)
def _fp_run(mu, D, gram, lo, hi, top_lo, top_hi, x, ub, c, r, st, out):
    n = D.shape[0]
    cap = out.shape[0]
    cnt = 0
    k = st[0]
    if st[1] == 0:
        # fresh start
        k = n - 1
        r[n] = hi + _MARGIN * (1.0 + hi)
        c[k] = 0.0
        rad = np.sqrt(r[n] / D[k])
        lo_k = np.int64(np.ceil(-rad))
        hi_k = np.int64(np.floor(rad))
        if lo_k < top_lo:
            lo_k = top_lo
        if hi_k > top_hi:
            hi_k = top_hi
        x[k] = lo_k
        ub[k] = hi_k
        st[1] = 1
    while True:
        if k >= n:
            st[0] = k
            st[1] = 2
            return cnt
        if x[k] > ub[k]:
            k += 1
            if k < n:
                x[k] += 1
            continue
        y = x[k] - c[k]
        rem = r[k + 1] - D[k] * y * y
        if rem < 0.0:
            if y > 0:
                x[k] = ub[k] + 1
            else:
                x[k] += 1
            continue
        if k == 0:
            acc = 0
            for i in range(n):
                if x[i] != 0:
                    s = 0
                    for j in range(n):
                        s += gram[i, j] * x[j]
                    acc += x[i] * s
            if acc >= lo and acc <= hi:
                for i in range(n):
                    out[cnt, i] = x[i]
                cnt += 1
            x[0] += 1
            if cnt == cap:
                st[0] = k
                return cnt
            continue
        r[k] = rem
        k -= 1
        s = 0.0
        for j in range(k + 1, n):
            s += mu[k, j] * x[j]
        c[k] = -s
        rad = np.sqrt(rem / D[k])
        x[k] = np.int64(np.ceil(c[k] - rad))
        ub[k] = np.int64(np.floor(c[k] + rad))


def _cholesky_data(gram: np.ndarray):
    g = np.asarray(gram, dtype=np.float64)
    L = np.linalg.cholesky(g)
    R = L.T
    d = np.diag(R).copy()
    mu = R / d[:, None]
    return np.ascontiguousarray(mu), d * d


def check_positive_definite(gram) -> None:
    """Exact LDL^T; raises linalg.NotPositiveDefinite."""
    ldl(np.asarray(gram, dtype=object).tolist() if not isinstance(gram, list) else gram)


def iter_vectors(gram, lo: int, hi: int, top: tuple[int, int] | None = None,
                 chunk: int = 1 << 18, validate: bool = True):
    """Yield int64 arrays (rows) of all x with lo <= x^T G x <= hi.

    ``top`` optionally restricts the last coordinate to a closed range.
    Rows come out in a fixed depth-first order.
    """
    g = np.asarray(gram, dtype=np.int64)
    n = g.shape[0]
    if g.shape != (n, n) or not np.array_equal(g, g.T):
        raise ValueError("Gram matrix must be square and symmetric")
    if np.abs(g).max(initial=0) >= 1 << 20:
        raise ValueError("Gram entries too large for the enumeration kernel")
    if validate:
        ldl([[Fraction(int(v)) for v in row] for row in g])
    if hi < 0 or hi < lo:
        return
    mu, D = _cholesky_data(g)
    tl, th = (np.iinfo(np.int64).min // 2, np.iinfo(np.int64).max // 2) if top is None else top
    x = np.zeros(n, np.int64)
    ub = np.zeros(n, np.int64)
    c = np.zeros(n, np.float64)
    r = np.zeros(n + 1, np.float64)
    st = np.zeros(2, np.int64)
    out = np.zeros((chunk, n), np.int64)
    while st[1] != 2:
        cnt = _fp_run(mu, D, g, int(lo), int(hi), int(tl), int(th), x, ub, c, r, st, out)
        if cnt:
            yield out[:cnt].copy()


def short_vectors(gram, lo: int, hi: int, top=None) -> np.ndarray:
    n = np.asarray(gram).shape[0]
    parts = list(iter_vectors(gram, lo, hi, top))
    if not parts:
        return np.zeros((0, n), np.int64)
    return np.concatenate(parts)


# --- basis reduction ------------------------------------------------------

def lll_reduce(basis: np.ndarray, gram: np.ndarray, delta: float = 0.99) -> np.ndarray:
    """LLL-reduce the columns of ``basis`` w.r.t. ``gram``.

    Float Gram-Schmidt only decides which integer column operations to
    perform; the returned basis is an exact unimodular transform of the
    input, whatever the rounding.
    """
    B = np.array(basis, dtype=np.int64)
    g = np.asarray(gram, dtype=np.int64)
    m = B.shape[1]

    def gs(Bc):
        Gz = (Bc.T @ g @ Bc).astype(np.float64)
        mu = np.zeros((m, m))
        bstar = np.zeros(m)
        for i in range(m):
            for j in range(i):
                mu[i, j] = (Gz[i, j] - sum(mu[j, k] * mu[i, k] * bstar[k] for k in range(j))) / bstar[j]
            bstar[i] = Gz[i, i] - sum(mu[i, k] ** 2 * bstar[k] for k in range(i))
        return mu, bstar

    k = 1
    mu, bstar = gs(B)
    guard = 0
    while k < m:
        guard += 1
        if guard > 100000:
            raise RuntimeError("LLL did not terminate")
        for j in range(k - 1, -1, -1):
            q = int(round(mu[k, j]))
            if q:
                B[:, k] -= q * B[:, j]
                mu, bstar = gs(B)
        if bstar[k] >= (delta - mu[k, k - 1] ** 2) * bstar[k - 1]:
            k += 1
        else:
            B[:, [k - 1, k]] = B[:, [k, k - 1]]
            mu, bstar = gs(B)
            k = max(k - 1, 1)
    return B


def adapted_basis(gram: np.ndarray, linear: np.ndarray) -> np.ndarray:
    """Unimodular W whose last coordinate equals the primitive form ``linear``.

    Columns 0..n-2 span the kernel of ``linear`` (LLL-reduced), column n-1
    has ``linear`` value 1 and is size-reduced against them.  For x = W z
    one has linear . x = z[-1].
    """
    lin = np.asarray(linear, dtype=np.int64)
    n = lin.shape[0]
    piv = next((i for i in range(n) if abs(lin[i]) == 1), None)
    if piv is None:
        raise ValueError("linear form has no unit coefficient")
    s = int(lin[piv])
    cols = []
    for j in range(n):
        if j == piv:
            continue
        v = np.zeros(n, np.int64)
        v[j] = 1
        v[piv] = -s * lin[j]
        cols.append(v)
    K = lll_reduce(np.array(cols).T, gram)
    last = np.zeros(n, np.int64)
    last[piv] = s
    g = np.asarray(gram, dtype=np.int64)
    W = np.column_stack([K, last])
    # size-reduce the last column against the kernel part
    for _ in range(3):
        Gz = W.T @ g @ W
        sub = Gz[:-1, :-1].astype(np.float64)
        coef = np.linalg.solve(sub, Gz[:-1, -1].astype(np.float64))
        q = np.rint(coef).astype(np.int64)
        if not q.any():
            break
        W[:, -1] -= K @ q
    assert (lin @ W[:, :-1] == 0).all() and lin @ W[:, -1] == 1
    assert round(abs(np.linalg.det(W.astype(np.float64)))) == 1
    return W
