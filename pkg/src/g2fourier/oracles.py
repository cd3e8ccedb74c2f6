"""Slow, independent reference enumerations used by the self-test and tests.

None of these share the search strategy of the production engines:
shells come from half-integer Cayley-Dickson coordinates instead of the
Coxeter Gram matrix, and Omega sets come from the whole norm shell of
J_R in the raw lattice basis, classified afterwards.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .enumeration import sharp_norm_coords
from .fincke_pohst import iter_vectors
from .jordan import J_E, J_I, gram_E, gram_I, sharp
from .octonions import coxeter_basis, _inverse_change


def _sum_of_squares(total: int, dim: int) -> np.ndarray:
    """All y in Z^dim with sum y_i^2 = total (naive recursion)."""
    if dim == 0:
        return np.zeros((1, 0), np.int64) if total == 0 else np.zeros((0, 0), np.int64)
    parts = []
    r = int(total ** 0.5)
    while (r + 1) ** 2 <= total:
        r += 1
    for y in range(-r, r + 1):
        rest = _sum_of_squares(total - y * y, dim - 1)
        if rest.shape[0]:
            parts.append(np.column_stack([np.full(rest.shape[0], y, np.int64), rest]))
    if not parts:
        return np.zeros((0, dim), np.int64)
    return np.concatenate(parts)


def brute_force_shell(n: int) -> np.ndarray:
    """Coxeter coordinates of all v in R with n(v) = n, sorted.

    R sits inside (1/2) Z^8 in Cayley-Dickson coordinates, where the norm is
    the plain sum of squares; so v = y / 2 with y in Z^8, |y|^2 = 4n, and
    membership in R is an integrality test on the Coxeter coordinates.
    """
    for b in coxeter_basis():
        assert all((2 * c).is_integral() for c in b.cd())
    inv = _inverse_change("coxeter")
    # Coxeter coords = inv @ (y / 2) = (A @ y) / (2 den) with A = den * inv
    den = 1
    for x in inv.flat:
        den = den * x.denominator() // np.gcd(den, x.denominator())
    A = np.array([[int(x.re * den) for x in row] for row in inv], dtype=np.int64)
    Y = _sum_of_squares(4 * n, 8)
    Z = Y @ A.T
    keep = (Z % (2 * den) == 0).all(axis=1)
    out = Z[keep] // (2 * den)
    return out[np.lexsort(out.T[::-1])] if out.shape[0] > 1 else out


def _frame_data(frame: str):
    U = J_I if frame == "I" else J_E
    G = gram_I() if frame == "I" else gram_E()
    GI = gram_I()
    us = np.array([int(x.re) for x in sharp(U).coords()], dtype=np.int64)
    uc = np.array([int(x.re) for x in U.coords()], dtype=np.int64)
    return G, GI @ us, GI @ uc


def brute_force_omega(frame: str, t: int, chunk: int = 1 << 18):
    """Yield (b, c, d, rows) chunks: every T in J_R with (T, T)_frame = t,
    classified by (T, U#), (T#, U), N(T) with U = I or E."""
    G, lin_b, lin_c = _frame_data(frame)
    for C in iter_vectors(G, t, t, chunk=chunk):
        S, N = sharp_norm_coords(C)
        B = C @ lin_b
        Cc = S @ lin_c
        yield B, Cc, N, C


def row_fingerprint(C: np.ndarray, seed: int = 12345) -> np.ndarray:
    """Two 64-bit hashes per row, for order-free multiset comparison."""
    rng = np.random.default_rng(seed)
    w = rng.integers(1, 1 << 62, size=(C.shape[1], 2), dtype=np.int64)
    with np.errstate(over="ignore"):
        return C.astype(np.int64) @ w
