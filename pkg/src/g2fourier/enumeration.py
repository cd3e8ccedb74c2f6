"""Exact enumeration: octonion shells, short vectors, rank-one lifts, Omega sets.

All lattice points are int64 coordinate rows: 8 Coxeter coordinates for
octonions, 27 lattice coordinates (c1, c2, c3, x1, x2, x3) for J.
"""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Iterator, Sequence

import numba
import numpy as np

from .fincke_pohst import adapted_basis, iter_vectors, short_vectors
from .jordan import JElement, SymMatrix3, gram_E, gram_I, lattice_basis, J_E
from .linalg import ldl
from .octonions import (
    Octonion, coxeter_basis, coxeter_conj_matrix, coxeter_int_gram, coxeter_mult_table,
    coxeter_trace_vector, coxeter_trilinear_tensor, from_coords,
)

__all__ = [
    "BinaryCubic", "Shell", "OmegaSet", "oct_shell", "qf_short_vectors",
    "sp6_rank_one_lifts", "sp6_lift_coords", "omega_I", "omega_E", "stream_omega", "sharp_norm_coords",
    "ShellCache", "basis_fingerprint", "e_linear_form",
]


@dataclass(frozen=True)
class BinaryCubic:
    """f(u, v) = a u^3 + b u^2 v + c u v^2 + d v^3."""
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for name in "abcd":
            if not isinstance(getattr(self, name), (int, np.integer)):
                raise TypeError("cubic coefficients must be integers")

    @classmethod
    def parse(cls, text: str) -> "BinaryCubic":
        parts = [p for p in text.replace(" ", "").split(",") if p]
        if len(parts) != 4:
            raise ValueError(f"a cubic needs four integers a,b,c,d, got {text!r}")
        return cls(*(int(p) for p in parts))

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def is_monic(self) -> bool:
        return self.a == 1

    def require_monic(self) -> None:
        if self.a != 1:
            raise ValueError(f"cubic {self.as_tuple()} is not monic")

    @property
    def target(self) -> int:
        """b^2 - 2c, the value of (T, T) on the Omega set."""
        return self.b * self.b - 2 * self.c

    def substitute(self, r: int) -> "BinaryCubic":
        """f(u + r v, v)."""
        a, b, c, d = self.as_tuple()
        return BinaryCubic(a, 3 * a * r + b, 3 * a * r * r + 2 * b * r + c,
                           a * r ** 3 + b * r * r + c * r + d)

    def __call__(self, u, v):
        return self.a * u ** 3 + self.b * u * u * v + self.c * u * v * v + self.d * v ** 3

    def __str__(self):
        return ",".join(str(x) for x in self.as_tuple())


# --- octonion shells --------------------------------------------------------

@dataclass(frozen=True)
class Shell:
    norm: int
    trace_filter: int | None
    coords: np.ndarray = field(repr=False, compare=False)

    def __len__(self) -> int:
        return self.coords.shape[0]

    @property
    def elements(self) -> list[Octonion]:
        return [from_coords(row.tolist()) for row in self.coords]


def basis_fingerprint() -> str:
    text = ";".join(",".join(str(c) for c in b.cd()) for b in coxeter_basis())
    return hashlib.sha256(text.encode()).hexdigest()[:16]


_SHELLS: dict[tuple[int, int | None], np.ndarray] = {}
_SHELL_LOCK = threading.Lock()
CACHE_VERSION = 1


def _lex_sorted(a: np.ndarray) -> np.ndarray:
    if a.shape[0] <= 1:
        return a
    return a[np.lexsort(a.T[::-1])]


def _norm_shell(n: int) -> np.ndarray:
    key = (n, None)
    hit = _SHELLS.get(key)
    if hit is not None:
        return hit
    rows = _lex_sorted(short_vectors(coxeter_int_gram(), 2 * n, 2 * n))
    rows.setflags(write=False)
    with _SHELL_LOCK:
        return _SHELLS.setdefault(key, rows)


def oct_shell(n: int, trace: int | None = None) -> Shell:
    """All v in R with n(v) = n (and tr(v) = trace if given)."""
    if n < 0:
        raise ValueError("shell norm must be non-negative")
    key = (n, trace)
    hit = _SHELLS.get(key)
    if hit is None:
        rows = _norm_shell(n)
        if trace is not None:
            rows = rows[rows @ coxeter_trace_vector() == trace]
            rows.setflags(write=False)
            with _SHELL_LOCK:
                rows = _SHELLS.setdefault(key, rows)
        hit = rows
    return Shell(n, trace, hit)


class ShellCache:
    """Versioned JSON persistence for the shell memo, keyed by basis fingerprint."""

    def __init__(self, path: str | os.PathLike):
        self.path = os.fspath(path)

    def load(self) -> int:
        """Merge the file into memory; returns the number of shells loaded."""
        if not os.path.exists(self.path):
            return 0
        with open(self.path) as fh:
            doc = json.load(fh)
        if doc.get("version") != CACHE_VERSION:
            raise ValueError(f"shell cache {self.path}: unsupported version {doc.get('version')}")
        if doc.get("basis_fingerprint") != basis_fingerprint():
            raise ValueError(f"shell cache {self.path}: basis fingerprint mismatch")
        count = 0
        for entry in doc.get("shells", []):
            rows = np.array(entry["coords"], dtype=np.int64).reshape(-1, 8)
            rows.setflags(write=False)
            with _SHELL_LOCK:
                _SHELLS.setdefault((int(entry["n"]), entry["trace"]), rows)
            count += 1
        return count

    def save(self) -> None:
        with _SHELL_LOCK:
            items = sorted(_SHELLS.items(), key=lambda kv: (kv[0][0], kv[0][1] is not None, kv[0][1] or 0))
        doc = {
            "version": CACHE_VERSION,
            "basis_fingerprint": basis_fingerprint(),
            "shells": [{"n": n, "trace": t, "coords": rows.tolist()} for (n, t), rows in items],
        }
        d = os.path.dirname(os.path.abspath(self.path))
        fd, tmp = tempfile.mkstemp(dir=d, prefix=".shells-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(doc, fh)
            os.replace(tmp, self.path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


def clear_shell_memo() -> None:
    with _SHELL_LOCK:
        _SHELLS.clear()


# --- general short vectors --------------------------------------------------

def qf_short_vectors(G, t: int) -> np.ndarray:
    """All integer x with x^T G x = t, lexicographically sorted.

    G may hold ints or Fractions; it must be symmetric positive definite.
    """
    rows = [[Fraction(v) for v in row] for row in np.asarray(G, dtype=object).tolist()]
    n = len(rows)
    if any(len(r) != n for r in rows) or any(rows[i][j] != rows[j][i] for i in range(n) for j in range(n)):
        raise ValueError("Gram matrix must be square and symmetric")
    ldl(rows)
    if t < 0:
        return np.zeros((0, n), np.int64)
    scale = lcm(*(v.denominator for r in rows for v in r))
    gi = np.array([[int(v * scale) for v in r] for r in rows], dtype=np.int64)
    target = Fraction(t) * scale
    return _lex_sorted(short_vectors(gi, int(target), int(target)))


# --- integer J arithmetic ---------------------------------------------------

@numba.njit(cache=True)
def _sharp_norm_kernel(C, M, Cj, G8, tr):
    n = C.shape[0]
    S = np.zeros((n, 27), np.int64)
    N = np.zeros(n, np.int64)
    p = np.zeros(8, np.int64)
    q = np.zeros(8, np.int64)
    nn = np.zeros(3, np.int64)
    for row in range(n):
        for s in range(3):
            acc = 0
            o = 3 + 8 * s
            for a in range(8):
                xa = C[row, o + a]
                if xa != 0:
                    for b in range(8):
                        acc += xa * G8[a, b] * C[row, o + b]
            nn[s] = acc // 2
        c1 = C[row, 0]
        c2 = C[row, 1]
        c3 = C[row, 2]
        S[row, 0] = c2 * c3 - nn[0]
        S[row, 1] = c3 * c1 - nn[1]
        S[row, 2] = c1 * c2 - nn[2]
        tri = 0
        for s in range(3):
            # slot s gets conj(x_{s+1} x_{s+2}) - c_s x_s
            oa = 3 + 8 * ((s + 1) % 3)
            ob = 3 + 8 * ((s + 2) % 3)
            for r in range(8):
                p[r] = 0
            for a in range(8):
                xa = C[row, oa + a]
                if xa != 0:
                    for b in range(8):
                        yb = C[row, ob + b]
                        if yb != 0:
                            for r in range(8):
                                p[r] += xa * yb * M[a, b, r]
            for r in range(8):
                acc = 0
                for a in range(8):
                    acc += Cj[r, a] * p[a]
                q[r] = acc
            o = 3 + 8 * s
            cs = C[row, s]
            for r in range(8):
                S[row, o + r] = q[r] - cs * C[row, o + r]
            if s == 0:
                # tr(x1 (x2 x3)) = tr(x1 * conj(q)*) ... use p = x2 x3 directly
                for a in range(8):
                    xa = C[row, 3 + a]
                    if xa != 0:
                        for b in range(8):
                            if p[b] != 0:
                                for r in range(8):
                                    tri += xa * p[b] * M[a, b, r] * tr[r]
        N[row] = c1 * c2 * c3 - c1 * nn[0] - c2 * nn[1] - c3 * nn[2] + tri
    return S, N


def sharp_norm_coords(C: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Lattice coordinates of iota(T^#) and N(T) for each row T of C."""
    C = np.ascontiguousarray(C, dtype=np.int64).reshape(-1, 27)
    return _sharp_norm_kernel(C, coxeter_mult_table(), coxeter_conj_matrix(),
                              coxeter_int_gram(), coxeter_trace_vector())


def _jelements(C: np.ndarray) -> list[JElement]:
    return [JElement.from_coords(row.tolist()) for row in C]


# --- Sp6 side ---------------------------------------------------------------

def sp6_rank_one_lifts(T0: SymMatrix3) -> list[JElement]:
    """Rank-one T in J_R with c1 = 1 projecting to T0."""
    return _jelements(sp6_lift_coords(T0))


def sp6_lift_coords(T0: SymMatrix3) -> np.ndarray:
    if T0.c1 != 1:
        raise ValueError("rank-one lifts are implemented for c1 = 1 only")
    if T0.c2 < 0 or T0.c3 < 0:
        return np.zeros((0, 27), np.int64)
    X3 = oct_shell(T0.c2, T0.t3).coords
    X2 = oct_shell(T0.c3, T0.t2).coords
    if not len(X3) or not len(X2):
        return np.zeros((0, 27), np.int64)
    M = coxeter_mult_table()
    # x1 = (x2 x3)*
    prod = np.einsum("ia,jb,abr->ijr", X2, X3, M).reshape(-1, 8)
    X1 = prod @ coxeter_conj_matrix().T
    keep = X1 @ coxeter_trace_vector() == T0.t1
    i2, i3 = np.divmod(np.nonzero(keep)[0], len(X3))
    C = np.zeros((len(i2), 27), np.int64)
    C[:, 0] = 1
    C[:, 1] = T0.c2
    C[:, 2] = T0.c3
    C[:, 3:11] = X1[keep]
    C[:, 11:19] = X2[i2]
    C[:, 19:27] = X3[i3]
    S, _ = sharp_norm_coords(C)
    if S.any():
        raise AssertionError("a constructed lift is not rank one")
    return _lex_sorted(C)


# --- G2 side: Omega sets ----------------------------------------------------

CHUNK = 1 << 17


def _check_frame(frame: str) -> str:
    f = str(frame).upper()
    if f not in ("I", "E"):
        raise ValueError(f"frame must be 'I' or 'E', got {frame!r}")
    return f


class OmegaSet:
    """Rank-one (1, T, T^#, N(T)) with pr_frame = cubic.

    The set is produced lazily in chunks of coordinate rows (T, iota(T^#),
    N(T)) in a fixed traversal order; some sets have tens of millions of
    members, so sums over them should use :meth:`chunks`.
    """

    def __init__(self, cubic: BinaryCubic, frame: str, chunk: int = CHUNK):
        cubic.require_monic()
        self.cubic = cubic
        self.frame = _check_frame(frame)
        self.chunk = chunk
        self._size: int | None = None
        self._full = None

    def __repr__(self):
        return f"OmegaSet(cubic=({self.cubic}), frame={self.frame!r})"

    def chunks(self) -> Iterator[tuple[np.ndarray, np.ndarray, np.ndarray]]:
        f = self.cubic
        yield from stream_omega(self.frame, f.b, f.c, {f.d}, self.chunk)

    def __len__(self) -> int:
        if self._size is None:
            self._size = sum(C.shape[0] for C, _, _ in self.chunks())
        return self._size

    def _materialize(self):
        if self._full is None:
            parts = list(self.chunks())
            if parts:
                self._full = tuple(np.concatenate(p) for p in zip(*parts))
            else:
                z = np.zeros((0, 27), np.int64)
                self._full = (z, z.copy(), np.zeros(0, np.int64))
            self._size = self._full[0].shape[0]
        return self._full

    @property
    def coords(self) -> np.ndarray:
        return self._materialize()[0]

    @property
    def sharps(self) -> np.ndarray:
        return self._materialize()[1]

    @property
    def norms(self) -> np.ndarray:
        return self._materialize()[2]

    def elements(self) -> Iterator[tuple[JElement, JElement, int]]:
        for C, S, N in self.chunks():
            for T, Ts, d in zip(C, S, N):
                yield JElement.from_coords(T.tolist()), JElement.from_coords(Ts.tolist()), int(d)


def omega_I(f: BinaryCubic) -> OmegaSet:
    return OmegaSet(f, "I")


def omega_E(f: BinaryCubic) -> OmegaSet:
    return OmegaSet(f, "E")


def stream_omega(frame: str, b: int, c: int, ds: Iterable[int] | None, chunk: int = CHUNK):
    """Yield (T, iota(T^#), N(T)) chunks over all rank-one (1, T, T^#, N(T))
    with b- and c-slots (b, c) and N(T) in ``ds`` (any N(T) if ds is None)."""
    frame = _check_frame(frame)
    if ds is not None:
        ds = set(ds)
        if not ds:
            return
    if b * b - 2 * c < 0:
        return
    raw = _raw_I(b, c, ds) if frame == "I" else _raw_E(b, c)
    for C in _rechunk(raw, chunk):
        S, N = sharp_norm_coords(C)
        if ds is None:
            yield C, S, N
            continue
        m = np.isin(N, np.array(sorted(ds), dtype=np.int64))
        if m.all():
            yield C, S, N
        elif m.any():
            yield C[m], S[m], N[m]


def _rechunk(parts: Iterable[np.ndarray], size: int) -> Iterator[np.ndarray]:
    buf, have = [], 0
    for p in parts:
        while p.shape[0]:
            take = min(size - have, p.shape[0])
            buf.append(p[:take])
            have += take
            p = p[take:]
            if have == size:
                yield np.concatenate(buf)
                buf, have = [], 0
    if have:
        yield np.concatenate(buf)


def _int_triples(total: int, s: int) -> list[tuple[int, int, int]]:
    """(u1, u2, u3) in Z^3 with sum of squares = total and sum = s."""
    r = int(total ** 0.5) + 1
    out = []
    for u1 in range(-r, r + 1):
        for u2 in range(-r, r + 1):
            u3 = s - u1 - u2
            if u1 * u1 + u2 * u2 + u3 * u3 == total:
                out.append((u1, u2, u3))
    return out


def _raw_I(b: int, c: int, ds: set[int] | None) -> Iterator[np.ndarray]:
    """(T, T)_I = sum u_i^2 + 2 sum n(v_i) splits the search by norm pattern.

    On a pattern, b = sum u_i and c = sum u_i u_j - sum n_i are fixed, and
    N(T) = u1 u2 u3 - sum u_i n_i + tr(v1 (v2 v3)); only the trilinear
    term needs the grid over octonion shells.
    """
    t = b * b - 2 * c
    Tr = coxeter_trilinear_tensor()
    for n1 in range(t // 2 + 1):
        for n2 in range(t // 2 + 1 - n1):
            for n3 in range(t // 2 + 1 - n1 - n2):
                rest = t - 2 * (n1 + n2 + n3)
                for u in _int_triples(rest, b):
                    u1, u2, u3 = u
                    if u1 * u2 + u2 * u3 + u3 * u1 - (n1 + n2 + n3) != c:
                        continue
                    base = u1 * u2 * u3 - u1 * n1 - u2 * n2 - u3 * n3
                    wanted = None if ds is None else {d - base for d in ds}
                    yield from _trilinear_hits(u, (n1, n2, n3), wanted, Tr)


def _trilinear_hits(u, ns, wanted: set[int] | None, Tr) -> Iterator[np.ndarray]:
    shells = [oct_shell(n).coords for n in ns]
    # tr(v1 v2 v3) is invariant under cyclic rotation; loop over the smallest shell
    k = min(range(3), key=lambda i: len(shells[i]))
    A, B, Cc = shells[k], shells[(k + 1) % 3], shells[(k + 2) % 3]
    want = None if wanted is None else np.array(sorted(wanted), dtype=np.int64)
    for va in A:
        if want is None:
            ib, ic = np.divmod(np.arange(len(B) * len(Cc)), len(Cc))
        else:
            Mv = np.einsum("a,abc->bc", va, Tr)
            vals = (B @ Mv) @ Cc.T
            ib, ic = np.nonzero(np.isin(vals, want))
        if not len(ib):
            continue
        rows = np.empty((len(ib), 27), np.int64)
        rows[:, 0:3] = u
        slots = [None, None, None]
        slots[k] = va
        slots[(k + 1) % 3] = B[ib]
        slots[(k + 2) % 3] = Cc[ic]
        rows[:, 3:11], rows[:, 11:19], rows[:, 19:27] = slots
        yield rows


_ADAPTED: list = []


def e_linear_form() -> np.ndarray:
    """l(T) = (T, E#) on lattice coordinates; equals (T, E)_E."""
    return gram_E() @ np.array([int(x.re) for x in J_E.coords()], dtype=np.int64)


def _adapted():
    if not _ADAPTED:
        W = adapted_basis(gram_E(), e_linear_form())
        GW = W.T @ gram_E() @ W
        with _SHELL_LOCK:
            if not _ADAPTED:
                _ADAPTED.append((W, GW))
    return _ADAPTED[0]


def _raw_E(b: int, c: int) -> Iterator[np.ndarray]:
    """All T with (T, T)_E = b^2 - 2c and (T, E#) = b.

    Since (T, T)_E = (T, E#)^2 - 2 (T#, E), the c-slot is then automatic.
    The search runs in a basis whose last coordinate is (T, E#), so it
    visits only that coset.
    """
    t = b * b - 2 * c
    W, GW = _adapted()
    for Z in iter_vectors(GW, t, t, top=(b, b), validate=False):
        yield Z @ W.T
