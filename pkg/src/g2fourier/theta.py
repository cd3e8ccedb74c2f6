"""Fourier coefficients of the Sp6 and G2 theta lifts.

Sp6 side: the coefficient at a half-integral T0 with c1 = 1 is a
bi-homogeneous polynomial in v1, v2, v3, w1, w2, w3 (:class:`PolyVW`).
G2 side: the coefficient at a monic binary cubic f is a scalar in K, the
sum of P_m over the Omega set of f in the I- or E-frame.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import factorial, gcd
from typing import Iterable, Mapping, Sequence

import numpy as np

from .enumeration import BinaryCubic, OmegaSet, sp6_lift_coords, stream_omega, CHUNK
from .jordan import (
    J_E, J_I, JElement, SymMatrix3, gram_E, gram_I, norm_J, pair_E, pair_I, pair_natural,
    sharp,
)
from .kmat import KArray
from .lie_ops import NullPair, SingularPair
from .octonions import (
    BETA, bilinear_O, coxeter_int_gram, to_coords, trilinear_O,
)
from .scalars import GaussRational, ZERO, format_scalar, parse_scalar, to_k

__all__ = [
    "divisor_sigma", "WElement", "pr_I", "pr_E", "PolyVW", "p_sp6", "sp6_fourier",
    "p_m", "g2_fourier", "g2_coefficients", "CoeffTable", "normalize_table",
    "weight_lambda", "sharp_pairing_closed_form", "e_slots_closed_form",
    "TABLE6_CUBICS", "TABLE6_VALUES",
]


def divisor_sigma(k: int, n: int) -> int:
    if n <= 0:
        raise ValueError("divisor_sigma needs n >= 1")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d ** k
            if d * d != n:
                total += (n // d) ** k
        d += 1
    return total


def weight_lambda(k1: int, k2: int) -> tuple[int, int, int]:
    if k1 < 0 or k2 < 0:
        raise ValueError("k1, k2 must be non-negative")
    return (k1 + 2 * k2 + 4, k1 + k2 + 4, k2 + 4)


# --- W_J ------------------------------------------------------------------

@dataclass(frozen=True)
class WElement:
    """(a, b, c, d) in W_J; c is stored as its iota-image in J."""
    a: int
    b: JElement
    c: JElement
    d: GaussRational

    @classmethod
    def rank_one(cls, T: JElement) -> "WElement":
        """(1, T, T^#, N(T))."""
        return cls(1, T, sharp(T), norm_J(T))


def _int_slot(x: GaussRational, what: str) -> int:
    if x.im or x.re.denominator != 1:
        raise ValueError(f"{what} slot {x} is not an integer; is T in J_R?")
    return int(x.re)


def _pr(w: WElement, U: JElement) -> BinaryCubic:
    Us = sharp(U)
    return BinaryCubic(w.a, _int_slot(pair_natural(Us, w.b), "b"),
                       _int_slot(pair_natural(w.c, U), "c"), _int_slot(to_k(w.d), "d"))


def pr_I(w: WElement) -> BinaryCubic:
    return _pr(w, J_I)


def pr_E(w: WElement) -> BinaryCubic:
    return _pr(w, J_E)


def sharp_pairing_closed_form(T: JElement, X: JElement) -> GaussRational:
    """(X, T^#) expanded in the coordinates of T and X, without forming T^#."""
    u1, u2, u3 = T.cs
    v1, v2, v3 = T.xs
    x0, x1, x2 = X.cs
    x3, x4, x5 = X.xs
    a1 = x0 * (u2 * u3 - v1.norm()) + x1 * (u3 * u1 - v2.norm()) + x2 * (u1 * u2 - v3.norm())
    a2 = u3 * bilinear_O(x5, v3) + u2 * bilinear_O(x4, v2) + u1 * bilinear_O(x3, v1)
    a3 = trilinear_O(x3, v2, v3) + trilinear_O(x4, v3, v1) + trilinear_O(x5, v1, v2)
    return a1 - a2 + a3


def e_slots_closed_form(T: JElement) -> tuple[GaussRational, GaussRational]:
    """((E#, T), (E, T^#)) expanded in the coordinates of T."""
    c1, c2, c3 = T.cs
    x1, v2, v3 = T.xs
    bs = BETA.conj()
    b_slot = (c1 + c2 + c3) * 2 + bilinear_O(bs, x1 + v2 + v3)
    c_slot = ((c1 * c2 + c2 * c3 + c3 * c1 - x1.norm() - v2.norm() - v3.norm()) * 2
              - bilinear_O(BETA, x1.scale(c1) + v2.scale(c2) + v3.scale(c3))
              + trilinear_O(BETA, v2, v3) + trilinear_O(BETA, v3, x1) + trilinear_O(BETA, x1, v2))
    return b_slot, c_slot


# --- polynomials in v, w ------------------------------------------------------

Exp = tuple[int, int, int, int, int, int]
_VARS = ("v1", "v2", "v3", "w1", "w2", "w3")


class PolyVW:
    """Bi-homogeneous polynomial of bi-degree (k1, k2) in v1..v3, w1..w3."""

    __slots__ = ("k1", "k2", "terms")

    def __init__(self, k1: int, k2: int, terms: Mapping[Exp, object] | None = None):
        self.k1, self.k2 = k1, k2
        self.terms: dict[Exp, GaussRational] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != 6 or min(e) < 0:
                raise ValueError(f"bad exponent {e}")
            if sum(e[:3]) != k1 or sum(e[3:]) != k2:
                raise ValueError(f"monomial {e} is not of bi-degree ({k1}, {k2})")
            c = to_k(c)
            if c:
                self.terms[e] = self.terms.get(e, ZERO) + c
                if not self.terms[e]:
                    del self.terms[e]

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, PolyVW):
            return NotImplemented
        if not self.terms and not other.terms:
            return True
        return (self.k1, self.k2) == (other.k1, other.k2) and self.terms == other.terms

    def __add__(self, other: "PolyVW") -> "PolyVW":
        if (self.k1, self.k2) != (other.k1, other.k2):
            raise ValueError("bi-degree mismatch")
        out = PolyVW(self.k1, self.k2, self.terms)
        for e, c in other.terms.items():
            v = out.terms.get(e, ZERO) + c
            if v:
                out.terms[e] = v
            else:
                out.terms.pop(e, None)
        return out

    def scale(self, s) -> "PolyVW":
        s = to_k(s)
        return PolyVW(self.k1, self.k2, {e: c * s for e, c in self.terms.items()})

    def monomials(self) -> list[Exp]:
        """Graded lex: v-exponents first, then w-exponents, both descending."""
        return sorted(self.terms, reverse=True)

    def items(self):
        return [(e, self.terms[e]) for e in self.monomials()]

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.items():
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(_VARS, e) if k)
            coef = f"({format_scalar(c)})"
            parts.append(f"{coef}*{mono}" if mono else coef)
        return " + ".join(parts)

    __repr__ = __str__

    _TERM = re.compile(r"^\((?P<c>[^()]*)\)(?P<m>(?:\*[vw][123](?:\^\d+)?)*)$")

    @classmethod
    def parse(cls, text: str, k1: int, k2: int) -> "PolyVW":
        text = text.strip()
        if text == "0":
            return cls(k1, k2)
        terms: dict[Exp, GaussRational] = {}
        for part in text.split(" + "):
            m = cls._TERM.match(part.strip())
            if m is None:
                raise ValueError(f"cannot parse term {part!r}")
            e = [0] * 6
            for tok in filter(None, m.group("m").split("*")):
                name, _, k = tok.partition("^")
                e[_VARS.index(name)] += int(k) if k else 1
            terms[tuple(e)] = terms.get(tuple(e), ZERO) + parse_scalar(m.group("c"))
        return cls(k1, k2, terms)

    def to_json(self) -> dict:
        return {"k1": self.k1, "k2": self.k2,
                "terms": [[list(e), format_scalar(c)] for e, c in self.items()]}

    @classmethod
    def from_json(cls, doc: Mapping) -> "PolyVW":
        return cls(doc["k1"], doc["k2"], {tuple(e): parse_scalar(c) for e, c in doc["terms"]})

    def coefficient_vector(self, basis: Sequence[Exp]) -> list[GaussRational]:
        return [self.terms.get(e, ZERO) for e in basis]


def _compositions(k: int) -> list[tuple[int, int, int]]:
    return [(a, b, k - a - b) for a in range(k, -1, -1) for b in range(k - a, -1, -1)]


def _multinomial(e: Sequence[int]) -> int:
    out = factorial(sum(e))
    for x in e:
        out //= factorial(x)
    return out


# Gaussian integers as numpy object arrays (re, im) of Python ints.

def _gmul(a, b):
    return a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0]


def _gpowers(a, k: int) -> list:
    one = (np.ones_like(a[0]), np.zeros_like(a[0]))
    out = [one]
    for _ in range(k):
        out.append(_gmul(out[-1], a))
    return out


def _octonion_pairing_rows(u) -> tuple[np.ndarray, np.ndarray, int]:
    """Integer (re, im) vectors g and scale s with (x, u) = (coords(x) . g) / s."""
    ku = KArray.from_scalars(to_coords(u, "coxeter"))
    G = coxeter_int_gram().astype(object)
    return G.dot(ku.re), G.dot(ku.im), ku.den


def _check_ks(k1: int, k2: int) -> None:
    if k1 < 0 or k2 < 0:
        raise ValueError("k1, k2 must be non-negative")
    if k1 == 0 and k2 == 0:
        raise ValueError("at least one of k1, k2 must be positive")


def _p_sp6_sum(C: np.ndarray, k1: int, k2: int, pair: NullPair) -> PolyVW:
    """Sum of P_{k1,k2}(T; u, v) over the rows T of C, via exact integer sums."""
    if C.shape[0] == 0:
        return PolyVW(k1, k2)
    ur, ui, su = _octonion_pairing_rows(pair.u)
    vr, vi, sv = _octonion_pairing_rows(pair.v)
    X = [C[:, 3 + 8 * s:11 + 8 * s].astype(object) for s in range(3)]
    xu = [(x.dot(ur), x.dot(ui)) for x in X]  # scaled by su
    xv = [(x.dot(vr), x.dot(vi)) for x in X]  # scaled by sv

    def wedge(i, j):
        p, q = _gmul(xu[i], xv[j]), _gmul(xv[i], xu[j])
        return p[0] - q[0], p[1] - q[1]  # scaled by su * sv

    # w1 <-> x2 ^ x3, w2 <-> x3 ^ x1, w3 <-> x1 ^ x2
    bw = [wedge(1, 2), wedge(2, 0), wedge(0, 1)]
    apow = [_gpowers(a, k1) for a in xu]
    bpow = [_gpowers(b, k2) for b in bw]
    scale = Fraction(1, su ** k1 * (su * sv) ** k2)
    terms = {}
    for e in _compositions(k1):
        ve = _gmul(_gmul(apow[0][e[0]], apow[1][e[1]]), apow[2][e[2]])
        ce = _multinomial(e)
        for f in _compositions(k2):
            wf = _gmul(_gmul(bpow[0][f[0]], bpow[1][f[1]]), bpow[2][f[2]])
            re_, im_ = _gmul(ve, wf)
            mult = ce * _multinomial(f)
            total = GaussRational(int(re_.sum()) * mult * scale, int(im_.sum()) * mult * scale)
            if total:
                terms[e + f] = total
    return PolyVW(k1, k2, terms)


def p_sp6(T: JElement, k1: int, k2: int, pair: NullPair) -> PolyVW:
    """P_{k1,k2}(T; u, v) for a single rank-one T in J_R; 0^0 = 1."""
    _check_ks(k1, k2)
    if not T.in_lattice():
        raise ValueError("T must lie in J_R")
    C = np.array([[int(c.re) for c in T.coords()]], dtype=np.int64)
    return _p_sp6_sum(C, k1, k2, pair)


def sp6_fourier(T0: SymMatrix3, k1: int, k2: int, pair: NullPair) -> PolyVW:
    """Sum of sigma_3(d_T) P_{k1,k2}(T; u, v) over rank-one lifts of T0."""
    _check_ks(k1, k2)
    C = sp6_lift_coords(T0)
    # c1 = 1 makes every lift primitive: d_T = 1
    assert divisor_sigma(3, 1) == 1
    return _p_sp6_sum(C, k1, k2, pair)


# --- G2 side ----------------------------------------------------------------

def p_m(frame: str, w: WElement, X: JElement, Y: JElement, m: int) -> GaussRational:
    """((b, X)_U (c, Y) - (b, Y)_U (c, X))^m with U = I or E by frame."""
    if m < 1:
        raise ValueError("m must be >= 1")
    pair_b = _frame_pairing(frame)
    base = pair_b(w.b, X) * pair_natural(w.c, Y) - pair_b(w.b, Y) * pair_natural(w.c, X)
    return base ** m


def _frame_pairing(frame: str):
    f = str(frame).upper()
    if f == "I":
        return pair_I
    if f == "E":
        return pair_E
    raise ValueError(f"frame must be 'I' or 'E', got {frame!r}")


def _frame_gram(frame: str) -> np.ndarray:
    return gram_I() if str(frame).upper() == "I" else gram_E()


class _PairVectors:
    """Integer data for evaluating the P_m base on coordinate chunks."""

    def __init__(self, frame: str, P: SingularPair):
        kx = KArray.from_scalars(P.X.coords())
        ky = KArray.from_scalars(P.Y.coords())
        GF = _frame_gram(frame).astype(object)
        GI = gram_I().astype(object)
        self.scale = kx.den * ky.den
        # lin: (T, .)_frame, nat: (T^#, .) natural
        self.vecs = [
            (GF.dot(kx.re), GF.dot(kx.im)), (GI.dot(ky.re), GI.dot(ky.im)),
            (GF.dot(ky.re), GF.dot(ky.im)), (GI.dot(kx.re), GI.dot(kx.im)),
        ]
        self.bound = max(int(max(abs(v) for v in a)) for pair in self.vecs for a in pair) or 1
        self.small = [(np.array(a, dtype=np.int64), np.array(b, dtype=np.int64))
                      for a, b in self.vecs] if self.bound < 1 << 40 else None

    def bases(self, C: np.ndarray, S: np.ndarray):
        """Gaussian-integer bases (re, im), scaled by self.scale."""
        rowmax = max(int(np.abs(C).sum(axis=1).max(initial=0)),
                     int(np.abs(S).sum(axis=1).max(initial=0)), 1)
        lin_bound = rowmax * self.bound
        if self.small is not None and 2 * (2 * lin_bound) ** 2 < 1 << 62:
            vecs, CC, SS = self.small, C, S
        else:
            vecs, CC, SS = self.vecs, C.astype(object), S.astype(object)
        (gx_r, gx_i), (ny_r, ny_i), (gy_r, gy_i), (nx_r, nx_i) = vecs
        lx = (CC @ gx_r, CC @ gx_i)
        ny = (SS @ ny_r, SS @ ny_i)
        ly = (CC @ gy_r, CC @ gy_i)
        nx = (SS @ nx_r, SS @ nx_i)
        p, q = _gmul(lx, ny), _gmul(ly, nx)
        return p[0] - q[0], p[1] - q[1]


def _gauss_pow(a: int, b: int, m: int) -> tuple[int, int]:
    rr, ri = 1, 0
    while m:
        if m & 1:
            rr, ri = rr * a - ri * b, rr * b + ri * a
        a, b = a * a - b * b, 2 * a * b
        m >>= 1
    return rr, ri


def _primes_below(limit: int, count: int) -> tuple[int, ...]:
    out = []
    n = limit - 1
    while len(out) < count:
        if n % 2 and all(n % q for q in range(3, int(n ** 0.5) + 1, 2)):
            out.append(n)
        n -= 1
    return tuple(out)


_PRIMES = _primes_below(1 << 31, 40)


def _power_sums_mod(re_, im_, m: int, p: int) -> tuple[int, int]:
    a, b = re_ % p, im_ % p
    rr = np.ones_like(a)
    ri = np.zeros_like(a)
    k = m
    while k:
        if k & 1:
            rr, ri = (rr * a - ri * b) % p, (rr * b + ri * a) % p
        a, b = (a * a - b * b) % p, (2 * a * b) % p
        k >>= 1
    return int(rr.sum() % p), int(ri.sum() % p)


def _crt(residues: Sequence[int], primes: Sequence[int]) -> int:
    x, mod = 0, 1
    for r, p in zip(residues, primes):
        t = ((r - x) * pow(mod, -1, p)) % p
        x += mod * t
        mod *= p
    return x - mod if x > mod // 2 else x


def _power_sums(re_, im_, ms: Sequence[int]) -> list[tuple[int, int]]:
    """Exact sum of (re + t im)^m over the entries, for each m.

    int64 inputs use residues modulo 31-bit primes and the Chinese
    remainder theorem, with enough primes to cover N * B^m where
    B = max(|re| + |im|); this bound caps every partial sum.
    """
    if re_.size == 0:
        return [(0, 0) for _ in ms]
    if re_.dtype == object:
        out = []
        for m in ms:
            sr = si = 0
            for a, b in zip(re_.tolist(), im_.tolist()):
                pr, pi = _gauss_pow(a, b, m)
                sr += pr
                si += pi
            out.append((sr, si))
        return out
    B = int((np.abs(re_) + np.abs(im_)).max())
    out = []
    for m in ms:
        bound = 2 * re_.size * B ** m + 1
        if bound < 1 << 62:
            rr, ri = re_.copy(), im_.copy()
            for _ in range(m - 1):
                rr, ri = rr * re_ - ri * im_, rr * im_ + ri * re_
            out.append((int(rr.sum()), int(ri.sum())))
            continue
        primes, mod = [], 1
        for p in _PRIMES:
            primes.append(p)
            mod *= p
            if mod > bound:
                break
        else:
            raise OverflowError("power sum exceeds the prime budget")
        res = [_power_sums_mod(re_, im_, m, p) for p in primes]
        out.append((_crt([r for r, _ in res], primes), _crt([i for _, i in res], primes)))
    return out


def g2_coefficients(frame: str, cubics: Iterable[BinaryCubic], ms: Sequence[int],
                    pairs: Sequence[SingularPair], chunk: int = CHUNK
                    ) -> dict[tuple[BinaryCubic, int, int], GaussRational]:
    """Coefficients keyed by (cubic, m, index into pairs), sharing one pass
    over each Omega set among all m and pairs.

    For frame E the pairs must already be in the E-frame (see to_E_frame).
    """
    frame = str(frame).upper()
    _frame_pairing(frame)
    cubics = list(dict.fromkeys(cubics))
    ms = list(ms)
    if any(m < 1 for m in ms):
        raise ValueError("m must be >= 1")
    for f in cubics:
        f.require_monic()
    pv = [_PairVectors(frame, P) for P in pairs]
    acc = {(f, m, j): (0, 0) for f in cubics for m in ms for j in range(len(pairs))}
    groups: dict[tuple[int, int], dict[int, BinaryCubic]] = {}
    for f in cubics:
        groups.setdefault((f.b, f.c), {})[f.d] = f
    for (b, c), by_d in groups.items():
        for C, S, N in stream_omega(frame, b, c, by_d, chunk):
            for d, f in by_d.items():
                sel = N == d
                if not sel.any():
                    continue
                Cd, Sd = (C, S) if sel.all() else (C[sel], S[sel])
                for j, v in enumerate(pv):
                    re_, im_ = v.bases(Cd, Sd)
                    for m, (sr, si) in zip(ms, _power_sums(re_, im_, ms)):
                        ar, ai = acc[(f, m, j)]
                        acc[(f, m, j)] = (ar + sr, ai + si)
    out = {}
    for (f, m, j), (sr, si) in acc.items():
        den = pv[j].scale ** m
        # monic cubic: d_w = 1, so sigma_4(d_w) = 1
        out[(f, m, j)] = GaussRational(Fraction(sr, den), Fraction(si, den)) * divisor_sigma(4, 1)
    return out


def g2_fourier(frame: str, f: BinaryCubic, m: int, P: SingularPair) -> GaussRational:
    """Coefficient of W_{f, 4+m} in Theta_frame(X, Y; m)."""
    f.require_monic()
    return g2_coefficients(frame, [f], [m], [P])[(f, m, 0)]


# --- tables -----------------------------------------------------------------

TABLE6_CUBICS = tuple(BinaryCubic(1, b, c, d) for b, c, d in (
    (0, -3, -1), (0, -3, 0), (0, -2, -1), (0, -2, 0), (0, -1, 0), (1, -3, -3),
    (1, -3, -2), (1, -3, -1), (1, -3, 0), (1, -2, -2), (1, -2, -1), (1, -2, 0),
))
TABLE6_VALUES = (48600, 1620, 15, 1680, -7, -10080, 25575, 28800, -1485, -30, 12600, -63)


@dataclass
class CoeffTable:
    rows: list[tuple[BinaryCubic, GaussRational]]
    weight: int
    frame: str
    pair: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        keys = [f for f, _ in self.rows]
        if len(set(keys)) != len(keys):
            raise ValueError("table rows must have distinct cubics")
        self.rows = [(f, to_k(v)) for f, v in self.rows]

    def values(self) -> list[GaussRational]:
        return [v for _, v in self.rows]

    def is_zero(self) -> bool:
        return not any(self.values())


def _gauss_divmod_round(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    """Nearest Gaussian integer to a / b."""
    n = b[0] * b[0] + b[1] * b[1]
    re_ = a[0] * b[0] + a[1] * b[1]
    im_ = a[1] * b[0] - a[0] * b[1]

    def rnd(x):
        return (2 * x + n) // (2 * n)

    return rnd(re_), rnd(im_)


def gauss_gcd(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    while b != (0, 0):
        q = _gauss_divmod_round(a, b)
        p = _gmul(q, b)
        a, b = b, (a[0] - p[0], a[1] - p[1])
    return a


def _canonical_unit(z: tuple[int, int]) -> tuple[int, int]:
    """The unit u making u z lie in re > 0, im >= 0."""
    for u in ((1, 0), (0, 1), (-1, 0), (0, -1)):
        w = _gmul(u, z)
        if w[0] > 0 and w[1] >= 0:
            return u
    raise ValueError("zero has no canonical associate")


def normalize_table(t: CoeffTable) -> CoeffTable:
    """Divide by the Gaussian-integer content and fix the unit so that the
    first nonzero entry has positive real part (and non-negative imaginary part)."""
    vals = t.values()
    if not any(vals):
        raise ValueError("cannot normalize an all-zero table")
    den = 1
    for v in vals:
        d = v.denominator()
        den = den * d // gcd(den, d)
    ints = [(int(v.re * den), int(v.im * den)) for v in vals]
    g = (0, 0)
    for z in ints:
        g = gauss_gcd(z, g) if g != (0, 0) else z
    first = next(z for z in ints if z != (0, 0))
    out = []
    for z in ints:
        q = _gauss_divmod_round(z, g)
        assert _gmul(q, g) == z
        out.append(q)
    u = _canonical_unit(next(z for z in out if z != (0, 0)))
    out = [_gmul(u, z) for z in out]
    rows = [(f, GaussRational(a, b)) for (f, _), (a, b) in zip(t.rows, out)]
    return CoeffTable(rows, t.weight, t.frame, t.pair, dict(t.meta))
