"""Invariant suites behind ``g2fourier selftest`` (also reused by the tests)."""
from __future__ import annotations

import random
from dataclasses import dataclass
from math import isqrt

import numpy as np

from .enumeration import oct_shell, stream_omega
from .jordan import J_E, J_I, JElement, cross, norm_J, pair_I, sharp, trilinear_J
from .lie_ops import (
    base_singular_pair, delta, delta_factors, f4_generators, make_null_pair,
    make_singular_pair,
)
from .octonions import from_coords, oct_mul
from .oracles import brute_force_omega, brute_force_shell, row_fingerprint
from .scalars import T
from .theta import divisor_sigma


@dataclass
class SuiteResult:
    name: str
    passed: bool
    detail: str


def random_order_element(rng: random.Random, span: int = 2):
    return from_coords([rng.randint(-span, span) for _ in range(8)])


def random_lattice_J(rng: random.Random, span: int = 2) -> JElement:
    return JElement.from_coords([rng.randint(-span, span) for _ in range(27)])


def random_word(rng: random.Random, length: int = 3):
    coeffs = [1, -1, 2, T, -T]
    return [(rng.randrange(24), rng.choice(coeffs)) for _ in range(length)]


def random_null_seed(rng: random.Random):
    return [rng.choice([0, 0, 1, -1, 2, T]) for _ in range(6)]


def check_composition_norm(count: int = 1000, seed: int = 1) -> SuiteResult:
    rng = random.Random(seed)
    bad = 0
    for _ in range(count):
        x, y = random_order_element(rng), random_order_element(rng)
        if oct_mul(x, y).norm() != x.norm() * y.norm():
            bad += 1
    return SuiteResult("composition norm", bad == 0, f"{count - bad}/{count} pairs")


def check_adjoint_identity(count: int = 200, seed: int = 2) -> SuiteResult:
    rng = random.Random(seed)
    bad = 0
    for _ in range(count):
        X = random_lattice_J(rng)
        if sharp(sharp(X)) != X.scale(norm_J(X)):
            bad += 1
    return SuiteResult("adjoint identity", bad == 0, f"{count - bad}/{count} points")


def check_trilinear(count: int = 50, seed: int = 3) -> SuiteResult:
    rng = random.Random(seed)
    bad = 0
    for _ in range(count):
        X, Y, Z = (random_lattice_J(rng, 1) for _ in range(3))
        if pair_I(Z, cross(X, Y)) != trilinear_J(X, Y, Z):
            bad += 1
    return SuiteResult("(Z, X x Y) = (X, Y, Z)", bad == 0, f"{count - bad}/{count} triples")


def check_delta() -> SuiteResult:
    d = delta()
    ok = d(J_E) == J_I and norm_J(d(J_E)) == 1
    return SuiteResult("delta E = I", ok, "exact")


def check_cubes() -> SuiteResult:
    ops = list(delta_factors()) + list(f4_generators())
    bad = [i for i, op in enumerate(ops) if not op.power(3).is_zero()]
    kill = all(not g(J_I) for g in f4_generators())
    return SuiteResult("nilpotent cubes", not bad and kill,
                       f"{len(ops) - len(bad)}/{len(ops)} operators cube to zero; generators kill I: {kill}")


def check_null_pairs(count: int = 50, seed: int = 4) -> SuiteResult:
    rng = random.Random(seed)
    bad = 0
    for _ in range(count):
        try:
            ok = make_null_pair(random_null_seed(rng)).check()
        except AssertionError:
            ok = False
        bad += not ok
    return SuiteResult("null pairs", bad == 0, f"{count - bad}/{count} seeds")


def check_singular_pairs(count: int = 20, seed: int = 5) -> SuiteResult:
    rng = random.Random(seed)
    bad = 0 if base_singular_pair().check() else 1
    for _ in range(count):
        try:
            ok = make_singular_pair(random_word(rng)).check()
        except AssertionError:
            ok = False
        bad += not ok
    return SuiteResult("singular pairs in V1", bad == 0, f"{count + 1 - bad}/{count + 1} pairs")


def check_shells(max_n: int = 4) -> SuiteResult:
    details, ok = [], True
    for n in range(1, max_n + 1):
        mine = oct_shell(n).coords
        ref = brute_force_shell(n)
        good = np.array_equal(mine, ref) and len(mine) == 240 * divisor_sigma(3, n)
        ok &= good
        details.append(f"n={n}:{len(mine)}")
    return SuiteResult("octonion shells", ok, " ".join(details))


def compare_omega(frame: str, t: int) -> tuple[bool, str]:
    """Engine vs oracle over every (b, c, d) with b^2 - 2c = t."""
    oracle: dict[tuple[int, int, int], list] = {}
    for B, C2, N, rows in brute_force_omega(frame, t):
        keys = np.stack([B, C2, N], axis=1)
        fp = row_fingerprint(rows)
        for key in np.unique(keys, axis=0):
            sel = (keys == key).all(axis=1)
            oracle.setdefault(tuple(int(x) for x in key), []).append(fp[sel])
    engine: dict[tuple[int, int, int], list] = {}
    # (T, U#) = (T, U)_U with (U, U)_U = 3, so |b| <= sqrt(3t); b = t mod 2
    bmax = isqrt(3 * t)
    for b in range(-bmax, bmax + 1):
        if (b - t) % 2:
            continue
        c = (b * b - t) // 2
        for C, S, N in stream_omega(frame, b, c, None):
            fp = row_fingerprint(C)
            for d in np.unique(N):
                engine.setdefault((b, c, int(d)), []).append(fp[N == d])

    def canon(parts):
        a = np.concatenate(parts)
        return a[np.lexsort(a.T[::-1])]

    if oracle.keys() != engine.keys():
        return False, f"t={t}: key sets differ ({len(oracle)} vs {len(engine)})"
    for k in oracle:
        if not np.array_equal(canon(oracle[k]), canon(engine[k])):
            return False, f"t={t}: sets differ at (b, c, d) = {k}"
    total = sum(sum(len(p) for p in v) for v in oracle.values())
    return True, f"t={t}: {len(oracle)} cubics, {total} points"


def check_omega(frame: str, max_t: int) -> SuiteResult:
    details, ok = [], True
    for t in range(max_t + 1):
        good, msg = compare_omega(frame, t)
        ok &= good
        details.append(msg)
    return SuiteResult(f"omega_{frame} vs brute force", ok, "; ".join(details))


def run_all(quick: bool = False) -> list[SuiteResult]:
    n = 10 if quick else 1
    return [
        check_composition_norm(1000 // n),
        check_adjoint_identity(200 // n),
        check_trilinear(50 // n),
        check_delta(),
        check_cubes(),
        check_null_pairs(50 // n),
        check_singular_pairs(20 // n),
        check_shells(2 if quick else 4),
        check_omega("I", 3 if quick else 4),
        check_omega("E", 3 if quick else 4),
    ]
