import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from g2fourier.enumeration import (
    BinaryCubic, ShellCache, clear_shell_memo, oct_shell, omega_E, omega_I, qf_short_vectors,
    sharp_norm_coords, sp6_lift_coords, sp6_rank_one_lifts, stream_omega,
)
from g2fourier.jordan import JElement, SymMatrix3, gram_E, gram_I, norm_J, rank, sharp
from g2fourier.octonions import coxeter_trace_vector
from g2fourier.oracles import brute_force_shell
from g2fourier.theta import WElement, divisor_sigma, pr_E, pr_I

ints = st.integers(-6, 6)
cubics = st.builds(BinaryCubic, st.just(1), ints, ints, ints)


# --- binary cubics ---

def test_cubic_parse_and_str():
    f = BinaryCubic.parse(" 1, -2,0 ,3")
    assert f.as_tuple() == (1, -2, 0, 3) and str(f) == "1,-2,0,3"
    assert f.is_monic and f.target == 4


@pytest.mark.parametrize("text", ["1,2,3", "1,2,3,4,5", "1,a,2,3", ""])
def test_cubic_parse_errors(text):
    with pytest.raises(ValueError):
        BinaryCubic.parse(text)


def test_cubic_rejects_non_integers():
    with pytest.raises(TypeError):
        BinaryCubic(1, 0.5, 0, 0)
    with pytest.raises(ValueError):
        BinaryCubic(2, 0, 0, 0).require_monic()


@given(cubics, st.integers(-3, 3), st.integers(-3, 3), ints, ints)
def test_substitution(f, r, s, u, v):
    assert f.substitute(r)(u, v) == f(u + r * v, v)
    assert f.substitute(r).substitute(s) == f.substitute(r + s)
    assert f.substitute(r).substitute(-r) == f


# --- shells ---

@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_shell_sizes_and_oracle(n):
    shell = oct_shell(n)
    expected = 1 if n == 0 else 240 * divisor_sigma(3, n)
    assert len(shell) == expected
    assert np.array_equal(shell.coords, brute_force_shell(n))


def test_trace_filtered_shells_partition_the_shell():
    tr = coxeter_trace_vector()
    full = oct_shell(2)
    parts = [oct_shell(2, t) for t in range(-3, 4)]
    assert sum(len(p) for p in parts) == len(full)
    for t, p in zip(range(-3, 4), parts):
        assert (p.coords @ tr == t).all()
    assert len(oct_shell(2, 1)) == 576
    assert len(oct_shell(1, 5)) == 0


def test_shell_elements_have_the_right_norm():
    assert all(x.norm() == 1 for x in oct_shell(1, 1).elements)


def test_negative_shell_rejected():
    with pytest.raises(ValueError):
        oct_shell(-1)


def test_shell_cache_round_trip(tmp_path):
    path = tmp_path / "shells.json"
    before = oct_shell(2, 1).coords.copy()
    ShellCache(path).save()
    clear_shell_memo()
    assert ShellCache(path).load() >= 2
    assert np.array_equal(oct_shell(2, 1).coords, before)
    assert ShellCache(tmp_path / "missing.json").load() == 0


def test_shell_cache_fingerprint_and_version(tmp_path):
    path = tmp_path / "shells.json"
    oct_shell(1)
    ShellCache(path).save()
    doc = json.loads(path.read_text())
    doc["basis_fingerprint"] = "0" * 16
    path.write_text(json.dumps(doc))
    with pytest.raises(ValueError, match="fingerprint"):
        ShellCache(path).load()
    doc["version"] = 99
    path.write_text(json.dumps(doc))
    with pytest.raises(ValueError, match="version"):
        ShellCache(path).load()


# --- general quadratic forms ---

def _box_search(G, t, radius):
    n = len(G)
    X = np.stack(np.meshgrid(*[np.arange(-radius, radius + 1)] * n, indexing="ij"), -1).reshape(-1, n)
    out = X[np.einsum("ij,jk,ik->i", X, G, X) == t]
    return out[np.lexsort(out.T[::-1])]


@given(st.lists(st.lists(st.integers(-2, 2), min_size=4, max_size=4), min_size=4, max_size=4),
       st.integers(0, 20))
@settings(max_examples=60, deadline=None)
def test_qf_short_vectors_against_box(A, t):
    A = np.array(A, dtype=np.int64)
    G = A.T @ A + np.eye(4, dtype=np.int64)
    # x^T G x >= |x|^2, so every solution lies in the box of radius sqrt(t)
    assert np.array_equal(qf_short_vectors(G, t), _box_search(G, t, 4))


def test_qf_short_vectors_with_fractions():
    from fractions import Fraction
    G = [[Fraction(1), Fraction(1, 2)], [Fraction(1, 2), Fraction(1)]]
    got = qf_short_vectors(G, 1)
    assert len(got) == 6
    with pytest.raises(ValueError):
        qf_short_vectors([[1, 2], [0, 1]], 1)
    assert qf_short_vectors([[1]], -1).shape == (0, 1)


# --- integer sharp and norm ---

def test_integer_sharp_matches_exact():
    rng = np.random.default_rng(3)
    C = rng.integers(-2, 3, size=(25, 27))
    S, N = sharp_norm_coords(C)
    for row, s, n in zip(C, S, N):
        X = JElement.from_coords(row.tolist())
        assert JElement.from_coords(s.tolist()) == sharp(X)
        assert n == norm_J(X)


# --- Sp6 lifts ---

def _lift_oracle(T0):
    # every (x1, x2, x3) from trace-filtered shells, kept when T# = 0
    xs = [oct_shell(n, t).coords for n, t in ((T0.c2 * T0.c3, T0.t1), (T0.c3, T0.t2), (T0.c2, T0.t3))]
    rows = []
    for a, b, c in itertools.product(*xs):
        rows.append(np.concatenate([[1, T0.c2, T0.c3], a, b, c]))
    C = np.array(rows, dtype=np.int64)
    S, _ = sharp_norm_coords(C)
    C = C[~S.any(axis=1)]
    return C[np.lexsort(C.T[::-1])]


@pytest.mark.parametrize("T0", [SymMatrix3(1, 1, 1, 1, 1, 1), SymMatrix3(1, 1, 0, 0, 0, 1),
                                SymMatrix3(1, 0, 0, 0, 0, 0)])
def test_sp6_lifts_against_oracle(T0):
    got = sp6_lift_coords(T0)
    assert np.array_equal(got, _lift_oracle(T0))
    for X in sp6_rank_one_lifts(T0)[:20]:
        assert rank(X) == 1


def test_sp6_lift_count_at_all_ones():
    assert len(sp6_lift_coords(SymMatrix3(1, 1, 1, 1, 1, 1))) == 1512


def test_sp6_lifts_need_c1_one():
    with pytest.raises(ValueError):
        sp6_lift_coords(SymMatrix3(2, 1, 1, 0, 0, 0))
    assert sp6_lift_coords(SymMatrix3(1, -1, 1, 0, 0, 0)).shape == (0, 27)


# --- Omega sets ---

@pytest.mark.parametrize("frame,cubic", [
    ("I", BinaryCubic(1, 0, -1, 0)),
    ("I", BinaryCubic(1, 1, -1, -1)),
    ("E", BinaryCubic(1, 1, -1, -1)),
])
def test_omega_members(frame, cubic):
    om = omega_I(cubic) if frame == "I" else omega_E(cubic)
    G = gram_I() if frame == "I" else gram_E()
    pr = pr_I if frame == "I" else pr_E
    C = om.coords
    assert len(om) == len(C) > 0
    assert (np.einsum("ij,jk,ik->i", C, G, C) == cubic.target).all()
    for T, Ts, d in itertools.islice(om.elements(), 40):
        assert Ts == sharp(T) and d == norm_J(T)
        assert pr(WElement.rank_one(T)) == cubic


def test_omega_E_has_no_points_below_norm_three():
    assert len(omega_E(BinaryCubic(1, 0, -1, 0))) == 0
    assert len(omega_E(BinaryCubic(1, 0, 0, 0))) == 1


def test_omega_rejects_bad_input():
    with pytest.raises(ValueError):
        omega_I(BinaryCubic(2, 0, 0, 0))
    with pytest.raises(ValueError):
        list(stream_omega("X", 0, 0, None))
    assert list(stream_omega("I", 0, 1, None)) == []
    assert list(stream_omega("I", 0, -1, [])) == []


def test_stream_is_deterministic_and_chunked():
    a = [C for C, _, _ in stream_omega("I", 1, -2, {-1}, chunk=1000)]
    b = [C for C, _, _ in stream_omega("I", 1, -2, {-1}, chunk=1 << 17)]
    assert all(len(C) <= 1000 for C in a)
    assert np.array_equal(np.concatenate(a), np.concatenate(b))
