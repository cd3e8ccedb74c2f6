import random
from fractions import Fraction

import pytest

from g2fourier.defaults import NULL_SEEDS, PAIR_WORDS
from g2fourier.jordan import J_E, J_I, JElement, norm_J, pair_E, pair_I, sharp
from g2fourier.lie_ops import (
    ConsistencyError, LinOp, NotNilpotent, base_singular_pair, delta, delta_factors, delta_inv,
    exp_nilpotent, f4_generators, g2_nilpotents, in_V1, make_null_pair, make_singular_pair,
    phi_wedge, to_E_frame, word_operator,
)
from g2fourier.octonions import from_coords, oct_mul
from g2fourier.scalars import T


def _rand_J(rng, span=2):
    return JElement.from_coords([rng.randint(-span, span) for _ in range(27)])


def _rand_O(rng):
    return from_coords([rng.randint(-2, 2) for _ in range(8)])


def test_g2_nilpotents_are_derivations():
    rng = random.Random(7)
    for l in g2_nilpotents():
        for _ in range(3):
            x, y = _rand_O(rng), _rand_O(rng)
            assert l(oct_mul(x, y)) == oct_mul(l(x), y) + oct_mul(x, l(y))


def test_exponential_is_an_automorphism():
    rng = random.Random(8)
    n = g2_nilpotents()[0].scale(2) + g2_nilpotents()[3].scale(T)
    g = exp_nilpotent(n)
    x, y = _rand_O(rng), _rand_O(rng)
    assert g(oct_mul(x, y)) == oct_mul(g(x), g(y))
    assert g(x).norm() == x.norm()


def test_exp_rejects_non_nilpotent():
    with pytest.raises(NotNilpotent):
        exp_nilpotent(LinOp.identity("O"))


@pytest.mark.parametrize("seed", NULL_SEEDS)
def test_default_null_seeds(seed):
    assert make_null_pair(seed).check()


def test_null_pair_needs_six_scalars():
    with pytest.raises(ValueError):
        make_null_pair([1, 2, 3])


def test_f4_generators_preserve_the_norm_and_fix_identity():
    rng = random.Random(9)
    X = _rand_J(rng)
    for g in f4_generators():
        assert not g(J_I)
        assert pair_I(sharp(X), g(X)) == 0
        assert g.power(3).is_zero()


def test_delta_moves_E_to_I_isometrically():
    d, di = delta(), delta_inv()
    assert d(J_E) == J_I
    assert (d @ di) == LinOp.identity("J")
    rng = random.Random(10)
    X, Y = _rand_J(rng), _rand_J(rng)
    assert norm_J(d(X)) == norm_J(X)
    assert pair_I(d(X), d(Y)) == pair_E(X, Y)
    assert all(f.power(3).is_zero() for f in delta_factors())


def test_base_pair_spans_a_singular_plane():
    P = base_singular_pair()
    assert P.check() and P.swapped().check()
    assert not P.X.in_lattice()


@pytest.mark.parametrize("word", PAIR_WORDS)
def test_words_keep_pairs_in_V1(word):
    P = make_singular_pair(word)
    assert P.check()
    assert phi_wedge(P.X, P.Y).is_zero() and in_V1(P.Y, P.X)


def test_word_index_is_checked():
    with pytest.raises(IndexError):
        word_operator([(24, 1)])


def test_E_frame_pair_is_traceless_for_E():
    P = make_singular_pair([(0, 1), (11, Fraction(1, 2))])
    Q = to_E_frame(P)
    assert pair_E(Q.X, J_E) == 0 and pair_E(Q.Y, J_E) == 0
    assert delta()(Q.X) == P.X


def test_consistency_error_is_an_assertion():
    assert issubclass(ConsistencyError, AssertionError)
