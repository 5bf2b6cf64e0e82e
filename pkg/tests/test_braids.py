import pytest
from hypothesis import given
from hypothesis import strategies as st

from modules.braids import (
    BraidWord,
    compose_exponent,
    compose_identity_check,
    conjugation_equivariance_check,
    free_reduce,
    markov_check,
    parse_letters,
    rho_endo,
    torus_knot_action,
    torus_word,
    writhe,
)


@st.composite
def braids(draw, strands=4):
    letters = draw(st.lists(st.integers(1, strands - 1).flatmap(lambda i: st.sampled_from([i, -i])), max_size=10))
    return BraidWord(strands, tuple(letters), draw(st.integers(-2, 2)))


def test_parse_letters():
    assert parse_letters("s1 s2^-1 s1^2") == (1, -2, 1, 1)
    assert parse_letters("1,-2") == (1, -2)
    assert parse_letters("s2^{-2}") == (-2, -2)
    with pytest.raises(ValueError):
        parse_letters("t1")
    with pytest.raises(ValueError):
        parse_letters("0")


def test_words_are_checked_against_the_strand_count():
    with pytest.raises(ValueError):
        BraidWord.parse(3, "s3")
    with pytest.raises(ValueError):
        BraidWord(1)


def test_writhe_counts_the_full_twist():
    assert writhe(BraidWord.parse(3, "s1 s2^-1 s1")) == 1
    assert writhe(BraidWord.twist(3)) == 6
    assert BraidWord.twist(3).expand() == (1, 2) * 3


@given(braids(), braids())
def test_writhe_is_a_homomorphism(a, b):
    assert writhe(a * b) == writhe(a) + writhe(b)
    assert writhe(a.inverse()) == -writhe(a)
    assert free_reduce((a * a.inverse()).expand()) == ()


def test_composition_exponent():
    assert compose_exponent(3, 1, 1) == 8
    gamma = BraidWord.parse(3, "s1 s2")
    assert rho_endo(rho_endo(gamma, 1), 1).center_exp == 8 * writhe(gamma)


@given(braids(), st.integers(-3, 3), st.integers(-3, 3))
def test_composition_identity(gamma, n1, n2):
    assert compose_identity_check(gamma, n1, n2)


@given(braids(), braids(), st.integers(-3, 3))
def test_conjugation_equivariance(alpha, gamma, m):
    assert conjugation_equivariance_check(alpha, gamma, m)


@pytest.mark.parametrize("a,b,m,expected", [(2, 3, 1, 9), (3, 1, 1, 7), (2, 1, 2, 5), (3, 2, -1, -10)])
def test_torus_knots(a, b, m, expected):
    result = torus_knot_action(a, b, m)
    assert result.b_prime == expected
    assert result.word_verified
    assert result.to_dict()["b_prime"] == expected


def test_torus_knot_arguments():
    with pytest.raises(ValueError):
        torus_knot_action(1, 3, 1)
    assert torus_word(2, -2).letters == (-1, -1)


@given(braids(3), st.integers(-2, 2))
def test_markov_stabilization_is_off_by_m_twists(gamma, m):
    report = markov_check(gamma, m)
    assert report.holds
    assert report.twist_offset == m
    assert report.image.strands == 4


def test_dict_roundtrip():
    gamma = BraidWord.parse(4, "s1 s3^-1", 2)
    assert BraidWord.from_dict(gamma.to_dict()) == gamma
