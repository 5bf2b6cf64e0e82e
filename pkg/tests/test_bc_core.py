from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from modules.bc_core import (
    BCElement,
    BCMonomial,
    QZElt,
    bc_mul,
    check_level,
    e_operator,
    galois_matrix,
    idempotent_e,
    integral_rho_tilde,
    pi_mu_tilde,
    pi_rho,
    qz_galois,
    qz_rho,
    qz_sigma,
)
from modules.cyclotomic import CycInt, RootOfUnity
from modules.errors import DenominatorMismatch, InvalidGaloisElement, NonIntegralInput
from modules.habiro import reduce, sigma_n

DENOMINATORS = [1, 2, 3, 4, 6]


@st.composite
def qz_elements(draw, max_terms=3):
    items = []
    for _ in range(draw(st.integers(1, max_terms))):
        b = draw(st.sampled_from(DENOMINATORS))
        a = draw(st.integers(0, b - 1))
        c = Fraction(draw(st.integers(-4, 4)), draw(st.integers(1, 3)))
        items.append((Fraction(a, b), c))
    return QZElt.from_map(items)


@st.composite
def monomials(draw):
    left = draw(st.integers(1, 6))
    right = draw(st.integers(1, 6))
    return BCElement.from_monomials([BCMonomial(left, draw(qz_elements(2)), right)])


def _level(*elements):
    level = 1
    for u in elements:
        for d in u.denominators():
            level = level * d // gcd(level, d)
    return level


def test_generator_labels_live_in_q_mod_z():
    assert QZElt.e(Fraction(5, 4)) == QZElt.e(Fraction(1, 4))
    assert QZElt.e(Fraction(1, 3)) * QZElt.e(Fraction(2, 3)) == QZElt.one()
    assert (QZElt.e(0) - QZElt.e(0)).is_zero()


@given(qz_elements(), st.integers(1, 12))
def test_sigma_rho_relations(a, n):
    e_n = idempotent_e(n)
    assert qz_sigma(qz_rho(a, n), n) == a
    assert qz_rho(qz_sigma(a, n), n) == e_n * a
    assert e_n * e_n == e_n


def test_idempotent_is_an_average_of_roots():
    assert idempotent_e(2) == QZElt.from_map([(0, Fraction(1, 2)), (Fraction(1, 2), Fraction(1, 2))])


def test_isometry_relations():
    for n in range(1, 7):
        assert bc_mul(BCElement.mu_star(n), BCElement.mu(n)) == BCElement.one()
        assert bc_mul(BCElement.mu(n), BCElement.mu_star(n)) == BCElement.from_qz(idempotent_e(n))
    assert bc_mul(BCElement.mu(2), BCElement.mu(3)) == BCElement.mu(6)


@given(qz_elements(), st.integers(1, 6))
def test_conjugation_by_isometries(x, n):
    mu, mu_star, xe = BCElement.mu(n), BCElement.mu_star(n), BCElement.from_qz(x)
    assert bc_mul(bc_mul(mu_star, xe), mu) == BCElement.from_qz(qz_sigma(x, n))
    assert bc_mul(bc_mul(mu, xe), mu_star) == BCElement.from_qz(qz_rho(x, n))


@given(monomials(), monomials(), monomials())
def test_product_is_associative(u, v, w):
    assert bc_mul(bc_mul(u, v), w) == bc_mul(u, bc_mul(v, w))


@given(monomials(), monomials())
def test_star_reverses_products(u, v):
    assert bc_mul(u, v).star() == bc_mul(v.star(), u.star())


@given(monomials(), monomials())
def test_representation_respects_products(u, v):
    uv = bc_mul(u, v)
    level = _level(u, v, uv)
    product = pi_rho(u, 1, level, 36) @ pi_rho(v, 1, level, 36)
    direct = pi_rho(uv, 1, level, 36)
    assert product.agrees_with(direct, product.valid & direct.valid)


def test_representation_of_basic_operators():
    half = pi_rho(BCElement.from_qz(QZElt.e(Fraction(1, 2))), 1, 2, 4)
    assert [half.entries[(k, k)] for k in range(1, 5)] == [CycInt.from_int(s, 2) for s in (-1, 1, -1, 1)]
    shift = pi_rho(BCElement.mu(2), 1, 1, 4)
    assert set(shift.entries) == {(2, 1), (4, 2)}
    assert shift.valid == frozenset({1, 2})


def test_representation_needs_a_unit_and_a_compatible_level():
    u = BCElement.from_qz(QZElt.e(Fraction(1, 3)))
    with pytest.raises(InvalidGaloisElement):
        pi_rho(u, 3, 3, 4)
    with pytest.raises(DenominatorMismatch):
        pi_rho(u, 1, 4, 4)


def test_integral_model():
    tilde = integral_rho_tilde(QZElt.one(), 3)
    assert tilde.is_integral()
    assert tilde == QZElt.from_map([(0, 1), (Fraction(1, 3), 1), (Fraction(2, 3), 1)])
    with pytest.raises(NonIntegralInput):
        integral_rho_tilde(QZElt.e(0, Fraction(1, 2)), 2)
    isometry = pi_mu_tilde(2, 1, 6)
    assert isometry.entries[(2, 1)] == 2
    assert isometry.valid == frozenset({1, 2, 3})


def test_galois_symmetry():
    x = QZElt.e(Fraction(1, 5))
    assert qz_galois(x, 2, 5) == QZElt.e(Fraction(2, 5))
    with pytest.raises(InvalidGaloisElement):
        qz_galois(x, 5, 5)
    check_level(x, 10)
    with pytest.raises(DenominatorMismatch):
        check_level(x, 4)


def test_galois_action_on_represented_elements():
    x = BCElement.from_qz(QZElt.e(Fraction(1, 5)))
    A = pi_rho(x, 1, 5, 6)
    assert galois_matrix(2, A).agrees_with(pi_rho(x, 2, 5, 6))


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=10), st.integers(1, 12), st.integers(1, 6))
def test_e_operator_intertwines_sigma(coeffs, order, n):
    f = reduce(coeffs, 12)
    zeta = RootOfUnity.of(1, order)
    assert e_operator(zeta**n, f, 24).agrees_with(e_operator(zeta, sigma_n(f, n), 24))
