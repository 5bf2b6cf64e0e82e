import cmath
import functools
import operator
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import Poly, ZZ, divisors

from modules.cyclotomic import (
    CycInt,
    RootOfUnity,
    complex_embed,
    cyclotomic_poly,
    eval_poly,
    galois_act,
    phi,
    root_power,
    x,
)
from modules.errors import InvalidGaloisElement

coeff_lists = st.lists(st.integers(-20, 20), min_size=1, max_size=12)


@st.composite
def roots(draw, max_order=24):
    b = draw(st.integers(1, max_order))
    a = draw(st.integers(0, b - 1))
    return RootOfUnity.of(a, b)


@pytest.mark.parametrize("m", range(1, 61))
def test_cyclotomic_polys_multiply_to_x_power_minus_one(m):
    product = functools.reduce(operator.mul, (cyclotomic_poly(d) for d in divisors(m)))
    assert product == Poly(x**m - 1, x, domain=ZZ)
    assert cyclotomic_poly(m).degree() == phi(m)


def test_small_cyclotomic_polys():
    assert cyclotomic_poly(1) == Poly(x - 1, x, domain=ZZ)
    assert cyclotomic_poly(4) == Poly(x**2 + 1, x, domain=ZZ)
    assert cyclotomic_poly(6) == Poly(x**2 - x + 1, x, domain=ZZ)


def test_root_of_unity_reduces_mod_one():
    assert RootOfUnity.of(5, 4) == RootOfUnity(1, 4)
    assert RootOfUnity.of(-1, 3) == RootOfUnity(2, 3)
    assert RootOfUnity.parse("2/4") == RootOfUnity(1, 2)
    assert RootOfUnity.of(1, 6) ** 3 == RootOfUnity(1, 2)
    assert RootOfUnity.of(1, 6).order == 6
    assert RootOfUnity.of(1, 2) * RootOfUnity.of(1, 2) == RootOfUnity(0, 1)


@pytest.mark.parametrize("bad", [(2, 4), (4, 4), (-1, 3)])
def test_root_of_unity_rejects_unreduced_fractions(bad):
    with pytest.raises(ValueError):
        RootOfUnity(*bad)


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        RootOfUnity.parse("one half")


@given(coeff_lists, coeff_lists, roots())
def test_evaluation_is_a_ring_homomorphism(p, q, zeta):
    product = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            product[i + j] += a * b
    total = [a + b for a, b in zip(p + [0] * len(q), q + [0] * len(p))]
    ep, eq = eval_poly(p, zeta), eval_poly(q, zeta)
    assert eval_poly(product, zeta) == ep * eq
    assert eval_poly(total, zeta) == ep + eq


def test_evaluation_at_primitive_fourth_root():
    i = RootOfUnity.of(1, 4)
    # 1 + q^2 vanishes at i
    assert eval_poly([1, 0, 1], i).is_zero()
    assert eval_poly([0, 1], i) == CycInt(4, (0, 1))


@given(coeff_lists, roots())
def test_exact_value_matches_complex_embedding(p, zeta):
    value = complex_embed(eval_poly(p, zeta))
    expected = sum(c * cmath.exp(2j * cmath.pi * j * zeta.fraction) for j, c in enumerate(p))
    assert abs(value - expected) < 1e-8 * (1 + sum(abs(c) for c in p))


def test_embedding_preserves_arithmetic():
    a = CycInt.from_poly([1, 2], 3)
    b = CycInt.from_poly([0, 1], 4)
    assert (a * b).order == 12
    assert a.embed(6) * 2 == a + a
    assert CycInt.x_power(3, 6) == -1


def test_galois_action():
    z = CycInt.x_power(1, 5)
    assert galois_act(2, z) == CycInt.x_power(2, 5)
    with pytest.raises(InvalidGaloisElement):
        galois_act(2, CycInt.x_power(1, 4))


def test_cycint_dict_roundtrip_keeps_integer_strings():
    z = CycInt.from_poly([3, -7], 5)
    data = z.to_dict()
    assert data == {"order": 5, "coeffs": ["3", "-7", "0", "0"]}
    assert CycInt.from_dict(data) == z


def test_from_fraction_accepts_fractions():
    assert RootOfUnity.from_fraction(Fraction(7, 3)) == RootOfUnity(1, 3)


def test_root_power_reduces_the_exponent():
    assert root_power(RootOfUnity.of(1, 6), 4) == RootOfUnity.of(2, 3)
    assert root_power(RootOfUnity.of(5, 12), 12) == RootOfUnity.of(0, 1)
    assert root_power(RootOfUnity.of(1, 4), -1) == RootOfUnity.of(3, 4)
