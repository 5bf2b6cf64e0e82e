from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from modules.cyclotomic import CycInt, RootOfUnity
from modules.errors import NotInRange, OrderExceedsLevel, OrderTimesDepthExceedsLevel
from modules.habiro import (
    FracHabiroElt,
    HabiroElt,
    cyclotomic_factorization_check,
    eta_n,
    ev,
    factorial_ideal_check,
    frac_act,
    frac_common_scale,
    frac_eq,
    habiro_degree,
    pochhammer,
    project,
    q_inverse,
    reduce,
    sigma_is_injective,
    sigma_n,
    taylor,
    taylor_product,
)

coeff_lists = st.lists(st.integers(-9, 9), min_size=1, max_size=16)


@st.composite
def element_and_root(draw, max_level=8):
    level = draw(st.integers(1, max_level))
    order = draw(st.integers(1, level))
    numerator = draw(st.sampled_from([a for a in range(order) if _coprime(a, order)]))
    return reduce(draw(coeff_lists), level), RootOfUnity(numerator, order)


def _coprime(a, b):
    while b:
        a, b = b, a % b
    return a == 1


def test_evaluating_q_at_a_fourth_root():
    value = ev(HabiroElt.q(4), RootOfUnity.of(1, 4))
    assert value.to_dict() == {"order": 4, "coeffs": ["0", "1"]}


def test_pochhammer_reduces_to_zero():
    for N in range(1, 8):
        assert reduce(pochhammer(N), N).is_zero()
        assert len(reduce([1], N).coeffs) == habiro_degree(N)


def test_parse_and_arithmetic():
    f = HabiroElt.parse("1 - q", 3)
    g = HabiroElt.parse("q^2 + 2", 3)
    assert f + g == reduce([3, -1, 1], 3)
    assert f * g == reduce([2, -2, 1, -1], 3)
    assert (f - f).is_zero()
    assert f**3 == f * f * f


def test_mixed_levels_project_to_the_smaller_level():
    f = reduce([1, 2, 3], 5)
    g = reduce([0, 1], 3)
    assert (f + g).level == 3
    assert (f * g).level == 3


def test_q_inverse():
    for N in range(1, 7):
        assert (q_inverse(N) * HabiroElt.q(N)) == HabiroElt.from_int(1, N)


@given(element_and_root(), st.integers(1, 6))
def test_sigma_is_compatible_with_evaluation(pair, n):
    f, zeta = pair
    assert ev(sigma_n(f, n), zeta) == ev(f, zeta**n)


@given(element_and_root(), st.data())
def test_projection_preserves_evaluation(pair, data):
    f, zeta = pair
    K = data.draw(st.integers(zeta.order, f.level))
    assert ev(project(f, K), zeta) == ev(f, zeta)


@given(coeff_lists, coeff_lists, st.integers(2, 8), st.data())
def test_taylor_map_is_multiplicative(p, q, level, data):
    f, g = reduce(p, level), reduce(q, level)
    order = data.draw(st.integers(1, level - 1))
    zeta = RootOfUnity.of(1, order)
    depth = (level - 1) // order
    tf, tg = taylor(f, zeta, depth), taylor(g, zeta, depth)
    assert tf[0] == ev(f, zeta)
    assert taylor(f * g, zeta, depth) == taylor_product(tf, tg, depth)


def test_taylor_expansion_at_one():
    coeffs = taylor(reduce([0, 0, 1], 4), RootOfUnity.of(0, 1), 3)
    assert coeffs == [CycInt.from_int(1), CycInt.from_int(2), CycInt.from_int(1)]


def test_range_errors():
    with pytest.raises(OrderExceedsLevel):
        ev(HabiroElt.q(3), RootOfUnity.of(1, 4))
    with pytest.raises(OrderTimesDepthExceedsLevel):
        taylor(HabiroElt.q(4), RootOfUnity.of(1, 2), 2)
    with pytest.raises(ValueError):
        project(HabiroElt.q(2), 3)


@given(coeff_lists, st.integers(1, 4), st.integers(1, 4))
def test_eta_inverts_sigma(p, n, K):
    f = reduce(p, 4)
    image = sigma_n(f, n)
    h = eta_n(image, n, K)
    assert h.level == K
    assert sigma_n(h, n) == project(image, K)


def test_eta_detects_elements_outside_the_image():
    # sigma_2 images take the same value at 1 and -1; q does not
    with pytest.raises(NotInRange):
        eta_n(HabiroElt.q(2), 2, 2)


def test_sigma_injectivity():
    assert sigma_is_injective(1, 4)
    assert not sigma_is_injective(2, 2)


@pytest.mark.parametrize("N", range(1, 7))
def test_pochhammer_factors_into_cyclotomic_powers(N):
    assert cyclotomic_factorization_check(N)


def test_factorial_power_lies_in_the_ideal():
    assert factorial_ideal_check(3)


def test_fractional_powers_compare_through_a_common_scale():
    f = reduce([1, 1, 2], 4)
    x = FracHabiroElt(f, Fraction(1, 2))
    assert frac_eq(frac_act(x, 2), FracHabiroElt(f, 1), 4)
    assert frac_eq(frac_act(FracHabiroElt(f, 1), 3), FracHabiroElt(sigma_n(f, 3), 1), 4)
    assert not frac_eq(x, FracHabiroElt(f, 1), 4)
    assert frac_common_scale(x, FracHabiroElt(f, Fraction(1, 3))) == (6, sigma_n(f, 3), sigma_n(f, 2))
    with pytest.raises(ValueError):
        frac_act(x, 0)


def test_dict_roundtrip():
    f = reduce([5, -3, 2], 3)
    assert HabiroElt.from_dict(f.to_dict()) == f
