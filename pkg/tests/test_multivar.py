import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from modules.errors import BetaOutOfRange, NonIntegralInput
from modules.cyclotomic import RootOfUnity
from modules.multivar import (
    GroupoidFunction,
    MultiHabiroElt,
    MultiQZElt,
    adjoint,
    arrow,
    compose,
    convolve,
    from_qz,
    groupoid_gibbs,
    lattice_box,
    mu,
    mu_star,
    multi_ev,
    multi_rho,
    multi_rho_tilde,
    multi_sigma,
    multi_sigma_qz,
    partition_II1,
    pi_rep,
    point_power,
    preimage_solutions,
    preserves_level,
    sigma_t,
    unit_arrow,
    zero_temperature,
)
from modules.normal_forms import IntMatrix
from modules.suites.multivar_suite import brute_preimages


@st.composite
def positive_matrices(draw, max_det=12):
    rows = draw(st.lists(st.lists(st.integers(-3, 3), min_size=2, max_size=2), min_size=2, max_size=2))
    alpha = IntMatrix(tuple(tuple(r) for r in rows))
    if not 1 <= alpha.det <= max_det:
        return IntMatrix(((2, 1), (0, 3)))
    return alpha


@st.composite
def labels(draw, max_den=6):
    b = draw(st.integers(1, max_den))
    return tuple(Fraction(draw(st.integers(0, b - 1)), b) for _ in range(2))


@given(positive_matrices(), labels())
def test_preimages_solve_and_are_complete(alpha, r):
    sols = preimage_solutions(alpha, r)
    assert len(sols) == alpha.det
    for s in sols:
        assert all((a - b).denominator == 1 for a, b in zip(alpha.apply(s), r))
    assert sols == brute_preimages(alpha, r)


@given(positive_matrices(6), labels())
def test_sigma_undoes_rho(alpha, r):
    x = MultiQZElt.e(r, Fraction(3, 2))
    assert multi_sigma_qz(multi_rho(x, alpha), alpha) == x


def test_integral_rho_model():
    alpha = IntMatrix(((2, 0), (0, 1)))
    tilde = multi_rho_tilde(MultiQZElt.one(2), alpha)
    assert tilde.is_integral()
    assert tilde == MultiQZElt.from_map(2, [((0, 0), 1), ((Fraction(1, 2), 0), 1)])
    with pytest.raises(NonIntegralInput):
        multi_rho_tilde(MultiQZElt.e((0, 0), Fraction(1, 3)), alpha)


ROOT_CHOICES = [RootOfUnity.of(a, 6) for a in range(6)]


@given(
    st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(-4, 4)), min_size=1, max_size=6),
    positive_matrices(6),
    st.tuples(st.sampled_from(ROOT_CHOICES), st.sampled_from(ROOT_CHOICES)),
)
def test_sigma_is_compatible_with_evaluation(terms, alpha, point):
    f = MultiHabiroElt.from_terms((((a, b), c) for a, b, c in terms), 2, 6)
    assert multi_ev(multi_sigma(f, alpha), point) == multi_ev(f, point_power(point, alpha))


def test_generators_reduce_to_zero():
    for i in (1, 2):
        g = MultiHabiroElt.generator(i, 2, 3)
        assert MultiHabiroElt.from_terms(g.terms, 2, 3).is_zero()


def test_parse_and_arithmetic():
    f = MultiHabiroElt.parse("q1*q2 + 1", 2, 3)
    g = MultiHabiroElt.parse("q1*q2 - 1", 2, 3)
    assert f * g == MultiHabiroElt.parse("q1^2*q2^2 - 1", 2, 3)
    assert (f - f).is_zero()
    assert MultiHabiroElt.from_dict(f.to_dict()) == f
    with pytest.raises(ValueError):
        f + MultiHabiroElt.from_int(1, 2, 4)


def test_level_preservation_and_bad_matrices():
    assert preserves_level(IntMatrix.identity(2), 3)
    assert preserves_level(IntMatrix(((2, 0), (0, 3))), 3)
    f = MultiHabiroElt.variable(1, 2, 3)
    with pytest.raises(ValueError):
        multi_sigma(f, IntMatrix(((0, 1), (1, 0))))


def test_type_II1_partition():
    result = partition_II1(2, 4.0, 200)
    assert result.agrees()
    # zeta(4) * zeta(3)
    assert result.closed_form == pytest.approx(1.3010, abs=1e-4)
    with pytest.raises(BetaOutOfRange):
        partition_II1(2, 2.0, 10)


def _relation_holds(lhs, rhs):
    common = lhs.valid & rhs.valid
    return bool(common) and lhs.agrees_with(rhs, common)


@pytest.mark.parametrize("rows", [((2, 1), (0, 1)), ((1, 0), (1, 3)), ((2, 0), (0, 2))])
def test_representation_relations(rows):
    alpha = IntMatrix(rows)
    x = MultiQZElt.e((Fraction(1, 2), Fraction(1, 3)))
    level = 6 * alpha.det
    unit = 5 if level % 5 else 7
    basis = lattice_box(2, 3)
    rep = lambda u: pi_rep(u, unit, level, basis)  # noqa: E731
    assert _relation_holds(
        rep(mu_star(alpha)) @ rep(from_qz(x)) @ rep(mu(alpha)),
        rep(from_qz(multi_sigma_qz(x, alpha))),
    )
    assert _relation_holds(
        rep(mu(alpha)) @ rep(from_qz(x)) @ rep(mu_star(alpha)),
        rep(from_qz(multi_rho(x, alpha))),
    )


def test_groupoid_convolution_on_units_is_pointwise():
    f = GroupoidFunction.on_units(2, 3, lambda p: 1 + p[0])
    g = GroupoidFunction.on_units(2, 3, lambda p: 2 - p[1])
    product = convolve(f, g)
    expected = GroupoidFunction.on_units(2, 3, lambda p: (1 + p[0]) * (2 - p[1]))
    assert product.close_to(expected)


def test_groupoid_arrows_and_adjoints():
    alpha = IntMatrix(((2, 1), (0, 1)))
    a = arrow(alpha, (1, 2), 3)
    assert a.target == (1, 2)
    assert compose(a.inverse(), a) == unit_arrow((1, 2), 3)
    with pytest.raises(ValueError):
        compose(a, unit_arrow((0, 0), 3))
    f = GroupoidFunction.delta(a, 3, 1 + 2j)
    assert adjoint(adjoint(f)).close_to(f)
    product = convolve(adjoint(f), f)
    assert product.unit_value((1, 2)) == pytest.approx(5)


def test_time_evolution_scales_by_determinant():
    a = arrow(IntMatrix(((2, 0), (0, 1))), (0, 1), 4)
    f = GroupoidFunction.delta(a, 4)
    evolved = sigma_t(f, 1.0)
    assert evolved(a) == pytest.approx(cmath.exp(1j * math.log(2)))
    units = GroupoidFunction.on_units(2, 4, lambda p: 3)
    assert sigma_t(units, 2.5).close_to(units)


def test_groupoid_states():
    one = GroupoidFunction.on_units(2, 3, lambda p: 1)
    assert groupoid_gibbs(one, (1, 2), 4.0, 20) == pytest.approx(1.0)
    indicator = GroupoidFunction.on_units(2, 3, lambda p: 1 if p == (1, 2) else 0)
    assert zero_temperature(indicator, (1, 2)) == 1
    value = groupoid_gibbs(indicator, (1, 2), 6.0, 20)
    assert 0 < value.real < 1
    with pytest.raises(BetaOutOfRange):
        groupoid_gibbs(one, (0, 0), 2.0, 5)
