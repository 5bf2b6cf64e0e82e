import itertools
import math
from fractions import Fraction

import mpmath
import pytest

from modules.errors import ConeNotPreserved, ConvergenceWarning, NonPositiveHeightForm
from modules.multivar import MultiQZElt
from modules.mzv_channels import (
    ConeState,
    RationalCone,
    channel_transform,
    character_of_product,
    cone_points,
    cone_state_value,
    mzv_cone,
    preserves_cone,
    relation_check,
    state_transform,
)
from modules.normal_forms import IntMatrix

ZETA2 = float(mpmath.zeta(2))
ZETA3 = float(mpmath.zeta(3))


def zeta_state(s: int, theta: str = "0") -> ConeState:
    return ConeState.parse("1", "|".join(["1"] * s), theta)


def test_zeta_two_from_the_half_line():
    result = mzv_cone(zeta_state(2), 100000)
    assert result.value.real == pytest.approx(1.6449341, abs=1e-4)
    assert abs(result.value - ZETA2) <= result.tail
    assert result.points == 100000


def test_alternating_character():
    result = mzv_cone(zeta_state(2, "1/2"), 100000)
    assert result.value.real == pytest.approx(-math.pi**2 / 12, abs=1e-6)
    assert abs(result.value.imag) < 1e-9


def test_channel_doubling_scales_each_form():
    state = zeta_state(2)
    doubled = channel_transform(state, IntMatrix(((2,),)))
    assert doubled.forms == ((Fraction(2),), (Fraction(2),))
    assert mzv_cone(doubled, 5000).value.real == pytest.approx(mzv_cone(state, 5000).value.real / 4)


def test_orthant_splits_into_a_product():
    state = ConeState.parse("1,0;0,1", "1,0|1,0|0,1|0,1|0,1", "0,0")
    result = mzv_cone(state, 500)
    assert result.value.real == pytest.approx(ZETA2 * ZETA3, abs=1e-2)


def test_divergent_sums_warn():
    with pytest.warns(ConvergenceWarning):
        result = mzv_cone(zeta_state(1), 100)
    assert result.tail == math.inf
    assert mzv_cone(zeta_state(1), 100, allow_divergent=True).value.real == pytest.approx(
        sum(1 / v for v in range(1, 101))
    )


def test_cone_geometry():
    orthant = RationalCone.orthant(2)
    assert orthant.hyperplanes == ((0, 1), (1, 0))
    assert orthant.simplicial
    assert cone_points(orthant, 3) == [(1, 1), (1, 2), (2, 1)]
    wedge = RationalCone.parse("1,0;1,2")
    assert all(wedge.contains_interior(p) for p in cone_points(wedge, 6))
    with pytest.raises(ValueError):
        RationalCone.parse("1,1")


def lattice_points_by_search(cone: RationalCone, hmax: int):
    bound = hmax * max(abs(c) for g in cone.generators for c in g)
    height = cone.default_height()
    box = itertools.product(range(-bound, bound + 1), repeat=cone.dim)
    return sorted(
        p for p in box if cone.contains_interior(p) and sum(h * c for h, c in zip(height, p)) <= hmax
    )


@pytest.mark.parametrize(
    "generators, hmax",
    [("1", 20), ("1,0;0,1", 20), ("1,0;1,2", 20), ("2,1;1,3", 15), ("1,0,0;0,1,0;0,0,1", 12), ("1,0,0;1,1,0;1,1,1", 10)],
)
def test_cone_points_match_exhaustive_search(generators, hmax):
    cone = RationalCone.parse(generators)
    assert cone_points(cone, hmax) == lattice_points_by_search(cone, hmax)


def test_orthant_points_have_positive_coordinates():
    points = cone_points(RationalCone.orthant(3), 9)
    assert points == sorted(p for p in itertools.product(range(1, 8), repeat=3) if sum(p) <= 9)


def test_truncation_error_shrinks_with_height():
    errors = [ZETA2 - mzv_cone(zeta_state(2), h).value.real for h in (10, 100, 1000)]
    assert all(e > 0 for e in errors)
    assert errors[0] > errors[1] > errors[2]
    assert errors[2] < 2e-3


def test_channels_compose_as_matrix_products():
    state = ConeState.parse("1,0;0,1", "1,0|0,1|1,1", "0")
    first, second = IntMatrix.parse("1,1;0,1"), IntMatrix.parse("2,0;1,1")
    stepwise = channel_transform(channel_transform(state, first), second)
    assert stepwise.forms == channel_transform(state, first @ second).forms
    assert stepwise.cone == state.cone


def test_forms_must_be_positive():
    with pytest.raises(NonPositiveHeightForm):
        ConeState.parse("1", "-1|1", "0")


def test_channels_need_cone_preserving_matrices():
    orthant = RationalCone.orthant(2)
    assert preserves_cone(orthant, IntMatrix(((1, 1), (0, 1))))
    assert not preserves_cone(orthant, IntMatrix(((1, -1), (0, 1))))
    assert not preserves_cone(orthant, IntMatrix(((0, 1), (1, 0))))
    state = ConeState.parse("1,0;0,1", "1,0|0,1|1,1", "0,0")
    with pytest.raises(ConeNotPreserved):
        channel_transform(state, IntMatrix(((1, -1), (0, 1))))


def test_character_of_a_product():
    a = MultiQZElt.e((Fraction(1, 3), Fraction(1, 2)))
    b = MultiQZElt.from_map(2, [((Fraction(1, 6), 0), 2), ((0, Fraction(1, 4)), -1)])
    for v in [(1, 1), (2, 5), (3, 7)]:
        together, separate = character_of_product([a, b], v)
        assert together == pytest.approx(separate)


def test_states_are_normalized_and_pull_back():
    state = ConeState.parse("1,0;0,1", "1,0|1,0|0,1|0,1", "0,0")
    one = MultiQZElt.one(2)
    assert cone_state_value(state, one, 200) == pytest.approx(1.0)
    pulled = state_transform(state, IntMatrix(((1, 1), (0, 1))))
    assert pulled(one, 200) == pytest.approx(1.0)


def test_product_relation_survives_the_channel():
    square = ConeState.parse("1,0;0,1", "1,0|1,0|0,1|0,1", "0,0")
    terms = [(1, [square]), (-1, [zeta_state(2), zeta_state(2)])]
    report = relation_check(terms, {1: IntMatrix(((2,),)), 2: IntMatrix(((2, 0), (0, 2)))}, 2000)
    assert report.passed
    assert report.to_dict()["passed"] is True
