"""Cone zeta values against closed forms and under channel transforms."""

import logging
import math

from modules.multivar import MultiQZElt
from modules.mzv_channels import (
    ConeState,
    RationalCone,
    channel_transform,
    character_of_product,
    mzv_cone,
)
from modules.normal_forms import IntMatrix

from .base import BaseSuite

logger = logging.getLogger(__name__)

ZETA_2 = math.pi**2 / 6


class MZVSuite(BaseSuite):
    name = "mzv"

    def checks(self):
        return [
            ("zeta2_closed_form", self.zeta2),
            ("alternating_zeta2", self.alternating),
            ("channel_doubling", self.doubling),
            ("orthant_product", self.orthant_product),
            ("character_product", self.character_product),
        ]

    def _state(self, theta="0") -> ConeState:
        return ConeState(RationalCone.orthant(1), ((1,), (1,)), (theta,))

    def zeta2(self):
        result = mzv_cone(self._state(), self.param("hmax", 10**6))
        gap = abs(result.value.real - ZETA_2)
        return gap <= result.tail and gap / ZETA_2 <= 1e-6, gap / ZETA_2, f"value {result.value.real:.10f}, tail {result.tail:.3g}"

    def alternating(self):
        # theta = 1/2 gives sum (-1)^v / v^2 = -pi^2 / 12
        result = mzv_cone(self._state("1/2"), self.param("hmax", 10**6))
        gap = abs(result.value - (-ZETA_2 / 2))
        return gap <= result.tail + 1e-12, gap, f"value {result.value.real:.10f}"

    def doubling(self):
        hmax = self.param("hmax", 10**6)
        state = self._state()
        before = mzv_cone(state, hmax)
        after = mzv_cone(channel_transform(state, IntMatrix(((2,),))), hmax)
        relative = abs(after.value.real - before.value.real / 4) / (before.value.real / 4)
        return relative <= 1e-6, relative, f"v -> 2v scales {before.value.real:.10f} to {after.value.real:.10f}"

    def orthant_product(self):
        # forms x, x, y, y, y on the quarter plane give zeta(2) zeta(3)
        hmax = self.param("orthant_hmax", 2000)
        state = ConeState(RationalCone.orthant(2), ((1, 0), (1, 0), (0, 1), (0, 1), (0, 1)), (0, 0))
        result = mzv_cone(state, hmax)
        closed = ZETA_2 * 1.2020569031595942
        gap = abs(result.value.real - closed)
        return gap <= result.tail, gap, f"value {result.value.real:.8f}, closed {closed:.8f}, tail {result.tail:.3g}"

    def character_product(self):
        a = MultiQZElt.e(("1/3", "1/4"), 2)
        b = MultiQZElt.e(("1/6", "0"), 1) + MultiQZElt.e(("0", "1/2"), -1)
        worst = 0.0
        for v in [(1, 1), (2, 5), (7, 3)]:
            joint, separate = character_of_product([a, b], v)
            worst = max(worst, abs(joint - separate))
        return worst < 1e-12, worst, "chi_{ab} = chi_a chi_b"
