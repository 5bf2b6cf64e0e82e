"""Word-level identities for rho_m(s_i) = s_i T_N^m."""

import logging

from modules.braids import (
    BraidWord,
    compose_exponent,
    compose_identity_check,
    conjugation_equivariance_check,
    markov_check,
    torus_knot_action,
)

from .base import BaseSuite

logger = logging.getLogger(__name__)


class BraidSuite(BaseSuite):
    name = "braid"
    exact = True

    def checks(self):
        return [
            ("composition_exponent", self.composition),
            ("torus_knot_2_3", self.torus),
            ("conjugation_equivariance", self.conjugation),
            ("markov_stabilization", self.markov),
        ]

    def _word(self, N: int, max_length: int = 20) -> BraidWord:
        length = int(self.rng.integers(0, max_length + 1))
        indices = self.rng.integers(1, N, size=length)
        signs = self.rng.choice([-1, 1], size=length)
        center = int(self.rng.integers(-2, 3))
        return BraidWord(N, tuple(int(s * i) for s, i in zip(signs, indices)), center)

    def composition(self):
        samples = self.param("samples", 200)
        failures = 0
        for _ in range(samples):
            N = int(self.rng.integers(2, 7))
            n1, n2 = (int(v) for v in self.rng.integers(-3, 4, size=2))
            if not compose_identity_check(self._word(N), n1, n2):
                failures += 1
        return failures == 0, failures, f"{samples} words, N <= 6; e.g. N=3, n1=n2=1 gives {compose_exponent(3, 1, 1)}"

    def torus(self):
        result = torus_knot_action(2, 3, 1)
        return result.b_prime == 9 and result.word_verified, 0.0, f"T(2,3) -> T(2,{result.b_prime})"

    def conjugation(self):
        samples = self.param("samples", 100)
        failures = 0
        for _ in range(samples):
            N = int(self.rng.integers(2, 6))
            if not conjugation_equivariance_check(self._word(N, 6), self._word(N, 10), int(self.rng.integers(-2, 3))):
                failures += 1
        return failures == 0, failures, f"{samples} pairs"

    def markov(self):
        failures = 0
        for N in range(2, 5):
            for m in (-1, 1, 2):
                if not markov_check(self._word(N, 8), m).holds:
                    failures += 1
        return failures == 0, failures, "rho(gamma s_N) = rho(gamma) s_N T^m"
