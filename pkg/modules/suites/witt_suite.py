"""Witt vector integrality and Frobenius lifts on group rings of finite cyclic groups."""

import logging

from modules.witt_lambda import (
    GroupRingElt,
    WittVector,
    direct_system_check,
    ghost,
    lambda_ring_certificate,
    unghost,
)

from .base import BaseSuite

logger = logging.getLogger(__name__)


class WittSuite(BaseSuite):
    name = "witt"
    exact = True

    def checks(self):
        return [
            ("worked_ghost_vector", self.worked_vector),
            ("ghost_roundtrip", self.roundtrip),
            ("integral_arithmetic", self.integral_arithmetic),
            ("frobenius_lift", self.frobenius_lift),
            ("direct_system", self.direct_system),
        ]

    def _vector(self, N: int) -> WittVector:
        return WittVector.of(int(c) for c in self.rng.integers(-6, 7, size=N))

    def worked_vector(self):
        psi = ghost(WittVector.of([2, -1, -2, -4]))
        return psi == [2, 2, 2, 2], 0.0, f"ghost(2, -1, -2, -4) = {[str(v) for v in psi]}"

    def roundtrip(self):
        samples = self.param("samples", 200)
        failures = 0
        for _ in range(samples):
            w = self._vector(12)
            if unghost(ghost(w)) != w:
                failures += 1
        return failures == 0, failures, f"{samples} vectors at N=12"

    def integral_arithmetic(self):
        samples = self.param("samples", 200)
        failures = 0
        for _ in range(samples):
            a, b = self._vector(12), self._vector(12)
            if not ((a + b).is_integral() and (a * b).is_integral()):
                failures += 1
        return failures == 0, failures, f"{samples} sums and products at N=12"

    def frobenius_lift(self):
        samples = self.param("samples", 100)
        max_k = self.param("max_k", 12)
        failed = []
        for k in range(1, max_k + 1):
            for p in (2, 3, 5, 7):
                seed = int(self.rng.integers(0, 2**31))
                if not lambda_ring_certificate(k, p, samples=samples, seed=seed):
                    failed.append((k, p))
        return not failed, len(failed), f"k <= {max_k}, p in {{2, 3, 5, 7}}, failing {failed}"

    def direct_system(self):
        failures = 0
        for n in range(1, 7):
            x = GroupRingElt.from_coeffs([int(c) for c in self.rng.integers(-3, 4, size=n)])
            for m in (n, 2 * n, 3 * n):
                for k in range(1, 6):
                    if not direct_system_check(x, m, k):
                        failures += 1
        return failures == 0, failures, "xi_{m,n} s_k = s_k xi_{m,n}"
