"""Lattice preimages, the type II_1 trace and the lattice representation relations."""

import itertools
import logging
from fractions import Fraction
from math import gcd

from sympy import Matrix, divisor_sigma

from modules.multivar import (
    GroupoidFunction,
    MultiQZElt,
    from_qz,
    groupoid_gibbs,
    lattice_box,
    mu,
    mu_star,
    multi_rho,
    multi_sigma_qz,
    partition_II1,
    pi_rep,
    preimage_solutions,
)
from modules.normal_forms import IntMatrix, hnf_count, hnf_enumerate

from .base import BaseSuite

logger = logging.getLogger(__name__)


def brute_preimages(alpha: IntMatrix, r):
    """alpha^{-1}(r + k) mod 1 over k in [0, det)^n; det Z^n sits inside alpha Z^n"""
    d = alpha.det
    adj = Matrix(alpha.rows).adjugate()
    n = alpha.n
    out = set()
    for k in itertools.product(range(d), repeat=n):
        w = [Fraction(v) + kk for v, kk in zip(r, k)]
        s = tuple(
            (sum(int(adj[i, j]) * w[j] for j in range(n)) / d) % 1 for i in range(n)
        )
        out.add(s)
    return sorted(out)


class MultivarSuite(BaseSuite):
    name = "multivar"

    def checks(self):
        return [
            ("preimage_count_and_solutions", self.preimages),
            ("hnf_count_sigma1", self.hnf_counts),
            ("type_II1_partition", self.type_II1),
            ("pi_rep_sigma_relation", self.sigma_relation),
            ("pi_rep_rho_relation", self.rho_relation),
            ("groupoid_state_normalized", self.groupoid_normalized),
        ]

    def _alpha(self, max_det: int, spread: int = 3) -> IntMatrix:
        while True:
            entries = self.rng.integers(-spread, spread + 1, size=(2, 2))
            alpha = IntMatrix.from_array(entries)
            if 1 <= alpha.det <= max_det:
                return alpha

    def _label(self, max_den: int):
        b = int(self.rng.integers(1, max_den + 1))
        return tuple(Fraction(int(self.rng.integers(0, b)), b) for _ in range(2)), b

    def preimages(self):
        samples = self.param("samples", 100)
        failures = 0
        for _ in range(samples):
            alpha = self._alpha(12)
            r, _ = self._label(6)
            sols = preimage_solutions(alpha, r)
            solves = all(
                all((a - b).denominator == 1 for a, b in zip(alpha.apply(s), r)) for s in sols
            )
            if len(sols) != alpha.det or not solves or sols != brute_preimages(alpha, r):
                failures += 1
        return failures == 0, failures, f"{samples} random alpha, det <= 12"

    def hnf_counts(self):
        limit = self.param("max_det", 50)
        bad = [
            d for d in range(1, limit + 1)
            if hnf_count(2, d) != int(divisor_sigma(d)) or len(hnf_enumerate(2, d)) != hnf_count(2, d)
        ]
        return not bad, len(bad), f"d <= {limit}, mismatches {bad}"

    def type_II1(self):
        result = partition_II1(2, self.param("beta", 4.0), self.param("cap", 200))
        gap = abs(result.value - result.product_truncated)
        return (
            result.agrees() and gap <= result.tail_bound + result.product_tail,
            gap,
            f"value {result.value:.8f}, product {result.product_truncated:.8f}, closed {result.closed_form:.8f}",
        )

    def _relation(self, build_lhs, build_rhs):
        samples = self.param("samples", 30)
        box = self.param("basis_box", self.config.multi.basis_box)
        basis = lattice_box(2, box)
        failures, empty = 0, 0
        for _ in range(samples):
            alpha = self._alpha(4, spread=2)
            r, b = self._label(6)
            level = b * alpha.det
            unit = int(self.rng.integers(1, level + 1))
            while gcd(unit, level) != 1:
                unit += 1
            x = MultiQZElt.e(r)
            lhs = build_lhs(alpha, x, unit, level, basis)
            rhs = build_rhs(alpha, x, unit, level, basis)
            common = lhs.valid & rhs.valid
            if not common:
                empty += 1
            if not lhs.agrees_with(rhs, common):
                failures += 1
        return failures == 0, failures, f"{samples} cases on a box of radius {box}; {empty} with empty sub-basis"

    def sigma_relation(self):
        return self._relation(
            lambda a, x, u, N, B: pi_rep(mu_star(a), u, N, B) @ pi_rep(from_qz(x), u, N, B) @ pi_rep(mu(a), u, N, B),
            lambda a, x, u, N, B: pi_rep(from_qz(multi_sigma_qz(x, a)), u, N, B),
        )

    def rho_relation(self):
        return self._relation(
            lambda a, x, u, N, B: pi_rep(mu(a), u, N, B) @ pi_rep(from_qz(x), u, N, B) @ pi_rep(mu_star(a), u, N, B),
            lambda a, x, u, N, B: pi_rep(from_qz(multi_rho(x, a)), u, N, B),
        )

    def groupoid_normalized(self):
        f = GroupoidFunction.on_units(2, 3, lambda point: 1)
        value = groupoid_gibbs(f, (1, 2), 4.0, self.param("groupoid_cap", 20))
        residual = abs(value - 1)
        return residual < 1e-12, residual, "phi_beta(1) = 1"
