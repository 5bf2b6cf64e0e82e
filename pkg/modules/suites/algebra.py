"""Exact identities: cyclotomic rings, Habiro evaluation and Taylor maps, BC relations."""

import functools
import logging
import operator
from fractions import Fraction
from math import gcd
from typing import List

import numpy as np
from sympy import Poly, ZZ, divisors

from modules.bc_core import (
    BCElement,
    BCMonomial,
    QZElt,
    bc_mul,
    e_operator,
    idempotent_e,
    pi_rho,
    qz_rho,
    qz_sigma,
)
from modules.cyclotomic import RootOfUnity, cyclotomic_poly, eval_poly, x
from modules.habiro import HabiroElt, ev, reduce, sigma_n, taylor, taylor_product

from .base import BaseSuite

logger = logging.getLogger(__name__)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class RandomAlgebra:
    """Seeded generators of small exact inputs"""

    def __init__(self, rng: np.random.Generator):
        self.rng = rng

    def coeffs(self, length: int, spread: int = 5) -> List[int]:
        return [int(c) for c in self.rng.integers(-spread, spread + 1, size=length)]

    def root(self, max_order: int) -> RootOfUnity:
        d = int(self.rng.integers(1, max_order + 1))
        units = [a for a in range(d) if gcd(a, d) == 1]
        return RootOfUnity.of(int(self.rng.choice(units)), d)

    def habiro(self, level: int, length: int = 12) -> HabiroElt:
        return reduce(self.coeffs(length), level)

    def qz(self, denominators, terms: int = 3) -> QZElt:
        items = []
        for _ in range(terms):
            b = int(self.rng.choice(denominators))
            a = int(self.rng.integers(0, b))
            c = Fraction(int(self.rng.integers(-4, 5)), int(self.rng.integers(1, 4)))
            items.append((Fraction(a, b), c))
        return QZElt.from_map(items)

    def monomial(self, max_index: int, denominators) -> BCElement:
        left = int(self.rng.integers(1, max_index + 1))
        right = int(self.rng.integers(1, max_index + 1))
        return BCElement.from_monomials([BCMonomial(left, self.qz(denominators, 2), right)])


def _level_of(*elements: BCElement) -> int:
    level = 1
    for u in elements:
        for d in u.denominators():
            level = _lcm(level, d)
    return level


class AlgebraSuite(BaseSuite):
    name = "algebra"
    exact = True

    def checks(self):
        self.gen = RandomAlgebra(self.rng)
        return [
            ("cyclotomic_product", self.cyclotomic_product),
            ("eval_homomorphism", self.eval_homomorphism),
            ("habiro_sigma_compatibility", self.sigma_compatibility),
            ("taylor_multiplicativity", self.taylor_multiplicativity),
            ("bc_relations", self.bc_relations),
            ("crossed_product_representation", self.crossed_product),
            ("bc_associativity", self.associativity),
            ("e_operator_compatibility", self.e_operator_compatibility),
        ]

    def cyclotomic_product(self):
        limit = self.param("max_m", 60)
        failures = []
        for m in range(1, limit + 1):
            product = functools.reduce(operator.mul, (cyclotomic_poly(d) for d in divisors(m)))
            if product != Poly(x**m - 1, x, domain=ZZ):
                failures.append(m)
        return not failures, len(failures), f"m <= {limit}, failures {failures}"

    def eval_homomorphism(self):
        samples = self.param("samples", 500)
        failures = 0
        for _ in range(samples):
            zeta = self.gen.root(24)
            p, q = self.gen.coeffs(10), self.gen.coeffs(10)
            product = [int(c) for c in np.convolve(p, q)]
            total = [a + b for a, b in zip(p, q)]
            ep, eq = eval_poly(p, zeta), eval_poly(q, zeta)
            if eval_poly(product, zeta) != ep * eq or eval_poly(total, zeta) != ep + eq:
                failures += 1
        return failures == 0, failures, f"{samples} random pairs, orders <= 24"

    def sigma_compatibility(self):
        samples = self.param("samples", 200)
        failures = 0
        for _ in range(samples):
            N = int(self.gen.rng.integers(1, 9))
            zeta = self.gen.root(N)
            n = int(self.gen.rng.integers(1, 7))
            f = self.gen.habiro(N)
            if ev(sigma_n(f, n), zeta) != ev(f, zeta**n):
                failures += 1
        return failures == 0, failures, f"{samples} cases, n <= 6, N <= 8"

    def taylor_multiplicativity(self):
        samples = self.param("samples", 200)
        failures = 0
        for _ in range(samples):
            N = int(self.gen.rng.integers(2, 9))
            zeta = self.gen.root(N - 1)
            depth = (N - 1) // zeta.order
            f, g = self.gen.habiro(N), self.gen.habiro(N)
            tf, tg = taylor(f, zeta, depth), taylor(g, zeta, depth)
            if tf[0] != ev(f, zeta) or taylor(f * g, zeta, depth) != taylor_product(tf, tg, depth):
                failures += 1
        return failures == 0, failures, f"{samples} cases"

    def bc_relations(self):
        samples = self.param("samples", 100)
        failures = 0
        denominators = list(range(1, 25))
        for _ in range(samples):
            n = int(self.gen.rng.integers(1, 13))
            a = self.gen.qz(denominators)
            e_n = idempotent_e(n)
            if (
                qz_sigma(qz_rho(a, n), n) != a
                or qz_rho(qz_sigma(a, n), n) != e_n * a
                or e_n * e_n != e_n
            ):
                failures += 1
        return failures == 0, failures, f"{samples} elements, n <= 12, denominators <= 24"

    def crossed_product(self):
        samples = self.param("samples", 100)
        K = self.param("K", 60)
        failures, empty = 0, 0
        for _ in range(samples):
            u = self.gen.monomial(6, [1, 2, 3, 6])
            v = self.gen.monomial(6, [1, 2, 3, 6])
            uv = bc_mul(u, v)
            level = _level_of(u, v, uv)
            product = pi_rho(u, 1, level, K) @ pi_rho(v, 1, level, K)
            direct = pi_rho(uv, 1, level, K)
            basis = product.valid & direct.valid
            if not basis:
                empty += 1
            if not product.agrees_with(direct, basis):
                failures += 1
        return failures == 0, failures, f"{samples} monomial pairs at K={K}; {empty} with empty sub-basis"

    def associativity(self):
        samples = self.param("samples", 100)
        failures = 0
        for _ in range(samples):
            u, v, w = (self.gen.monomial(6, [1, 2, 3, 4, 6]) for _ in range(3))
            if bc_mul(bc_mul(u, v), w) != bc_mul(u, bc_mul(v, w)):
                failures += 1
        return failures == 0, failures, f"{samples} triples"

    def e_operator_compatibility(self):
        K = self.param("K", 24)
        failures, cases = 0, 0
        for order in range(1, 13):
            zeta = RootOfUnity.of(1, order)
            f = self.gen.habiro(12)
            for n in range(1, 7):
                cases += 1
                if not e_operator(zeta**n, f, K).agrees_with(e_operator(zeta, sigma_n(f, n), K)):
                    failures += 1
        return failures == 0, failures, f"{cases} cases at K={K}"
