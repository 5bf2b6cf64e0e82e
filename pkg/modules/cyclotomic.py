"""Exact arithmetic with roots of unity and the cyclotomic rings Z[zeta_m].

Z[zeta_m] is modelled as Z[x]/(Phi_m); every evaluation map in the toolkit
lands here. Roots of unity are kept as reduced fractions in Q/Z so that
exponentiation never touches floating point.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np
from sympy import Poly, ZZ, divisors, symbols, totient

from modules.errors import InvalidGaloisElement

logger = logging.getLogger(__name__)

x = symbols("x")

PolyLike = Union[Poly, Sequence[int]]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class RootOfUnity:
    """Abstract root of unity e(a/b), stored as a reduced fraction in Q/Z"""

    numerator: int
    denominator: int

    def __post_init__(self):
        if self.denominator < 1:
            raise ValueError(f"denominator must be positive, got {self.denominator}")
        if not 0 <= self.numerator < self.denominator:
            raise ValueError(
                f"numerator must lie in [0, {self.denominator}), got {self.numerator}"
            )
        if gcd(self.numerator, self.denominator) != 1:
            raise ValueError(
                f"{self.numerator}/{self.denominator} is not a reduced fraction"
            )

    @classmethod
    def of(cls, a: int, b: int = 1) -> "RootOfUnity":
        """Build e(a/b) from any integer pair, reducing mod 1"""
        frac = Fraction(a, b) % 1
        return cls(frac.numerator, frac.denominator)

    @classmethod
    def from_fraction(cls, r: Fraction) -> "RootOfUnity":
        r = Fraction(r) % 1
        return cls(r.numerator, r.denominator)

    @classmethod
    def parse(cls, text: str) -> "RootOfUnity":
        """Parse ``"a/b"`` (or a bare integer) into a root of unity"""
        try:
            return cls.from_fraction(Fraction(text.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"Invalid root of unity '{text}': expected a/b") from exc

    @property
    def order(self) -> int:
        return self.denominator

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __pow__(self, k: int) -> "RootOfUnity":
        return RootOfUnity.of(self.numerator * k, self.denominator)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        return RootOfUnity.from_fraction(self.fraction + other.fraction)

    def to_cycint(self, order: int = None) -> "CycInt":
        """The root as an element of Z[zeta_order] (default: its own order)"""
        m = order or self.denominator
        if m % self.denominator:
            raise ValueError(f"order {self.denominator} does not divide {m}")
        return CycInt.x_power(self.numerator * (m // self.denominator), m)

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"

    def to_dict(self) -> str:
        return str(self)


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> Poly:
    """Phi_m by exact division of x^m - 1 by the Phi_d with d | m, d < m"""
    if m < 1:
        raise ValueError(f"cyclotomic_poly needs m >= 1, got {m}")
    numerator = Poly(x**m - 1, x, domain=ZZ)
    for d in divisors(m)[:-1]:
        numerator = numerator.exquo(cyclotomic_poly(d))
    return numerator


@lru_cache(maxsize=None)
def phi(m: int) -> int:
    return int(totient(m))


@lru_cache(maxsize=None)
def _power_table(m: int) -> Tuple[Tuple[int, ...], ...]:
    """Coefficient vectors of x^k mod Phi_m for k = 0..m-1 (x^m = 1 there)"""
    modulus = cyclotomic_poly(m)
    width = phi(m)
    rows = []
    for k in range(m):
        rem = Poly(x**k, x, domain=ZZ).rem(modulus)
        rows.append(tuple(_low_coeffs(rem, width)))
    logger.debug(f"Built power table for Z[zeta_{m}] ({m} rows, width {width})")
    return tuple(rows)


def _low_coeffs(p: Poly, width: int) -> List[int]:
    """Coefficients of p from degree 0 upwards, padded/truncated to width"""
    coeffs = [int(c) for c in reversed(p.all_coeffs())]
    if len(coeffs) > width and any(coeffs[width:]):
        raise ValueError(f"polynomial of degree {len(coeffs) - 1} exceeds width {width}")
    return (coeffs + [0] * width)[:width]


def poly_coeffs(P: PolyLike) -> List[int]:
    """Integer coefficients of a polynomial, constant term first"""
    if isinstance(P, Poly):
        return [int(c) for c in reversed(P.all_coeffs())]
    return [int(c) for c in P]


def _fold(terms: Iterable[Tuple[int, int]], m: int) -> Tuple[int, ...]:
    """Sum c * x^k over (k, c) pairs inside Z[x]/(Phi_m)"""
    table = _power_table(m)
    out = [0] * phi(m)
    for k, c in terms:
        if not c:
            continue
        row = table[k % m]
        for i, v in enumerate(row):
            if v:
                out[i] += c * v
    return tuple(out)


@dataclass(frozen=True, eq=False)
class CycInt:
    """Element of Z[zeta_m] as coefficients of 1, x, ..., x^(phi(m)-1)"""

    order: int
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"order must be positive, got {self.order}")
        if len(self.coeffs) != phi(self.order):
            raise ValueError(
                f"Z[zeta_{self.order}] needs {phi(self.order)} coefficients, "
                f"got {len(self.coeffs)}"
            )

    @classmethod
    def from_int(cls, c: int, order: int = 1) -> "CycInt":
        return cls(order, tuple([int(c)] + [0] * (phi(order) - 1)))

    @classmethod
    def zero(cls, order: int = 1) -> "CycInt":
        return cls.from_int(0, order)

    @classmethod
    def one(cls, order: int = 1) -> "CycInt":
        return cls.from_int(1, order)

    @classmethod
    def x_power(cls, k: int, order: int) -> "CycInt":
        return cls(order, _power_table(order)[k % order])

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[int, int]], order: int) -> "CycInt":
        """Sum of c * x^k over (k, c) pairs; k may be any integer"""
        return cls(order, _fold(terms, order))

    @classmethod
    def from_poly(cls, P: PolyLike, order: int) -> "CycInt":
        """Reduce an integer polynomial in x modulo Phi_order"""
        return cls(order, _fold(enumerate(poly_coeffs(P)), order))

    def embed(self, order: int) -> "CycInt":
        """Image under Z[zeta_d] -> Z[zeta_m], x -> x^(m/d), for d | m"""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot embed Z[zeta_{self.order}] into Z[zeta_{order}]")
        step = order // self.order
        return CycInt(order, _fold(((j * step, c) for j, c in enumerate(self.coeffs)), order))

    def _aligned(self, other: "CycInt") -> Tuple["CycInt", "CycInt"]:
        if self.order == other.order:
            return self, other
        m = _lcm(self.order, other.order)
        return self.embed(m), other.embed(m)

    def __add__(self, other):
        if isinstance(other, int):
            other = CycInt.from_int(other, self.order)
        a, b = self._aligned(other)
        return CycInt(a.order, tuple(u + v for u, v in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "CycInt":
        return CycInt(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.order, tuple(other * c for c in self.coeffs))
        a, b = self._aligned(other)
        conv = [0] * (2 * len(a.coeffs) - 1)
        for i, u in enumerate(a.coeffs):
            if not u:
                continue
            for j, v in enumerate(b.coeffs):
                if v:
                    conv[i + j] += u * v
        return CycInt(a.order, _fold(enumerate(conv), a.order))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "CycInt":
        result = CycInt.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = CycInt.from_int(other, self.order)
        if not isinstance(other, CycInt):
            return NotImplemented
        a, b = self._aligned(other)
        return a.coeffs == b.coeffs

    __hash__ = None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __repr__(self) -> str:
        return f"CycInt({self.order}, {list(self.coeffs)})"

    def to_dict(self) -> dict:
        return {"order": self.order, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_dict(cls, data: dict) -> "CycInt":
        return cls(int(data["order"]), tuple(int(c) for c in data["coeffs"]))


def eval_poly(P: PolyLike, zeta: RootOfUnity) -> CycInt:
    """P(zeta) in Z[zeta_b], b = order(zeta), via x -> x^numerator"""
    m = zeta.order
    a = zeta.numerator
    return CycInt(m, _fold(((a * j, c) for j, c in enumerate(poly_coeffs(P))), m))


def galois_act(a: int, z: CycInt) -> CycInt:
    """The automorphism x -> x^a of Z[zeta_m]; a must be a unit mod m"""
    m = z.order
    if gcd(a, m) != 1:
        raise InvalidGaloisElement(f"gcd({a}, {m}) != 1")
    return CycInt(m, _fold(((a * j, c) for j, c in enumerate(z.coeffs)), m))


def embed(z: CycInt, m: int) -> CycInt:
    return z.embed(m)


def root_power(zeta: RootOfUnity, k: int) -> RootOfUnity:
    return zeta ** k


def complex_embed(z: CycInt, k: int = 1) -> complex:
    """Evaluate z at exp(2 pi i k / m) in double precision"""
    m = z.order
    if gcd(k, m) != 1:
        raise InvalidGaloisElement(f"embedding index {k} is not a unit mod {m}")
    powers = np.exp(2j * np.pi * k * np.arange(len(z.coeffs)) / m)
    return complex(np.dot(np.array(z.coeffs, dtype=float), powers))
