"""Big Witt vectors through ghost coordinates, Frobenius lifts on group rings,
and the multiplicative action of Zhat on Q[Q/Z].

Witt arithmetic is transported through the ghost map, which is injective
only over torsion-free coefficients, so components are rationals here.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import Poly, divisors, isprime, symbols

from modules.bc_core import QZElt, check_level
from modules.errors import NonIntegral
from modules.habiro import parse_poly

logger = logging.getLogger(__name__)

Number = Union[int, Fraction, str]


@lru_cache(maxsize=None)
def _proper_divisors(n: int) -> Tuple[int, ...]:
    return tuple(divisors(n)[:-1])


@dataclass(frozen=True)
class WittVector:
    """Truncated big Witt vector (u_1, ..., u_N)"""

    components: Tuple[Fraction, ...]

    def __post_init__(self):
        if not self.components:
            raise ValueError("a Witt vector needs at least one component")
        object.__setattr__(self, "components", tuple(Fraction(c) for c in self.components))

    @classmethod
    def of(cls, values: Iterable[Number]) -> "WittVector":
        return cls(tuple(Fraction(v) for v in values))

    @classmethod
    def zero(cls, N: int) -> "WittVector":
        return cls((Fraction(0),) * N)

    @classmethod
    def one(cls, N: int) -> "WittVector":
        return cls((Fraction(1),) + (Fraction(0),) * (N - 1))

    @property
    def truncation(self) -> int:
        return len(self.components)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.components)

    def ghost(self) -> List[Fraction]:
        return ghost(self)

    def __add__(self, other: "WittVector") -> "WittVector":
        return witt_add(self, other)

    def __mul__(self, other: "WittVector") -> "WittVector":
        return witt_mul(self, other)

    def __neg__(self) -> "WittVector":
        return unghost([-v for v in ghost(self)])

    def __str__(self) -> str:
        return "[" + ", ".join(str(c) for c in self.components) + "]"

    def to_dict(self) -> list:
        return [str(c) for c in self.components]

    @classmethod
    def from_dict(cls, data: list) -> "WittVector":
        return cls.of(data)


def ghost(w: WittVector) -> List[Fraction]:
    """psi_n = sum over d | n of d * u_d^(n/d), n = 1..N"""
    u = w.components
    return [
        sum((d * u[d - 1] ** (n // d) for d in divisors(n)), Fraction(0))
        for n in range(1, w.truncation + 1)
    ]


def unghost(psi: Sequence[Number], integral: bool = False) -> WittVector:
    """Invert the ghost map; integral=True raises NonIntegral on a fractional component"""
    psi = [Fraction(v) for v in psi]
    u: List[Fraction] = []
    for n in range(1, len(psi) + 1):
        rest = sum((d * u[d - 1] ** (n // d) for d in _proper_divisors(n)), Fraction(0))
        value = (psi[n - 1] - rest) / n
        if integral and value.denominator != 1:
            raise NonIntegral(f"component u_{n} = {value} is not an integer")
        u.append(value)
    return WittVector(tuple(u))


def _same_truncation(w1: WittVector, w2: WittVector):
    if w1.truncation != w2.truncation:
        raise ValueError(f"truncations differ: {w1.truncation} vs {w2.truncation}")


def witt_add(w1: WittVector, w2: WittVector) -> WittVector:
    _same_truncation(w1, w2)
    return unghost([a + b for a, b in zip(ghost(w1), ghost(w2))])


def witt_mul(w1: WittVector, w2: WittVector) -> WittVector:
    _same_truncation(w1, w2)
    return unghost([a * b for a, b in zip(ghost(w1), ghost(w2))])


def adams_frobenius(w: WittVector, n: int) -> WittVector:
    """F_n in ghost coordinates: psi_m -> psi_{nm}, truncation N // n"""
    if n < 1:
        raise ValueError(f"Frobenius index must be positive, got {n}")
    psi = ghost(w)
    length = w.truncation // n
    if length == 0:
        raise ValueError(f"F_{n} leaves nothing of a length-{w.truncation} vector")
    return unghost([psi[n * m - 1] for m in range(1, length + 1)])


def verschiebung(w: WittVector, n: int) -> WittVector:
    """V_n in ghost coordinates: psi_m -> n psi_{m/n} when n | m, else 0"""
    if n < 1:
        raise ValueError(f"Verschiebung index must be positive, got {n}")
    psi = ghost(w)
    N = w.truncation
    return unghost([n * psi[m // n - 1] if m % n == 0 else Fraction(0) for m in range(1, N + 1)])


Exponents = Tuple[int, ...]


@dataclass(frozen=True)
class GroupRingElt:
    """Element of Z[t_1..t_n]/(t_i^k - 1), i.e. the group ring of (Z/k)^n"""

    modulus: int
    nvars: int
    terms: Tuple[Tuple[Exponents, int], ...] = ()

    @classmethod
    def from_terms(cls, modulus: int, nvars: int, terms: Iterable[Tuple[Sequence[int], int]]) -> "GroupRingElt":
        if modulus < 1:
            raise ValueError(f"group ring modulus must be positive, got {modulus}")
        acc: Dict[Exponents, int] = {}
        for e, c in terms:
            key = tuple(int(v) % modulus for v in e)
            acc[key] = acc.get(key, 0) + int(c)
        return cls(modulus, nvars, tuple(sorted((e, c) for e, c in acc.items() if c)))

    @classmethod
    def t(cls, modulus: int, i: int = 1, nvars: int = 1) -> "GroupRingElt":
        e = [0] * nvars
        e[i - 1] = 1
        return cls.from_terms(modulus, nvars, [(e, 1)])

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int]) -> "GroupRingElt":
        """One variable, coefficient of t^j at position j"""
        return cls.from_terms(len(coeffs), 1, (((j,), c) for j, c in enumerate(coeffs)))

    @classmethod
    def parse(cls, text: str, modulus: int, nvars: int = 1) -> "GroupRingElt":
        names = "t" if nvars == 1 else " ".join(f"t{i}" for i in range(1, nvars + 1))
        gens = symbols(names, seq=True)
        P: Poly = parse_poly(text, gens)
        return cls.from_terms(modulus, nvars, ((e, int(c)) for e, c in P.terms()))

    @property
    def mapping(self) -> Dict[Exponents, int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "GroupRingElt") -> "GroupRingElt":
        return GroupRingElt.from_terms(self.modulus, self.nvars, self.terms + other.terms)

    def __neg__(self) -> "GroupRingElt":
        return GroupRingElt(self.modulus, self.nvars, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "GroupRingElt") -> "GroupRingElt":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElt.from_terms(self.modulus, self.nvars, ((e, c * other) for e, c in self.terms))
        return GroupRingElt.from_terms(
            self.modulus,
            self.nvars,
            (
                (tuple(a + b for a, b in zip(e1, e2)), c1 * c2)
                for e1, c1 in self.terms
                for e2, c2 in other.terms
            ),
        )

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "GroupRingElt":
        result = GroupRingElt.from_terms(self.modulus, self.nvars, [((0,) * self.nvars, 1)])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def substitute(self, k: int) -> "GroupRingElt":
        """The endomorphism s_k: t_i -> t_i^k"""
        return GroupRingElt.from_terms(
            self.modulus, self.nvars, ((tuple(k * v for v in e), c) for e, c in self.terms)
        )

    def reduce_mod(self, p: int) -> Tuple[Tuple[Exponents, int], ...]:
        return tuple((e, c % p) for e, c in self.terms if c % p)

    def embed(self, modulus: int) -> "GroupRingElt":
        """xi: Z[Z/k] -> Z[Z/m] for k | m, t -> t^(m/k)"""
        if modulus % self.modulus:
            raise ValueError(f"{self.modulus} does not divide {modulus}")
        step = modulus // self.modulus
        return GroupRingElt.from_terms(
            modulus, self.nvars, ((tuple(step * v for v in e), c) for e, c in self.terms)
        )

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = ["t"] if self.nvars == 1 else [f"t{i}" for i in range(1, self.nvars + 1)]
        parts = []
        for e, c in self.terms:
            mono = "*".join(f"{n}^{v}" for n, v in zip(names, e) if v)
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)

    def to_dict(self) -> dict:
        return {
            "modulus": self.modulus,
            "nvars": self.nvars,
            "terms": [{"exp": list(e), "c": str(c)} for e, c in self.terms],
        }


@dataclass
class FrobeniusCheck:
    """Outcome of s_p(x) - x^p in pR with the quotient as witness"""

    prime: int
    holds: bool
    difference: GroupRingElt
    witness: Optional[GroupRingElt]

    def to_dict(self) -> dict:
        return {
            "prime": self.prime,
            "holds": self.holds,
            "difference": self.difference.to_dict(),
            "witness": self.witness.to_dict() if self.witness is not None else None,
        }


def frobenius_lift_check(x: GroupRingElt, p: int) -> FrobeniusCheck:
    """Whether s_p(x) = x^p mod p, returning (s_p(x) - x^p) / p when it is"""
    if not isprime(p):
        raise ValueError(f"Frobenius lifts are checked at primes, got {p}")
    difference = x.substitute(p) - x ** p
    holds = all(c % p == 0 for _, c in difference.terms)
    witness = None
    if holds:
        witness = GroupRingElt(x.modulus, x.nvars, tuple((e, c // p) for e, c in difference.terms))
    else:
        logger.warning(f"Frobenius lift fails at p={p} for {x}")
    return FrobeniusCheck(p, holds, difference, witness)


def lambda_ring_certificate(modulus: int, p: int, samples: int = 100, nvars: int = 1,
                            seed: int = 0, spread: int = 5) -> bool:
    """Frobenius congruence on the generators and on random elements"""
    rng = np.random.default_rng(seed)
    candidates = [GroupRingElt.t(modulus, i, nvars) for i in range(1, nvars + 1)]
    for _ in range(samples):
        coeffs = rng.integers(-spread, spread + 1, size=(modulus,) * nvars)
        terms = [(idx, int(c)) for idx, c in np.ndenumerate(coeffs)]
        candidates.append(GroupRingElt.from_terms(modulus, nvars, terms))
    return all(frobenius_lift_check(x, p).holds for x in candidates)


def direct_system_check(x: GroupRingElt, modulus: int, k: int) -> bool:
    """xi_{m,n} commutes with s_k for Z[Z/n] -> Z[Z/m]"""
    return x.substitute(k).embed(modulus) == x.embed(modulus).substitute(k)


def zhat_act(x: QZElt, a: int, level: int) -> QZElt:
    """e(r) -> e(ar) for a in Z/level; a = n recovers sigma_n"""
    check_level(x, level)
    a = a % level
    return QZElt.from_map((a * r, c) for r, c in x.terms)
