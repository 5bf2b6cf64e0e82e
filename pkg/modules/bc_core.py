"""The Bost-Connes algebra Q[Q/Z] x N and its truncated matrix representations.

Elements of the group ring are finite maps r -> c with r a reduced fraction
in [0, 1) and c rational. Crossed-product elements are sums of monomials
mu_a x mu_b^* kept in the normal form gcd(a, b) = 1.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple, Union

from modules.cyclotomic import CycInt, RootOfUnity, galois_act
from modules.errors import DenominatorMismatch, InvalidGaloisElement, NonIntegralInput
from modules.habiro import HabiroElt, ev

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]


def _label(r) -> Fraction:
    return Fraction(r) % 1


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class QZElt:
    """Finite rational combination of the generators e(r), r in Q/Z"""

    terms: Tuple[Tuple[Fraction, Fraction], ...] = ()

    @classmethod
    def from_map(cls, mapping: Union[Mapping, Iterable[Tuple]]) -> "QZElt":
        items = mapping.items() if isinstance(mapping, Mapping) else mapping
        merged: Dict[Fraction, Fraction] = {}
        for r, c in items:
            key = _label(r)
            merged[key] = merged.get(key, Fraction(0)) + Fraction(c)
        return cls(tuple(sorted((r, c) for r, c in merged.items() if c != 0)))

    @classmethod
    def e(cls, r, coeff: Scalar = 1) -> "QZElt":
        return cls.from_map([(r, coeff)])

    @classmethod
    def one(cls) -> "QZElt":
        return cls.e(0)

    @classmethod
    def zero(cls) -> "QZElt":
        return cls()

    @property
    def mapping(self) -> Dict[Fraction, Fraction]:
        return dict(self.terms)

    def coeff(self, r) -> Fraction:
        return self.mapping.get(_label(r), Fraction(0))

    def denominators(self) -> List[int]:
        return sorted({r.denominator for r, _ in self.terms})

    def is_zero(self) -> bool:
        return not self.terms

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for _, c in self.terms)

    def __add__(self, other: "QZElt") -> "QZElt":
        return QZElt.from_map(list(self.terms) + list(other.terms))

    def __neg__(self) -> "QZElt":
        return QZElt(tuple((r, -c) for r, c in self.terms))

    def __sub__(self, other: "QZElt") -> "QZElt":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QZElt.from_map((r, c * other) for r, c in self.terms)
        return QZElt.from_map(
            (r + s, c * d) for r, c in self.terms for s, d in other.terms
        )

    def __rmul__(self, other):
        return self * other

    def star(self) -> "QZElt":
        """Adjoint: e(r)^* = e(-r) with real coefficients"""
        return QZElt.from_map((-r, c) for r, c in self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*e({r})" for r, c in self.terms)

    def to_dict(self) -> list:
        return [{"r": str(r), "c": str(c)} for r, c in self.terms]

    @classmethod
    def from_dict(cls, data: list) -> "QZElt":
        return cls.from_map((Fraction(item["r"]), Fraction(item["c"])) for item in data)


def qz_sigma(x: QZElt, n: int) -> QZElt:
    """e(r) -> e(nr)"""
    if n < 1:
        raise ValueError(f"sigma_n needs n >= 1, got {n}")
    return QZElt.from_map((n * r, c) for r, c in x.terms)


def qz_rho(x: QZElt, n: int) -> QZElt:
    """e(r) -> (1/n) sum of e(s) over the n solutions of ns = r"""
    if n < 1:
        raise ValueError(f"rho_n needs n >= 1, got {n}")
    weight = Fraction(1, n)
    return QZElt.from_map(
        ((r + j) / n, c * weight) for r, c in x.terms for j in range(n)
    )


def idempotent_e(n: int) -> QZElt:
    return qz_rho(QZElt.one(), n)


def qz_galois(x: QZElt, a: int, level: int) -> QZElt:
    """The symmetry e(r) -> e(ar) for a unit a modulo level"""
    if gcd(a, level) != 1:
        raise InvalidGaloisElement(f"gcd({a}, {level}) != 1")
    check_level(x, level)
    return QZElt.from_map((a * r, c) for r, c in x.terms)


def integral_rho_tilde(x: QZElt, n: int) -> QZElt:
    """n * rho_n(x); integral on integral input"""
    if not x.is_integral():
        raise NonIntegralInput(f"integral model needs integer coefficients, got {x}")
    return qz_rho(x, n) * n


def check_level(x: QZElt, level: int):
    bad = [d for d in x.denominators() if level % d]
    if bad:
        raise DenominatorMismatch(f"denominators {bad} do not divide level {level}")


@dataclass(frozen=True)
class BCMonomial:
    """mu_left * mid * mu_right^*"""

    left: int
    mid: QZElt
    right: int

    def __post_init__(self):
        if self.left < 1 or self.right < 1:
            raise ValueError(f"isometry indices must be positive, got {self.left}, {self.right}")

    def normalize(self) -> "BCMonomial":
        """mu_{ga} x mu_{gb}^* = mu_a rho_g(x) mu_b^*"""
        g = gcd(self.left, self.right)
        if g == 1:
            return self
        return BCMonomial(self.left // g, qz_rho(self.mid, g), self.right // g)

    def to_dict(self) -> dict:
        return {"left": self.left, "mid": self.mid.to_dict(), "right": self.right, "coeff": "1"}


@dataclass(frozen=True)
class BCElement:
    """Sum of normalized monomials; at most one monomial per (left, right)"""

    monomials: Tuple[BCMonomial, ...] = ()

    @classmethod
    def from_monomials(cls, monomials: Iterable[BCMonomial]) -> "BCElement":
        merged: Dict[Tuple[int, int], QZElt] = {}
        for m in monomials:
            m = m.normalize()
            key = (m.left, m.right)
            merged[key] = merged.get(key, QZElt.zero()) + m.mid
        return cls(
            tuple(
                BCMonomial(a, mid, b)
                for (a, b), mid in sorted(merged.items())
                if not mid.is_zero()
            )
        )

    @classmethod
    def monomial(cls, left: int, mid: Optional[QZElt] = None, right: int = 1) -> "BCElement":
        return cls.from_monomials([BCMonomial(left, mid or QZElt.one(), right)])

    @classmethod
    def one(cls) -> "BCElement":
        return cls.monomial(1)

    @classmethod
    def mu(cls, n: int) -> "BCElement":
        return cls.monomial(n, QZElt.one(), 1)

    @classmethod
    def mu_star(cls, n: int) -> "BCElement":
        return cls.monomial(1, QZElt.one(), n)

    @classmethod
    def from_qz(cls, x: QZElt) -> "BCElement":
        return cls.monomial(1, x, 1)

    def __add__(self, other: "BCElement") -> "BCElement":
        return BCElement.from_monomials(self.monomials + other.monomials)

    def __neg__(self) -> "BCElement":
        return BCElement(tuple(BCMonomial(m.left, -m.mid, m.right) for m in self.monomials))

    def __sub__(self, other: "BCElement") -> "BCElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BCElement.from_monomials(
                BCMonomial(m.left, m.mid * other, m.right) for m in self.monomials
            )
        return bc_mul(self, other)

    def __rmul__(self, other):
        return self * other

    def star(self) -> "BCElement":
        return BCElement.from_monomials(
            BCMonomial(m.right, m.mid.star(), m.left) for m in self.monomials
        )

    def denominators(self) -> List[int]:
        return sorted({d for m in self.monomials for d in m.mid.denominators()})

    def is_zero(self) -> bool:
        return not self.monomials

    def to_dict(self) -> list:
        return [m.to_dict() for m in self.monomials]

    @classmethod
    def from_dict(cls, data: list) -> "BCElement":
        return cls.from_monomials(
            BCMonomial(int(item["left"]), QZElt.from_dict(item["mid"]) * Fraction(item.get("coeff", "1")), int(item["right"]))
            for item in data
        )


def _monomial_product(u: BCMonomial, v: BCMonomial) -> BCMonomial:
    # mu_b^* mu_c = mu_{c'} mu_{b'}^* with g = gcd(b, c), b = g b', c = g c'
    g = gcd(u.right, v.left)
    b1, c1 = u.right // g, v.left // g
    mid = qz_sigma(u.mid, c1) * qz_sigma(v.mid, b1)
    return BCMonomial(u.left * c1, mid, b1 * v.right).normalize()


def bc_mul(u: BCElement, v: BCElement) -> BCElement:
    return BCElement.from_monomials(
        _monomial_product(a, b) for a in u.monomials for b in v.monomials
    )


@dataclass
class TruncatedMatrix:
    """Operator on span(eps_1..eps_K) with entries in (1/denominator) Z[zeta_order].

    ``valid`` holds the basis indices whose image was computed without
    leaving the cutoff; other columns are meaningless.
    """

    size: int
    order: int
    entries: Dict[Tuple[int, int], CycInt] = field(default_factory=dict)
    denominator: int = 1
    valid: FrozenSet[int] = frozenset()

    def column(self, k: int) -> Dict[int, CycInt]:
        return {i: v for (i, j), v in self.entries.items() if j == k}

    def __matmul__(self, other: "TruncatedMatrix") -> "TruncatedMatrix":
        order = _lcm(self.order, other.order)
        columns: Dict[int, Dict[int, CycInt]] = {}
        for (i, j), v in self.entries.items():
            columns.setdefault(j, {})[i] = v
        out: Dict[Tuple[int, int], CycInt] = {}
        valid = set()
        for k in other.valid:
            col = other.column(k)
            if any(j not in self.valid for j in col):
                continue
            valid.add(k)
            for j, w in col.items():
                for i, v in columns.get(j, {}).items():
                    out[(i, k)] = out.get((i, k), CycInt.zero(order)) + v * w
        return TruncatedMatrix(
            size=self.size,
            order=order,
            entries={key: v for key, v in out.items() if not v.is_zero()},
            denominator=self.denominator * other.denominator,
            valid=frozenset(valid),
        )

    def scaled(self, c: int) -> "TruncatedMatrix":
        return TruncatedMatrix(
            self.size,
            self.order,
            {key: v * c for key, v in self.entries.items()},
            self.denominator,
            self.valid,
        )

    def agrees_with(self, other: "TruncatedMatrix", basis: Optional[Iterable[int]] = None) -> bool:
        """Exact equality of the columns valid for both (or a given sub-basis)"""
        basis = set(basis) if basis is not None else (self.valid & other.valid)
        for k in basis:
            a, b = self.column(k), other.column(k)
            for i in set(a) | set(b):
                lhs = a.get(i, CycInt.zero(self.order)) * other.denominator
                rhs = b.get(i, CycInt.zero(other.order)) * self.denominator
                if lhs != rhs:
                    return False
        return True

    def to_dict(self) -> dict:
        zero = CycInt.zero(self.order)
        return {
            "size": self.size,
            "denominator": str(self.denominator),
            "valid": sorted(self.valid),
            "rows": [
                [self.entries.get((i, j), zero).to_dict() for j in range(1, self.size + 1)]
                for i in range(1, self.size + 1)
            ],
        }


def _root_power(r: Fraction, unit: int, k: int, level: int) -> CycInt:
    """zeta_r^k as an element of Z[zeta_level] under the unit"""
    return CycInt.x_power(int(unit * r * level) * k, level)


def pi_rho(u: BCElement, unit: int, level: int, K: int) -> TruncatedMatrix:
    """Matrix of u on eps_1..eps_K: mu_n eps_k = eps_nk, e(r) eps_k = zeta_r^k eps_k"""
    if gcd(unit, level) != 1:
        raise InvalidGaloisElement(f"unit {unit} is not invertible modulo {level}")
    for m in u.monomials:
        check_level(m.mid, level)
    denominator = 1
    for m in u.monomials:
        for _, c in m.mid.terms:
            denominator = _lcm(denominator, c.denominator)
    entries: Dict[Tuple[int, int], CycInt] = {}
    valid = set(range(1, K + 1))
    for m in u.monomials:
        for k in range(1, K + 1):
            if k % m.right:
                continue
            j = k // m.right
            row = m.left * j
            value = CycInt.zero(level)
            for r, c in m.mid.terms:
                value = value + _root_power(r, unit, j, level) * int(c * denominator)
            if value.is_zero():
                continue
            if row > K:
                valid.discard(k)
                continue
            entries[(row, k)] = entries.get((row, k), CycInt.zero(level)) + value
    logger.debug(f"pi_rho: {len(entries)} entries, {len(valid)}/{K} valid columns")
    return TruncatedMatrix(
        size=K,
        order=level,
        entries={key: v for key, v in entries.items() if not v.is_zero()},
        denominator=denominator,
        valid=frozenset(valid),
    )


def pi_mu_tilde(n: int, level: int, K: int) -> TruncatedMatrix:
    """The integral-model isometry mu~_n eps_m = n eps_{nm}"""
    entries = {(n * m, m): CycInt.from_int(n, level) for m in range(1, K + 1) if n * m <= K}
    valid = frozenset(m for m in range(1, K + 1) if n * m <= K)
    return TruncatedMatrix(size=K, order=level, entries=entries, valid=valid)


def e_operator(zeta: RootOfUnity, f: HabiroElt, K: int) -> TruncatedMatrix:
    """Diagonal operator E_{zeta,f}: eps_n -> ev(f, zeta^n) eps_n"""
    m = zeta.order
    entries = {}
    for n in range(1, K + 1):
        value = ev(f, zeta ** n).embed(m)
        if not value.is_zero():
            entries[(n, n)] = value
    return TruncatedMatrix(size=K, order=m, entries=entries, valid=frozenset(range(1, K + 1)))


def galois_matrix(a: int, A: TruncatedMatrix) -> TruncatedMatrix:
    """Apply the Galois automorphism x -> x^a to every entry"""
    return TruncatedMatrix(
        A.size,
        A.order,
        {key: galois_act(a, v) for key, v in A.entries.items()},
        A.denominator,
        A.valid,
    )
