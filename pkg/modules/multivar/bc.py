"""The group ring Q[(Q/Z)^n], its M_n(Z)^+ endomorphisms and a lattice representation.

The semigroup acts on (Q/Z)^n through the transpose: sigma_alpha sends
e(r) to e(alpha^T r), and rho_alpha averages over the det(alpha) solutions
of alpha^T s = r. The representation pi_rep below pins this convention:
mu_alpha^* e(r) mu_alpha = sigma_alpha(e(r)) and mu_alpha e(r) mu_alpha^* =
rho_alpha(e(r)) hold on its validity columns.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from scipy.special import zeta
from sympy import Matrix

from modules.bc_core import TruncatedMatrix
from modules.cyclotomic import CycInt
from modules.errors import BetaOutOfRange, DenominatorMismatch, InvalidGaloisElement, NonIntegralInput
from modules.normal_forms import IntMatrix, hnf_count, snf, unimodular_inverse

logger = logging.getLogger(__name__)

Vector = Tuple[Fraction, ...]
Scalar = Union[int, Fraction]


def _label(r: Sequence) -> Vector:
    return tuple(Fraction(v) % 1 for v in r)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class MultiQZElt:
    """Finite rational combination of e(r_1, ..., r_n), r in (Q/Z)^n"""

    nvars: int
    terms: Tuple[Tuple[Vector, Fraction], ...] = ()

    @classmethod
    def from_map(cls, nvars: int, mapping: Union[Mapping, Iterable[Tuple]]) -> "MultiQZElt":
        items = mapping.items() if isinstance(mapping, Mapping) else mapping
        merged: Dict[Vector, Fraction] = {}
        for r, c in items:
            if len(r) != nvars:
                raise ValueError(f"label {r} does not have {nvars} components")
            key = _label(r)
            merged[key] = merged.get(key, Fraction(0)) + Fraction(c)
        return cls(nvars, tuple(sorted((r, c) for r, c in merged.items() if c != 0)))

    @classmethod
    def e(cls, r: Sequence, coeff: Scalar = 1) -> "MultiQZElt":
        return cls.from_map(len(r), [(tuple(r), coeff)])

    @classmethod
    def one(cls, nvars: int) -> "MultiQZElt":
        return cls.e((0,) * nvars)

    @property
    def mapping(self) -> Dict[Vector, Fraction]:
        return dict(self.terms)

    def coeff(self, r: Sequence) -> Fraction:
        return self.mapping.get(_label(r), Fraction(0))

    def denominators(self) -> List[int]:
        return sorted({v.denominator for r, _ in self.terms for v in r})

    def is_zero(self) -> bool:
        return not self.terms

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for _, c in self.terms)

    def __add__(self, other: "MultiQZElt") -> "MultiQZElt":
        return MultiQZElt.from_map(self.nvars, list(self.terms) + list(other.terms))

    def __neg__(self) -> "MultiQZElt":
        return MultiQZElt(self.nvars, tuple((r, -c) for r, c in self.terms))

    def __sub__(self, other: "MultiQZElt") -> "MultiQZElt":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MultiQZElt.from_map(self.nvars, ((r, c * other) for r, c in self.terms))
        return MultiQZElt.from_map(
            self.nvars,
            (
                (tuple(a + b for a, b in zip(r, s)), c * d)
                for r, c in self.terms
                for s, d in other.terms
            ),
        )

    def __rmul__(self, other):
        return self * other

    def star(self) -> "MultiQZElt":
        return MultiQZElt.from_map(self.nvars, ((tuple(-v for v in r), c) for r, c in self.terms))

    def to_dict(self) -> list:
        return [{"r": [str(v) for v in r], "c": str(c)} for r, c in self.terms]

    @classmethod
    def from_dict(cls, nvars: int, data: list) -> "MultiQZElt":
        return cls.from_map(
            nvars, ((tuple(Fraction(v) for v in item["r"]), Fraction(item["c"])) for item in data)
        )


def preimage_solutions(alpha: IntMatrix, r: Sequence) -> List[Vector]:
    """All s in (Q/Z)^n with alpha s = r mod Z^n; there are exactly det(alpha).

    With alpha = U D V, the system becomes D t = U^{-1} r for t = V s.
    """
    if alpha.det <= 0:
        raise ValueError(f"preimage_solutions needs det > 0, got {alpha.det}")
    U, D, V = snf(alpha)
    u_inv = IntMatrix.from_array(unimodular_inverse(U.array))
    v_inv = IntMatrix.from_array(unimodular_inverse(V.array))
    target = u_inv.apply([Fraction(v) for v in r])
    diag = [D.rows[i][i] for i in range(alpha.n)]
    out = set()
    for shifts in itertools.product(*(range(d) for d in diag)):
        t = [(target[i] + shifts[i]) / d for i, d in enumerate(diag)]
        out.add(_label(v_inv.apply(t)))
    return sorted(out)


def multi_sigma_qz(x: MultiQZElt, alpha: IntMatrix) -> MultiQZElt:
    """e(r) -> e(alpha^T r)"""
    at = alpha.T
    return MultiQZElt.from_map(x.nvars, ((at.apply(r), c) for r, c in x.terms))


def multi_rho(x: MultiQZElt, alpha: IntMatrix) -> MultiQZElt:
    """e(r) -> (1/det alpha) sum of e(s) over alpha^T s = r"""
    weight = Fraction(1, alpha.det)
    at = alpha.T
    return MultiQZElt.from_map(
        x.nvars,
        ((s, c * weight) for r, c in x.terms for s in preimage_solutions(at, r)),
    )


def multi_rho_tilde(x: MultiQZElt, alpha: IntMatrix) -> MultiQZElt:
    """det(alpha) * rho_alpha(x); integral on integral input"""
    if not x.is_integral():
        raise NonIntegralInput(f"integral model needs integer coefficients, got {x.to_dict()}")
    return multi_rho(x, alpha) * alpha.det


def check_level(x: MultiQZElt, level: int):
    bad = [d for d in x.denominators() if level % d]
    if bad:
        raise DenominatorMismatch(f"denominators {bad} do not divide level {level}")


@dataclass(frozen=True)
class MultiBCMonomial:
    """mu_left * mid * mu_right^*"""

    left: IntMatrix
    mid: MultiQZElt
    right: IntMatrix

    def star(self) -> "MultiBCMonomial":
        return MultiBCMonomial(self.right, self.mid.star(), self.left)

    def to_dict(self) -> dict:
        return {"left": self.left.to_dict(), "mid": self.mid.to_dict(), "right": self.right.to_dict()}


def mu(alpha: IntMatrix) -> MultiBCMonomial:
    return MultiBCMonomial(alpha, MultiQZElt.one(alpha.n), IntMatrix.identity(alpha.n))


def mu_star(alpha: IntMatrix) -> MultiBCMonomial:
    return mu(alpha).star()


def from_qz(x: MultiQZElt) -> MultiBCMonomial:
    eye = IntMatrix.identity(x.nvars)
    return MultiBCMonomial(eye, x, eye)


def _preimage(alpha: IntMatrix, w: Sequence[int]) -> Optional[Vector]:
    """alpha^{-1} w when it is an integer vector"""
    d = alpha.det
    image = Matrix(alpha.rows).adjugate() * Matrix(list(w))
    if any(int(v) % d for v in image):
        return None
    return tuple(int(v) // d for v in image)


def _character(r: Vector, w: Sequence[int], unit: int, level: int) -> CycInt:
    """e(unit * r.w) in Z[zeta_level]"""
    k = sum(v * level * wi for v, wi in zip(r, w)) * unit
    return CycInt.x_power(int(k), level)


def pi_rep(
    u: Union[MultiBCMonomial, Iterable[MultiBCMonomial]],
    unit: int,
    level: int,
    basis: Sequence[Sequence[int]],
) -> TruncatedMatrix:
    """Matrix of u on span(eps_v : v in basis), v integer vectors.

    mu_alpha eps_v = eps_{alpha v}, mu_alpha^* eps_w = eps_{alpha^{-1} w}
    (zero off alpha Z^n) and e(r) eps_v = e(unit * r.v) eps_v. Basis index k
    is basis[k-1].
    """
    if gcd(unit, level) != 1:
        raise InvalidGaloisElement(f"unit {unit} is not invertible modulo {level}")
    monomials = [u] if isinstance(u, MultiBCMonomial) else list(u)
    index = {tuple(int(c) for c in v): k for k, v in enumerate(basis, start=1)}
    if len(index) != len(basis):
        raise ValueError("basis vectors must be distinct")
    denominator = 1
    for m in monomials:
        check_level(m.mid, level)
        for _, c in m.mid.terms:
            denominator = _lcm(denominator, c.denominator)
    entries: Dict[Tuple[int, int], CycInt] = {}
    valid = set(index.values())
    for m in monomials:
        for w, k in index.items():
            v = _preimage(m.right, w)
            if v is None:
                continue
            if v not in index:
                valid.discard(k)
                continue
            value = CycInt.zero(level)
            for r, c in m.mid.terms:
                value = value + _character(r, v, unit, level) * int(c * denominator)
            if value.is_zero():
                continue
            row = index.get(tuple(m.left.apply(v)))
            if row is None:
                valid.discard(k)
                continue
            entries[(row, k)] = entries.get((row, k), CycInt.zero(level)) + value
    logger.debug(f"pi_rep: {len(entries)} entries, {len(valid)}/{len(basis)} valid columns")
    return TruncatedMatrix(
        size=len(basis),
        order=level,
        entries={key: v for key, v in entries.items() if not v.is_zero()},
        denominator=denominator,
        valid=frozenset(valid),
    )


def lattice_box(n: int, bound: int) -> List[Tuple[int, ...]]:
    """All integer vectors with entries in [-bound, bound]"""
    return list(itertools.product(range(-bound, bound + 1), repeat=n))


@dataclass
class II1Partition:
    """HNF-weighted trace sum against the closed product of zeta values"""

    n: int
    beta: float
    cap: int
    value: float
    tail_bound: float
    closed_form: float
    product_truncated: float
    product_tail: float

    def agrees(self) -> bool:
        """Both truncations sit within their own tail of the closed product"""
        return (
            0 <= self.closed_form - self.value <= self.tail_bound + 1e-12
            and 0 <= self.closed_form - self.product_truncated <= self.product_tail + 1e-12
        )

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "beta": self.beta,
            "cap": self.cap,
            "value": self.value,
            "tail_bound": self.tail_bound,
            "closed_form": self.closed_form,
            "product_truncated": self.product_truncated,
            "product_tail": self.product_tail,
        }


def partition_II1(n: int, beta: float, cap: int) -> II1Partition:
    """Sum over d <= cap of #HNF(n, d) * d^-beta, next to prod_k zeta(beta - k).

    The tail is bounded with Rankin's trick at eps = (beta - n) / 2:
    sum_{d > D} c(d) d^-beta <= D^-eps prod_k zeta(beta - eps - k).
    """
    if n < 1 or cap < 1:
        raise ValueError(f"partition_II1 needs n >= 1 and cap >= 1, got n={n}, cap={cap}")
    if beta <= n:
        raise BetaOutOfRange(f"the type II_1 trace needs beta > {n}, got {beta}")
    value = sum(hnf_count(n, d) * float(d) ** (-beta) for d in range(1, cap + 1))
    closed = 1.0
    for k in range(n):
        closed *= float(zeta(beta - k))
    eps = (beta - n) / 2
    rankin = float(cap) ** (-eps)
    for k in range(n):
        rankin *= float(zeta(beta - eps - k))
    partials = [sum(float(d) ** (-(beta - k)) for d in range(1, cap + 1)) for k in range(n)]
    product_truncated = 1.0
    for s in partials:
        product_truncated *= s
    product_tail = 0.0
    for k in range(n):
        term = float(cap) ** (1 - (beta - k)) / (beta - k - 1)
        for j in range(n):
            if j != k:
                term *= float(zeta(beta - j))
        product_tail += term
    logger.info(f"partition_II1(n={n}, beta={beta}, cap={cap}) = {value:.12g}, closed {closed:.12g}")
    return II1Partition(n, beta, cap, value, rankin, closed, product_truncated, product_tail)
