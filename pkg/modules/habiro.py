"""Finite-level Habiro ring arithmetic.

An element at level N is a polynomial in q reduced modulo the q-Pochhammer
symbol (q)_N = (1-q)(1-q^2)...(1-q^N). The leading coefficient of (q)_N is
(-1)^N, so division is exact over Z and every class has a unique
representative of degree < N(N+1)/2.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, gcd
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np
from sympy import Poly, ZZ, symbols
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication,
    parse_expr,
    standard_transformations,
)
from sympy.polys.polyerrors import CoercionFailed, PolynomialError

from modules.cyclotomic import CycInt, RootOfUnity, cyclotomic_poly, eval_poly, poly_coeffs, x
from modules.errors import (
    NonIntegralInput,
    NotInRange,
    OrderExceedsLevel,
    OrderTimesDepthExceedsLevel,
)
from modules.normal_forms import integer_rank, solve_integer

logger = logging.getLogger(__name__)

q = symbols("q")

_TRANSFORMS = standard_transformations + (convert_xor, implicit_multiplication)


def habiro_degree(N: int) -> int:
    return N * (N + 1) // 2


@lru_cache(maxsize=None)
def pochhammer(N: int) -> Poly:
    """(q)_N expanded over Z"""
    if N < 1:
        raise ValueError(f"pochhammer needs N >= 1, got {N}")
    result = Poly(1, q, domain=ZZ)
    for k in range(1, N + 1):
        result = result * Poly(1 - q**k, q, domain=ZZ)
    return result


@lru_cache(maxsize=None)
def _pochhammer_coeffs(N: int) -> Tuple[int, ...]:
    return tuple(poly_coeffs(pochhammer(N)))


class _PowerTable:
    """Rows q^e mod (q)_N for integer e, extended on demand in both directions"""

    def __init__(self, N: int):
        self.N = N
        self.D = habiro_degree(N)
        p = _pochhammer_coeffs(N)
        self._lead = p[-1]
        self._low = p[:-1]
        # q^{-1} = -((q)_N - 1)/q
        self._inverse = tuple(-c for c in p[1:])
        self._pos: List[Tuple[int, ...]] = [self._unit(0)]
        self._neg: List[Tuple[int, ...]] = [self._unit(0)]

    def _unit(self, k: int) -> Tuple[int, ...]:
        row = [0] * self.D
        row[k] = 1
        return tuple(row)

    def _times_q(self, row: Sequence[int]) -> Tuple[int, ...]:
        top = row[-1]
        shifted = [0] + list(row[:-1])
        if top:
            shifted = [s - top * self._lead * c for s, c in zip(shifted, self._low)]
        return tuple(shifted)

    def _times_q_inverse(self, row: Sequence[int]) -> Tuple[int, ...]:
        constant = row[0]
        shifted = list(row[1:]) + [0]
        if constant:
            shifted = [s + constant * c for s, c in zip(shifted, self._inverse)]
        return tuple(shifted)

    def row(self, e: int) -> Tuple[int, ...]:
        if e >= 0:
            while len(self._pos) <= e:
                self._pos.append(self._times_q(self._pos[-1]))
            return self._pos[e]
        while len(self._neg) <= -e:
            self._neg.append(self._times_q_inverse(self._neg[-1]))
        return self._neg[-e]


@lru_cache(maxsize=None)
def power_table(N: int) -> _PowerTable:
    return _PowerTable(N)


def reduce_terms(terms: Iterable[Tuple[int, int]], N: int) -> Tuple[int, ...]:
    """Canonical coefficients of sum c * q^e mod (q)_N; e may be negative"""
    table = power_table(N)
    out = [0] * table.D
    for e, c in terms:
        if not c:
            continue
        if 0 <= e < table.D:
            out[e] += c
            continue
        for i, v in enumerate(table.row(e)):
            if v:
                out[i] += c * v
    return tuple(out)


def parse_poly(text: str, variables: Sequence = (q,)) -> Poly:
    """Parse text such as ``"1 - q - q^2 + q^3"`` into an integer polynomial"""
    local = {str(v): v for v in variables}
    try:
        expr = parse_expr(text, local_dict=local, transformations=_TRANSFORMS)
        return Poly(expr, *variables, domain=ZZ)
    except (CoercionFailed, PolynomialError) as exc:
        raise NonIntegralInput(f"'{text}' is not an integer polynomial in {list(local)}") from exc
    except (SyntaxError, TypeError) as exc:
        raise ValueError(f"Cannot parse polynomial '{text}'") from exc


PolyInput = Union[Poly, Sequence[int], int]


def _coeffs_of(P: PolyInput) -> List[int]:
    if isinstance(P, int):
        return [P]
    if isinstance(P, Poly):
        if P.is_zero:
            return [0]
        return poly_coeffs(P)
    return [int(c) for c in P]


@dataclass(frozen=True)
class HabiroElt:
    """Class of a polynomial in Z[q]/((q)_N), stored as its canonical representative"""

    level: int
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        if self.level < 1:
            raise ValueError(f"level must be positive, got {self.level}")
        if len(self.coeffs) != habiro_degree(self.level):
            raise ValueError(
                f"level {self.level} needs {habiro_degree(self.level)} coefficients, "
                f"got {len(self.coeffs)}"
            )

    @classmethod
    def from_poly(cls, P: PolyInput, level: int) -> "HabiroElt":
        return reduce(P, level)

    @classmethod
    def from_int(cls, c: int, level: int) -> "HabiroElt":
        return reduce([c], level)

    @classmethod
    def q(cls, level: int) -> "HabiroElt":
        return reduce([0, 1], level)

    @classmethod
    def parse(cls, text: str, level: int) -> "HabiroElt":
        return reduce(parse_poly(text), level)

    @property
    def rep(self) -> Poly:
        return Poly(list(reversed(self.coeffs)), q, domain=ZZ)

    def project(self, K: int) -> "HabiroElt":
        return project(self, K)

    def _coerce(self, other) -> Tuple["HabiroElt", "HabiroElt"]:
        if isinstance(other, int):
            other = HabiroElt.from_int(other, self.level)
        if not isinstance(other, HabiroElt):
            return NotImplemented
        level = min(self.level, other.level)
        return self.project(level), other.project(level)

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return HabiroElt(a.level, tuple(u + v for u, v in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "HabiroElt":
        return HabiroElt(self.level, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, int):
            other = HabiroElt.from_int(other, self.level)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return reduce(a.rep * b.rep, a.level)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "HabiroElt":
        if k < 0:
            raise ValueError("negative powers are only defined for q, see q_inverse")
        result = HabiroElt.from_int(1, self.level)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self) -> str:
        return str(self.rep.as_expr())

    def to_dict(self) -> dict:
        return {"level": self.level, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_dict(cls, data: dict) -> "HabiroElt":
        return cls(int(data["level"]), tuple(int(c) for c in data["coeffs"]))


def reduce(P: PolyInput, N: int) -> HabiroElt:
    """Remainder of P modulo (q)_N"""
    return HabiroElt(N, reduce_terms(enumerate(_coeffs_of(P)), N))


def project(f: HabiroElt, K: int) -> HabiroElt:
    """Image under Z[q]/((q)_N) -> Z[q]/((q)_K), K <= N"""
    if K > f.level:
        raise ValueError(f"cannot project level {f.level} up to level {K}")
    if K == f.level:
        return f
    return HabiroElt(K, reduce_terms(enumerate(f.coeffs), K))


def sigma_n(f: HabiroElt, n: int) -> HabiroElt:
    """q -> q^n at the same level"""
    if n < 1:
        raise ValueError(f"sigma_n needs n >= 1, got {n}")
    if n == 1:
        return f
    return HabiroElt(f.level, reduce_terms(((n * j, c) for j, c in enumerate(f.coeffs)), f.level))


@lru_cache(maxsize=None)
def sigma_matrix(n: int, K: int) -> Tuple[Tuple[int, ...], ...]:
    """Integer matrix of sigma_n on Z[q]/((q)_K); column j is sigma_n(q^j)"""
    D = habiro_degree(K)
    table = power_table(K)
    columns = [table.row(n * j) for j in range(D)]
    return tuple(tuple(columns[j][i] for j in range(D)) for i in range(D))


def sigma_is_injective(n: int, K: int) -> bool:
    """Whether sigma_n is injective on Z[q]/((q)_K).

    It is when n is prime to every order <= K; otherwise classes
    vanishing at the n-th powers can die.
    """
    A = np.array(sigma_matrix(n, K), dtype=object)
    return integer_rank(A.T) == habiro_degree(K)


def eta_n(f: HabiroElt, n: int, K: int) -> HabiroElt:
    """A level-K element h with sigma_n(h) = project(f, K), or NotInRange"""
    if K > f.level:
        raise ValueError(f"target level {K} exceeds level {f.level}")
    target = project(f, K).coeffs
    A = np.array(sigma_matrix(n, K), dtype=object)
    solution = solve_integer(A, target)
    if solution is None:
        raise NotInRange(f"{f} is not in the image of sigma_{n} at level {K}")
    logger.debug(f"eta_{n} at level {K}: solved {len(target)}x{len(target)} lattice system")
    return HabiroElt(K, tuple(solution))


def q_inverse(N: int) -> HabiroElt:
    """The inverse of q modulo (q)_N (it exists since (q)_N has constant term 1)"""
    return HabiroElt(N, power_table(N).row(-1))


def ev(f: HabiroElt, zeta: RootOfUnity) -> CycInt:
    """Evaluation at a root of unity whose order is at most the level"""
    if zeta.order > f.level:
        raise OrderExceedsLevel(
            f"root {zeta} has order {zeta.order} > level {f.level}"
        )
    return eval_poly(f.coeffs, zeta)


def taylor(f: HabiroElt, zeta: RootOfUnity, i: int) -> List[CycInt]:
    """First i coefficients of f in powers of (q - zeta).

    Coefficient k is sum_j a_j C(j, k) zeta^(j-k).
    """
    if i * zeta.order >= f.level:
        raise OrderTimesDepthExceedsLevel(
            f"depth {i} times order {zeta.order} must stay below level {f.level}"
        )
    m, a = zeta.order, zeta.numerator
    out = []
    for k in range(i):
        terms = ((a * (j - k), c * comb(j, k)) for j, c in enumerate(f.coeffs) if j >= k and c)
        out.append(CycInt.from_terms(terms, m))
    return out


def taylor_of_sigma(f: HabiroElt, zeta: RootOfUnity, n: int, i: int) -> List[CycInt]:
    return taylor(sigma_n(f, n), zeta, i)


def taylor_product(u: Sequence[CycInt], v: Sequence[CycInt], i: int) -> List[CycInt]:
    """Product of two Taylor vectors truncated at (q - zeta)^i"""
    out = []
    for k in range(i):
        total = u[0] * v[k]
        for j in range(1, k + 1):
            total = total + u[j] * v[k - j]
        out.append(total)
    return out


def cyclotomic_factorization_check(N: int) -> bool:
    """(q)_N = (-1)^N prod_{d <= N} Phi_d^(N // d) as polynomials"""
    product = Poly(1, q, domain=ZZ)
    for d in range(1, N + 1):
        phi_d = Poly(cyclotomic_poly(d).as_expr().subs(x, q), q, domain=ZZ)
        product = product * phi_d ** (N // d)
    return pochhammer(N) == product * (-1) ** N


def factorial_ideal_check(N: int) -> bool:
    """(1 - q^(N!))^N lies in the ideal generated by (q)_N"""
    base = Poly(1 - q ** factorial(N), q, domain=ZZ)
    return reduce(base**N, N).is_zero()


@dataclass(frozen=True)
class FracHabiroElt:
    """f(q^scale) in the direct limit of the sigma_n system"""

    base: HabiroElt
    scale: Fraction

    def __post_init__(self):
        object.__setattr__(self, "scale", Fraction(self.scale))
        if self.scale <= 0:
            raise ValueError(f"scale must be a positive rational, got {self.scale}")

    def normalize(self) -> "FracHabiroElt":
        """Absorb the numerator of the scale into the base through sigma"""
        return FracHabiroElt(sigma_n(self.base, self.scale.numerator), Fraction(1, self.scale.denominator))

    def to_dict(self) -> dict:
        return {"base": self.base.to_dict(), "scale": str(self.scale)}

    @classmethod
    def from_dict(cls, data: dict) -> "FracHabiroElt":
        return cls(HabiroElt.from_dict(data["base"]), Fraction(data["scale"]))


def frac_act(x: FracHabiroElt, r: Union[Fraction, int, str]) -> FracHabiroElt:
    """q -> q^r on the direct limit"""
    r = Fraction(r)
    if r <= 0:
        raise ValueError(f"frac_act needs a positive rational, got {r}")
    return FracHabiroElt(x.base, x.scale * r)


def frac_common_scale(x: FracHabiroElt, y: FracHabiroElt) -> Tuple[int, HabiroElt, HabiroElt]:
    """Rewrite both as polynomials in t = q^(1/L) for the common denominator L"""
    L = x.scale.denominator * y.scale.denominator // gcd(x.scale.denominator, y.scale.denominator)
    fx = sigma_n(x.base, int(x.scale * L))
    gy = sigma_n(y.base, int(y.scale * L))
    return L, fx, gy


def frac_eq(x: FracHabiroElt, y: FracHabiroElt, K: int) -> bool:
    if K < 1:
        raise ValueError(f"comparison level must be positive, got {K}")
    _, fx, gy = frac_common_scale(x, y)
    level = min(K, fx.level, gy.level)
    return project(fx, level) == project(gy, level)
