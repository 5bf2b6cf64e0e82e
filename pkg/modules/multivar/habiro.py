"""Multivariable Habiro quotients Z[q_1..q_n]/I_{n,N} and the M_n(Z)^+ action.

I_{n,N} is generated by (q_1)_N, ..., (q_n)_N. Each generator involves a
single variable with leading coefficient +-1, so reducing one variable at
a time gives a canonical representative with every exponent below
N(N+1)/2. Each q_i is invertible modulo its generator, which is how
negative exponents from sigma_alpha are absorbed.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import gcd
from typing import Dict, Iterable, List, Sequence, Tuple

from sympy import Poly, ZZ, symbols

from modules.cyclotomic import CycInt, RootOfUnity
from modules.errors import LevelNotPreserved, OrderExceedsLevel
from modules.habiro import parse_poly, pochhammer, power_table
from modules.normal_forms import IntMatrix

logger = logging.getLogger(__name__)

Exponents = Tuple[int, ...]


def variables(n: int):
    return symbols(" ".join(f"q{i}" for i in range(1, n + 1)), seq=True)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def reduce_multi(terms: Iterable[Tuple[Exponents, int]], n: int, N: int) -> Tuple[Tuple[Exponents, int], ...]:
    """Canonical form of sum c * q^e modulo I_{n,N}; exponents may be negative"""
    table = power_table(N)
    D = table.D
    current: Dict[Exponents, int] = {}
    for e, c in terms:
        if c:
            current[e] = current.get(e, 0) + c
    for i in range(n):
        nxt: Dict[Exponents, int] = {}
        for e, c in current.items():
            if not c:
                continue
            if 0 <= e[i] < D:
                nxt[e] = nxt.get(e, 0) + c
                continue
            for j, v in enumerate(table.row(e[i])):
                if v:
                    key = e[:i] + (j,) + e[i + 1:]
                    nxt[key] = nxt.get(key, 0) + c * v
        current = nxt
    return tuple(sorted((e, c) for e, c in current.items() if c))


@dataclass(frozen=True)
class MultiHabiroElt:
    nvars: int
    level: int
    terms: Tuple[Tuple[Exponents, int], ...]

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[Sequence[int], int]], nvars: int, level: int) -> "MultiHabiroElt":
        return cls(nvars, level, reduce_multi(((tuple(e), c) for e, c in terms), nvars, level))

    @classmethod
    def from_poly(cls, P: Poly, nvars: int, level: int) -> "MultiHabiroElt":
        return cls.from_terms(((e, int(c)) for e, c in P.terms()), nvars, level)

    @classmethod
    def parse(cls, text: str, nvars: int, level: int) -> "MultiHabiroElt":
        return cls.from_poly(parse_poly(text, variables(nvars)), nvars, level)

    @classmethod
    def from_int(cls, c: int, nvars: int, level: int) -> "MultiHabiroElt":
        return cls.from_terms([((0,) * nvars, c)], nvars, level)

    @classmethod
    def variable(cls, i: int, nvars: int, level: int) -> "MultiHabiroElt":
        """q_i, 1-based"""
        e = [0] * nvars
        e[i - 1] = 1
        return cls.from_terms([(e, 1)], nvars, level)

    @classmethod
    def generator(cls, i: int, nvars: int, level: int) -> "MultiHabiroElt":
        """(q_i)_N itself, kept unreduced so that tests can feed it back in"""
        out = []
        for (k,), c in pochhammer(level).terms():
            e = [0] * nvars
            e[i - 1] = k
            out.append((tuple(e), int(c)))
        return cls(nvars, level, tuple(sorted(out)))

    @property
    def mapping(self) -> Dict[Exponents, int]:
        return dict(self.terms)

    def _check(self, other: "MultiHabiroElt"):
        if self.nvars != other.nvars or self.level != other.level:
            raise ValueError(
                f"mismatched rings: ({self.nvars}, {self.level}) vs ({other.nvars}, {other.level})"
            )

    def __add__(self, other: "MultiHabiroElt") -> "MultiHabiroElt":
        self._check(other)
        return MultiHabiroElt.from_terms(self.terms + other.terms, self.nvars, self.level)

    def __neg__(self) -> "MultiHabiroElt":
        return MultiHabiroElt(self.nvars, self.level, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "MultiHabiroElt") -> "MultiHabiroElt":
        return self + (-other)

    def __mul__(self, other: "MultiHabiroElt") -> "MultiHabiroElt":
        self._check(other)
        product = (
            (tuple(a + b for a, b in zip(e1, e2)), c1 * c2)
            for e1, c1 in self.terms
            for e2, c2 in other.terms
        )
        return MultiHabiroElt.from_terms(product, self.nvars, self.level)

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        gens = variables(self.nvars)
        return str(Poly.from_dict(self.mapping, *gens, domain=ZZ).as_expr())

    def to_dict(self) -> dict:
        return {
            "nvars": self.nvars,
            "level": self.level,
            "terms": [{"exp": list(e), "c": str(c)} for e, c in self.terms],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MultiHabiroElt":
        return cls.from_terms(
            ((tuple(item["exp"]), int(item["c"])) for item in data["terms"]),
            int(data["nvars"]),
            int(data["level"]),
        )


def _substitute(f: MultiHabiroElt, alpha: IntMatrix) -> List[Tuple[Exponents, int]]:
    # q^e -> prod_i (q^{alpha_i})^{e_i}: the new exponent row is e . alpha
    rows = alpha.rows
    n = f.nvars
    return [
        (tuple(sum(e[i] * rows[i][j] for i in range(n)) for j in range(n)), c)
        for e, c in f.terms
    ]


def preserves_level(alpha: IntMatrix, N: int) -> bool:
    """Whether sigma_alpha maps I_{n,N} into itself"""
    n = alpha.n
    for i in range(1, n + 1):
        image = reduce_multi(_substitute(MultiHabiroElt.generator(i, n, N), alpha), n, N)
        if image:
            return False
    return True


def multi_sigma(f: MultiHabiroElt, alpha: IntMatrix, strict: bool = False) -> MultiHabiroElt:
    """q_i -> prod_j q_j^{alpha_ij}, reduced at the same level"""
    if alpha.n != f.nvars:
        raise ValueError(f"matrix size {alpha.n} does not match {f.nvars} variables")
    if alpha.det <= 0:
        raise ValueError(f"sigma_alpha needs det > 0, got {alpha.det}")
    if strict and not preserves_level(alpha, f.level):
        raise LevelNotPreserved(f"sigma_alpha for {alpha.rows} does not preserve I_{{{f.nvars},{f.level}}}")
    return MultiHabiroElt.from_terms(_substitute(f, alpha), f.nvars, f.level)


def multi_ev(f: MultiHabiroElt, Z: Sequence[RootOfUnity]) -> CycInt:
    """Evaluation at a point of roots of unity, landing in Z[zeta_M], M = lcm of orders"""
    if len(Z) != f.nvars:
        raise ValueError(f"need {f.nvars} roots of unity, got {len(Z)}")
    for zeta in Z:
        if zeta.order > f.level:
            raise OrderExceedsLevel(f"root {zeta} has order {zeta.order} > level {f.level}")
    M = 1
    for zeta in Z:
        M = _lcm(M, zeta.order)
    steps = [zeta.numerator * (M // zeta.order) for zeta in Z]
    return CycInt.from_terms(
        ((sum(k * s for k, s in zip(e, steps)), c) for e, c in f.terms), M
    )


def point_power(Z: Sequence[RootOfUnity], alpha: IntMatrix) -> List[RootOfUnity]:
    """(Z^alpha)_i = prod_j zeta_j^{alpha_ij}"""
    out = []
    for row in alpha.rows:
        acc = RootOfUnity.of(0)
        for a, zeta in zip(row, Z):
            acc = acc * zeta ** a
        out.append(acc)
    return out
