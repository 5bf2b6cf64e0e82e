"""Finite-level convolution algebra of the groupoid of pairs (alpha, rho).

An arrow is alpha in GL_n(Q)^+ together with its source rho and target
alpha(rho), both reduced mod a fixed level N. Functions with finite
support multiply by summing over composable pairs, so arrows coming from
adjoints (rational alpha) never need to act on a point directly.
"""

from __future__ import annotations

import cmath
import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, Sequence, Tuple

from sympy import ImmutableMatrix, Rational, eye

from modules.errors import BetaOutOfRange
from modules.normal_forms import IntMatrix, hnf_count, hnf_enumerate

logger = logging.getLogger(__name__)

Point = Tuple[int, ...]


@dataclass(frozen=True)
class Arrow:
    alpha: ImmutableMatrix
    source: Point
    target: Point

    @property
    def det(self) -> Rational:
        return self.alpha.det()

    def inverse(self) -> "Arrow":
        return Arrow(ImmutableMatrix(self.alpha.inv()), self.target, self.source)

    def to_dict(self) -> dict:
        return {
            "alpha": [[str(v) for v in self.alpha.row(i)] for i in range(self.alpha.rows)],
            "source": list(self.source),
            "target": list(self.target),
        }


def arrow(alpha: IntMatrix, source: Sequence[int], level: int) -> Arrow:
    """The arrow (alpha, rho) for an integer matrix, target alpha(rho) mod level"""
    if alpha.det <= 0:
        raise ValueError(f"arrows need det > 0, got {alpha.det}")
    src = tuple(int(v) % level for v in source)
    tgt = tuple(int(v) % level for v in alpha.apply(src))
    return Arrow(ImmutableMatrix(alpha.rows), src, tgt)


def unit_arrow(point: Sequence[int], level: int) -> Arrow:
    p = tuple(int(v) % level for v in point)
    return Arrow(ImmutableMatrix(eye(len(p))), p, p)


def compose(a1: Arrow, a2: Arrow) -> Arrow:
    """a1 after a2; requires source(a1) == target(a2)"""
    if a1.source != a2.target:
        raise ValueError(f"arrows are not composable: {a1.source} != {a2.target}")
    return Arrow(ImmutableMatrix(a1.alpha * a2.alpha), a2.source, a1.target)


@dataclass
class GroupoidFunction:
    """Finitely supported complex function on arrows at level N"""

    nvars: int
    level: int
    values: Dict[Arrow, complex] = field(default_factory=dict)

    @classmethod
    def delta(cls, a: Arrow, level: int, value: complex = 1.0) -> "GroupoidFunction":
        return cls(len(a.source), level, {a: complex(value)})

    @classmethod
    def on_units(cls, nvars: int, level: int, fn) -> "GroupoidFunction":
        """fn(point) on every unit arrow (1, point), point in (Z/N)^n"""
        values = {}
        for point in _points(nvars, level):
            v = complex(fn(point))
            if v:
                values[unit_arrow(point, level)] = v
        return cls(nvars, level, values)

    def __call__(self, a: Arrow) -> complex:
        return self.values.get(a, 0j)

    def unit_value(self, point: Sequence[int]) -> complex:
        return self(unit_arrow(point, self.level))

    def _check(self, other: "GroupoidFunction"):
        if (self.nvars, self.level) != (other.nvars, other.level):
            raise ValueError("groupoid functions live at different levels")

    def __add__(self, other: "GroupoidFunction") -> "GroupoidFunction":
        self._check(other)
        out = dict(self.values)
        for a, v in other.values.items():
            out[a] = out.get(a, 0j) + v
        return GroupoidFunction(self.nvars, self.level, {a: v for a, v in out.items() if v})

    def __mul__(self, other: "GroupoidFunction") -> "GroupoidFunction":
        return convolve(self, other)

    def star(self) -> "GroupoidFunction":
        return adjoint(self)

    def close_to(self, other: "GroupoidFunction", tol: float = 1e-12) -> bool:
        keys = set(self.values) | set(other.values)
        return all(abs(self(a) - other(a)) <= tol for a in keys)


def _points(nvars: int, level: int) -> Iterable[Point]:
    if nvars == 0:
        yield ()
        return
    for head in range(level):
        for rest in _points(nvars - 1, level):
            yield (head,) + rest


def convolve(f1: GroupoidFunction, f2: GroupoidFunction) -> GroupoidFunction:
    """(f1 * f2)(alpha, rho) = sum_beta f1(alpha beta^{-1}, beta(rho)) f2(beta, rho)"""
    f1._check(f2)
    by_source: Dict[Point, list] = {}
    for a1, v1 in f1.values.items():
        by_source.setdefault(a1.source, []).append((a1, v1))
    out: Dict[Arrow, complex] = {}
    for a2, v2 in f2.values.items():
        for a1, v1 in by_source.get(a2.target, ()):
            key = compose(a1, a2)
            out[key] = out.get(key, 0j) + v1 * v2
    return GroupoidFunction(f1.nvars, f1.level, {a: v for a, v in out.items() if v})


def adjoint(f: GroupoidFunction) -> GroupoidFunction:
    """f^*(alpha, rho) = conj f(alpha^{-1}, alpha(rho))"""
    return GroupoidFunction(
        f.nvars, f.level, {a.inverse(): v.conjugate() for a, v in f.values.items()}
    )


def sigma_t(f: GroupoidFunction, t: float) -> GroupoidFunction:
    """Time evolution det(alpha)^{it} f(alpha, rho)"""
    return GroupoidFunction(
        f.nvars,
        f.level,
        {a: v * cmath.exp(1j * t * math.log(float(a.det))) for a, v in f.values.items()},
    )


def _weights(nvars: int, level: int, point: Point, beta: float, cap: int) -> Tuple[Counter, float]:
    # Gibbs weight of each target m(rho) mod N, summed over HNF m with det <= cap
    weights: Counter = Counter()
    for d in range(1, cap + 1):
        w = float(d) ** (-beta)
        for m in hnf_enumerate(nvars, d):
            weights[tuple(int(v) % level for v in m.apply(point))] += w
    Z = sum(hnf_count(nvars, d) * float(d) ** (-beta) for d in range(1, cap + 1))
    return weights, Z


def groupoid_gibbs(f: GroupoidFunction, rho: Sequence[int], beta: float, cap: int) -> complex:
    """Z(beta)^{-1} sum over m in M_n(Z)^+/Gamma of f(1, m(rho)) det(m)^{-beta}"""
    n = f.nvars
    if beta <= n:
        raise BetaOutOfRange(f"low-temperature states need beta > {n}, got {beta}")
    point = tuple(int(v) % f.level for v in rho)
    weights, Z = _weights(n, f.level, point, beta, cap)
    total = sum(w * f.unit_value(target) for target, w in weights.items())
    value = total / Z
    logger.debug(f"groupoid_gibbs(beta={beta}, cap={cap}) = {value}")
    return value.real if abs(value.imag) < 1e-15 else value


def zero_temperature(f: GroupoidFunction, rho: Sequence[int]) -> complex:
    return f.unit_value(rho)
