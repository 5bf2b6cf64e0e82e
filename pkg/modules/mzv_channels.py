"""Multiple zeta values of rational cones and their single-isometry channel transforms.

A cone state is the data (cone, linear forms, finite-order character). Its
zeta value is the sum over interior lattice points v of
chi(v) / (l_1(v) ... l_k(v)); a matrix m preserving the open cone acts by
composing every form with m. Density operators are never built: the
diagonal weights 1/prod l_i(v) are all the channel sees.
"""

from __future__ import annotations

import itertools
import logging
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import Matrix

from modules.errors import ConeNotPreserved, ConvergenceWarning, NonPositiveHeightForm
from modules.multivar.bc import MultiQZElt
from modules.normal_forms import IntMatrix

logger = logging.getLogger(__name__)

RatVector = Tuple[Fraction, ...]


def _rational_vector(values: Iterable) -> RatVector:
    return tuple(Fraction(v) for v in values)


def _dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def _primitive(vec: Sequence) -> Tuple[int, ...]:
    """Scale a rational vector to the primitive integer vector on its ray"""
    fracs = [Fraction(str(v)) if not isinstance(v, Fraction) else v for v in vec]
    scale = 1
    for v in fracs:
        scale = scale * v.denominator // math.gcd(scale, v.denominator)
    ints = [int(v * scale) for v in fracs]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    return tuple(v // g for v in ints) if g else tuple(ints)


def parse_vectors(text: str) -> List[RatVector]:
    """``"1,0;0,1"`` -> [(1, 0), (0, 1)]"""
    try:
        return [_rational_vector(part.split(",")) for part in text.split(";") if part.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"Invalid vector list '{text}': expected 'a,b;c,d'") from exc


@dataclass(frozen=True)
class RationalCone:
    """Full-dimensional cone R_+ v_1 + ... + R_+ v_r in R^n"""

    generators: Tuple[RatVector, ...]

    def __post_init__(self):
        gens = tuple(_rational_vector(v) for v in self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise ValueError("a cone needs at least one generator")
        n = len(gens[0])
        if any(len(v) != n for v in gens):
            raise ValueError("generators must share one ambient dimension")
        if any(all(c == 0 for c in v) for v in gens):
            raise ValueError("cone generators must be nonzero")
        if Matrix(gens).rank() != n:
            raise ValueError(f"only full-dimensional cones are supported (rank < {n})")
        if not self.hyperplanes:
            raise ValueError("cone is not pointed: no supporting hyperplanes")

    @classmethod
    def parse(cls, text: str) -> "RationalCone":
        return cls(tuple(parse_vectors(text)))

    @classmethod
    def orthant(cls, n: int) -> "RationalCone":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.generators[0])

    @property
    def simplicial(self) -> bool:
        return Matrix(self.generators).rank() == len(self.generators)

    @cached_property
    def hyperplanes(self) -> Tuple[Tuple[int, ...], ...]:
        """Inward primitive integer facet normals; the open cone is {A v > 0}"""
        n = self.dim
        out = set()
        for subset in itertools.combinations(self.generators, n - 1):
            M = Matrix(list(subset)) if subset else Matrix.zeros(0, n)
            if subset and M.rank() != n - 1:
                continue
            kernel = M.nullspace()
            if len(kernel) != 1:
                continue
            normal = _primitive(list(kernel[0]))
            signs = {(_dot(normal, g) > 0) - (_dot(normal, g) < 0) for g in self.generators}
            if signs <= {0, 1}:
                out.add(normal)
            elif signs <= {0, -1}:
                out.add(tuple(-v for v in normal))
        return tuple(sorted(out))

    def contains_interior(self, v: Sequence[int]) -> bool:
        return all(_dot(a, v) > 0 for a in self.hyperplanes)

    def contains(self, v: Sequence) -> bool:
        return all(_dot(a, v) >= 0 for a in self.hyperplanes)

    def default_height(self) -> RatVector:
        """Sum of the facet normals, positive on every generator"""
        return tuple(Fraction(sum(col)) for col in zip(*self.hyperplanes))

    def to_dict(self) -> dict:
        return {"generators": [[str(c) for c in v] for v in self.generators]}


def _check_positive(cone: RationalCone, form: RatVector, strict_on_generators: bool):
    values = [_dot(form, g) for g in cone.generators]
    if any(v < 0 for v in values) or all(v == 0 for v in values):
        raise NonPositiveHeightForm(f"form {[str(c) for c in form]} is not positive on the open cone")
    if strict_on_generators and any(v == 0 for v in values):
        raise NonPositiveHeightForm(
            f"height form {[str(c) for c in form]} vanishes on a generator; truncation would be infinite"
        )


def _point_array(cone: RationalCone, hmax, height: Optional[Sequence] = None) -> np.ndarray:
    n = cone.dim
    height = _rational_vector(height) if height is not None else cone.default_height()
    if len(height) != n:
        raise ValueError(f"height form needs {n} coefficients")
    _check_positive(cone, height, strict_on_generators=True)
    cap = Fraction(hmax)
    lo, hi = [], []
    for j in range(n):
        pos = sum((max(g[j], 0) / _dot(height, g) for g in cone.generators), Fraction(0))
        neg = sum((max(-g[j], 0) / _dot(height, g) for g in cone.generators), Fraction(0))
        hi.append(math.floor(cap * pos))
        lo.append(-math.floor(cap * neg))
    scale = 1
    for c in height:
        scale = scale * c.denominator // math.gcd(scale, c.denominator)
    int_height = np.array([int(c * scale) for c in height], dtype=np.int64)
    limit = math.floor(cap * scale)
    A = np.array(cone.hyperplanes, dtype=np.int64)
    chunks = []
    last = np.arange(lo[-1], hi[-1] + 1, dtype=np.int64)
    for head in itertools.product(*(range(lo[j], hi[j] + 1) for j in range(n - 1))):
        pts = np.empty((len(last), n), dtype=np.int64)
        pts[:, : n - 1] = head
        pts[:, n - 1] = last
        keep = np.all(pts @ A.T > 0, axis=1) & (pts @ int_height <= limit)
        if keep.any():
            chunks.append(pts[keep])
    if not chunks:
        return np.empty((0, n), dtype=np.int64)
    return np.vstack(chunks)


def cone_points(cone: RationalCone, hmax, height: Optional[Sequence] = None) -> List[Tuple[int, ...]]:
    """Interior lattice points with height at most hmax, lexicographically ordered"""
    return [tuple(int(c) for c in row) for row in _point_array(cone, hmax, height)]


@dataclass(frozen=True)
class ConeState:
    """The functional (cone, l_1..l_k, theta) behind zeta_C(l_1, ..., l_k, chi)"""

    cone: RationalCone
    forms: Tuple[RatVector, ...]
    theta: RatVector

    def __post_init__(self):
        forms = tuple(_rational_vector(f) for f in self.forms)
        theta = tuple(Fraction(t) % 1 for t in self.theta)
        object.__setattr__(self, "forms", forms)
        object.__setattr__(self, "theta", theta)
        n = self.cone.dim
        if not forms:
            raise ValueError("a cone state needs at least one linear form")
        if any(len(f) != n for f in forms) or len(theta) != n:
            raise ValueError(f"forms and character must have {n} coefficients")
        for f in forms:
            _check_positive(self.cone, f, strict_on_generators=False)

    @classmethod
    def parse(cls, gens: str, forms: str, theta: str) -> "ConeState":
        cone = RationalCone.parse(gens)
        form_list = [_rational_vector(part.split(",")) for part in forms.split("|") if part.strip()]
        return cls(cone, tuple(form_list), _rational_vector(theta.split(",")))

    def with_theta(self, theta: Sequence) -> "ConeState":
        return ConeState(self.cone, self.forms, _rational_vector(theta))

    def to_dict(self) -> dict:
        return {
            "cone": self.cone.to_dict(),
            "forms": [[str(c) for c in f] for f in self.forms],
            "theta": [str(t) for t in self.theta],
        }


def _characters(theta: RatVector, pts: np.ndarray) -> np.ndarray:
    D = 1
    for t in theta:
        D = D * t.denominator // math.gcd(D, t.denominator)
    numerators = np.array([int(t * D) for t in theta], dtype=np.int64)
    k = np.mod(pts @ numerators, D)
    return np.exp(2j * np.pi * k / D)


def _weights(forms: Sequence[RatVector], pts: np.ndarray) -> np.ndarray:
    F = np.array([[float(c) for c in f] for f in forms], dtype=float)
    return 1.0 / np.prod(pts.astype(float) @ F.T, axis=1)


@dataclass
class MZVResult:
    value: complex
    tail: float
    points: int
    hmax: float

    def to_dict(self) -> dict:
        return {
            "value_re": self.value.real,
            "value_im": self.value.imag,
            "tail": self.tail,
            "points": self.points,
            "hmax": self.hmax,
        }


def _tail_estimate(n: int, k: int, cone: RationalCone, pts: np.ndarray, weights: np.ndarray, hmax: float) -> float:
    # |term| mass of the dyadic shells (H/4, H/2] and (H/2, H] fixes the decay
    # ratio r; the shells beyond H sum to at most m2 r / (1 - r), doubled
    if k <= n:
        return math.inf
    if len(pts) == 0:
        return 0.0
    height = np.array([float(c) for c in cone.default_height()])
    h = pts.astype(float) @ height
    outer = float(np.sum(np.abs(weights[h > hmax / 2])))
    inner = float(np.sum(np.abs(weights[(h > hmax / 4) & (h <= hmax / 2)])))
    if outer == 0.0:
        return 0.0
    if inner == 0.0:
        # shells too thin to fit; fall back to the generic decay h^(n-1-k)
        ratio = 2.0 ** (n - k)
    else:
        ratio = outer / inner
    if ratio >= 1.0:
        return math.inf
    return 2.0 * outer * ratio / (1.0 - ratio)


def mzv_cone(state: ConeState, hmax: float, allow_divergent: bool = False) -> MZVResult:
    """Truncated zeta_C(l_1, ..., l_k, chi) over heights <= hmax"""
    n, k = state.cone.dim, len(state.forms)
    if k <= n and not allow_divergent:
        message = f"{k} forms in dimension {n}: the cone sum need not converge (want k >= {n + 1})"
        logger.warning(message)
        warnings.warn(message, ConvergenceWarning, stacklevel=2)
    pts = _point_array(state.cone, hmax)
    weights = _weights(state.forms, pts)
    terms = weights * _characters(state.theta, pts)
    value = complex(float(np.sum(terms.real)), float(np.sum(terms.imag)))
    tail = _tail_estimate(n, k, state.cone, pts, weights, float(hmax))
    logger.info(f"mzv_cone: {len(pts)} points up to height {hmax}, value {value:.12g}, tail {tail:.3g}")
    return MZVResult(value, tail, len(pts), float(hmax))


def preserves_cone(cone: RationalCone, m: IntMatrix) -> bool:
    """m(C) inside C with det m > 0, hence m(C^0 cap Z^n) inside C^0 cap Z^n"""
    if m.n != cone.dim or m.det <= 0:
        return False
    return all(cone.contains(m.apply(g)) for g in cone.generators)


def channel_transform(state: ConeState, m: IntMatrix) -> ConeState:
    """rho -> mu_m^* rho mu_m, i.e. every form l becomes l o m"""
    if not preserves_cone(state.cone, m):
        raise ConeNotPreserved(f"matrix {m.rows} does not preserve the open cone")
    forms = tuple(tuple(_dot(f, col) for col in zip(*m.rows)) for f in state.forms)
    return ConeState(state.cone, forms, state.theta)


def character_value(a: MultiQZElt, v: Sequence[int]) -> complex:
    """chi_a(v): e(r) -> exp(2 pi i r.v), extended linearly"""
    total = 0j
    for r, c in a.terms:
        phase = _dot(r, v) % 1
        total += float(c) * complex(np.exp(2j * np.pi * float(phase)))
    return total


def character_of_product(factors: Sequence[MultiQZElt], v: Sequence[int]) -> Tuple[complex, complex]:
    """(chi of the product, product of the chis) at v"""
    product = factors[0]
    for f in factors[1:]:
        product = product * f
    separate = 1 + 0j
    for f in factors:
        separate *= character_value(f, v)
    return character_value(product, v), separate


def cone_state_value(state: ConeState, a: MultiQZElt, hmax: float) -> complex:
    """phi(a) = Tr(a rho) / Tr(rho) for the diagonal density rho = 1/prod l_i"""
    pts = _point_array(state.cone, hmax)
    weights = _weights(state.forms, pts)
    chis = np.zeros(len(pts), dtype=complex)
    for r, c in a.terms:
        chis += float(c) * _characters(tuple(Fraction(x) for x in r), pts)
    total = np.sum(weights * chis)
    return complex(total / np.sum(weights))


def state_transform(state: ConeState, m: IntMatrix) -> Callable[[MultiQZElt, float], complex]:
    """The pulled-back state s^* phi: a -> phi(s(a)) / phi(s(1))"""
    moved = channel_transform(state, m)

    def pulled_back(a: MultiQZElt, hmax: float) -> complex:
        return cone_state_value(moved, a, hmax)

    return pulled_back


Factor = Union[ConeState, Tuple[ConeState, ...]]


@dataclass
class RelationReport:
    original_residual: float
    transformed_residual: float
    original_tail: float
    transformed_tail: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return (
            self.original_residual <= self.tolerance + self.original_tail
            and self.transformed_residual <= self.tolerance + self.transformed_tail
        )

    def to_dict(self) -> dict:
        return {
            "original_residual": self.original_residual,
            "transformed_residual": self.transformed_residual,
            "original_tail": self.original_tail,
            "transformed_tail": self.transformed_tail,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


def _evaluate(terms: Sequence[Tuple[complex, Sequence[ConeState]]], hmax: float) -> Tuple[complex, float]:
    total, tail = 0j, 0.0
    cache = {}
    for coeff, factors in terms:
        results = []
        for s in factors:
            if s not in cache:
                cache[s] = mzv_cone(s, hmax)
            results.append(cache[s])
        product = 1 + 0j
        for r in results:
            product *= r.value
        err = 0.0
        for i, r in enumerate(results):
            others = 1.0
            for j, o in enumerate(results):
                if j != i:
                    others *= abs(o.value) + o.tail
            err += r.tail * others
        total += coeff * product
        tail += abs(coeff) * err
    return total, tail


def relation_check(
    terms: Sequence[Tuple[complex, Sequence[ConeState]]],
    assignments: Mapping[int, IntMatrix],
    hmax: float,
    tolerance: float = 1e-9,
) -> RelationReport:
    """Evaluate sum coeff * prod zeta_C(...) before and after the channel transforms.

    ``assignments`` maps an ambient dimension to the matrix applied to
    every state of that dimension; missing dimensions are left alone.
    """
    moved = [
        (
            coeff,
            [
                channel_transform(s, assignments[s.cone.dim]) if s.cone.dim in assignments else s
                for s in factors
            ],
        )
        for coeff, factors in terms
    ]
    original, original_tail = _evaluate(terms, hmax)
    transformed, transformed_tail = _evaluate(moved, hmax)
    report = RelationReport(abs(original), abs(transformed), original_tail, transformed_tail, tolerance)
    logger.info(
        f"relation_check: residuals {report.original_residual:.3g} / {report.transformed_residual:.3g}, "
        f"passed={report.passed}"
    )
    return report
