"""Quantum statistical mechanics of the Taylor-operator system.

Operators act on the truncated basis eps_{n,m}, 1 <= n <= nmax,
0 <= m <= mmax, stored as scipy.sparse matrices over complex doubles.
Exact cyclotomic values are embedded into C only when an operator is
assembled. All sums run in ascending (n, m) order.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.special import zeta as riemann_zeta

from modules.cyclotomic import RootOfUnity, complex_embed, galois_act
from modules.errors import BetaOutOfRange
from modules.habiro import HabiroElt, ev, taylor, taylor_of_sigma

logger = logging.getLogger(__name__)


@dataclass
class QSMConfig:
    hbar: float = 1 / math.e
    beta: float = 2.0
    nmax: int = 200
    mmax: int = 40
    embedding: int = 1

    def validate(self) -> bool:
        if not 0 < self.hbar < 1:
            raise ValueError(f"hbar must lie in (0, 1), got {self.hbar}")
        if self.nmax < 1 or self.mmax < 0:
            raise ValueError(f"invalid cutoffs nmax={self.nmax}, mmax={self.mmax}")
        return True

    def require_gibbs(self):
        if self.beta <= 1:
            raise BetaOutOfRange(f"Gibbs states need beta > 1, got {self.beta}")

    @property
    def dim(self) -> int:
        return self.nmax * (self.mmax + 1)

    def index(self, n: int, m: int) -> int:
        return (n - 1) * (self.mmax + 1) + m

    def to_dict(self) -> dict:
        return {
            "hbar": self.hbar,
            "beta": self.beta,
            "nmax": self.nmax,
            "mmax": self.mmax,
            "embedding": self.embedding,
        }


@dataclass
class TwoIndexOperator:
    """Sparse operator on span(eps_{n,m}); ``valid`` masks columns computed
    without leaving the truncation."""

    nmax: int
    mmax: int
    matrix: sp.csr_matrix
    valid: Optional[np.ndarray] = None

    def __post_init__(self):
        self.matrix = sp.csr_matrix(self.matrix, dtype=complex)
        if self.valid is None:
            self.valid = np.ones(self.matrix.shape[1], dtype=bool)

    @classmethod
    def identity(cls, cfg: QSMConfig) -> "TwoIndexOperator":
        return cls(cfg.nmax, cfg.mmax, sp.identity(cfg.dim, dtype=complex, format="csr"))

    def __matmul__(self, other: "TwoIndexOperator") -> "TwoIndexOperator":
        invalid_rows = ~self.valid
        touched = np.asarray(abs(other.matrix[invalid_rows, :]).sum(axis=0)).ravel() > 0
        return TwoIndexOperator(
            self.nmax,
            self.mmax,
            self.matrix @ other.matrix,
            other.valid & ~touched,
        )

    def __add__(self, other: "TwoIndexOperator") -> "TwoIndexOperator":
        return TwoIndexOperator(self.nmax, self.mmax, self.matrix + other.matrix, self.valid & other.valid)

    def __sub__(self, other: "TwoIndexOperator") -> "TwoIndexOperator":
        return TwoIndexOperator(self.nmax, self.mmax, self.matrix - other.matrix, self.valid & other.valid)

    def scaled(self, c: complex) -> "TwoIndexOperator":
        return TwoIndexOperator(self.nmax, self.mmax, self.matrix * c, self.valid)

    def adjoint(self) -> "TwoIndexOperator":
        return TwoIndexOperator(self.nmax, self.mmax, self.matrix.conj().T.tocsr())

    def entry(self, n: int, m: int, n2: int, m2: int) -> complex:
        """<eps_{n,m}, A eps_{n2,m2}>"""
        w = self.mmax + 1
        return complex(self.matrix[(n - 1) * w + m, (n2 - 1) * w + m2])

    def diagonal(self) -> np.ndarray:
        return self.matrix.diagonal()

    def column_mask(self, predicate) -> np.ndarray:
        """Boolean mask over columns from a predicate on (n, m)"""
        return np.array(
            [predicate(n, m) for n in range(1, self.nmax + 1) for m in range(self.mmax + 1)],
            dtype=bool,
        )

    def close_to(self, other: "TwoIndexOperator", mask: np.ndarray, tol: float = 1e-10) -> bool:
        diff = (self.matrix - other.matrix)[:, np.flatnonzero(mask)]
        return diff.nnz == 0 or float(abs(diff).max()) <= tol

    def to_dict(self) -> dict:
        coo = self.matrix.tocoo()
        w = self.mmax + 1
        return {
            "nmax": self.nmax,
            "mmax": self.mmax,
            "entries": [
                {
                    "row": [int(i) // w + 1, int(i) % w],
                    "col": [int(j) // w + 1, int(j) % w],
                    "re": float(v.real),
                    "im": float(v.imag),
                }
                for i, j, v in zip(coo.row, coo.col, coo.data)
            ],
        }


def max_depth(zeta: RootOfUnity, f: HabiroElt) -> int:
    """Largest Taylor depth allowed by the level of f at zeta"""
    return (f.level - 1) // zeta.order


def _taylor_rows(zeta: RootOfUnity, f: HabiroElt, depth: int, cfg: QSMConfig, shift: int = 0) -> List[List[complex]]:
    rows = []
    for n in range(1, cfg.nmax + 1):
        coeffs = taylor_of_sigma(f, zeta, n, depth)
        rows.append([complex_embed(c, cfg.embedding) for c in coeffs[shift:]])
    return rows


def _assemble(rows: List[List[complex]], cfg: QSMConfig, phase: Optional[Sequence[complex]] = None) -> TwoIndexOperator:
    data, ri, ci = [], [], []
    for n, coeffs in enumerate(rows, start=1):
        for m in range(cfg.mmax + 1):
            for k, value in enumerate(coeffs):
                if m + k > cfg.mmax or value == 0:
                    continue
                if phase is not None:
                    value = value * phase[k]
                data.append(value)
                ri.append(cfg.index(n, m + k))
                ci.append(cfg.index(n, m))
    matrix = sp.csr_matrix((data, (ri, ci)), shape=(cfg.dim, cfg.dim), dtype=complex)
    return TwoIndexOperator(cfg.nmax, cfg.mmax, matrix)


def build_T(zeta: RootOfUnity, f: HabiroElt, depth: Optional[int], cfg: QSMConfig, t: Optional[float] = None) -> TwoIndexOperator:
    """T_{zeta,f}: eps_{n,m} -> sum_k t_k(sigma_n f) eps_{n,m+k}, k < depth.

    With ``t`` given, the k-th term carries the time-evolution phase hbar^{-ikt}.
    """
    depth = max_depth(zeta, f) if depth is None else depth
    rows = _taylor_rows(zeta, f, depth, cfg)
    phase = None
    if t is not None:
        phase = [cfg.hbar ** (-1j * k * t) for k in range(depth)]
    logger.debug(f"Assembled T at zeta={zeta} depth={depth} on {cfg.dim} basis vectors")
    return _assemble(rows, cfg, phase)


def y_operator(zeta: RootOfUnity, f: HabiroElt, ell: int, depth: Optional[int], cfg: QSMConfig) -> TwoIndexOperator:
    """Y_{zeta,f,ell}: eps_{n,m} -> sum_k t_{k+ell}(sigma_n f) eps_{n,m+k}"""
    depth = max_depth(zeta, f) if depth is None else depth
    return _assemble(_taylor_rows(zeta, f, depth, cfg, shift=ell), cfg)


def mu_operator(k: int, cfg: QSMConfig) -> TwoIndexOperator:
    """mu_k eps_{n,m} = eps_{kn,m}; columns with kn > nmax are flagged invalid"""
    data, ri, ci = [], [], []
    valid = np.ones(cfg.dim, dtype=bool)
    for n in range(1, cfg.nmax + 1):
        for m in range(cfg.mmax + 1):
            if k * n <= cfg.nmax:
                data.append(1.0)
                ri.append(cfg.index(k * n, m))
                ci.append(cfg.index(n, m))
            else:
                valid[cfg.index(n, m)] = False
    matrix = sp.csr_matrix((data, (ri, ci)), shape=(cfg.dim, cfg.dim), dtype=complex)
    return TwoIndexOperator(cfg.nmax, cfg.mmax, matrix, valid)


def shift_operator(k: int, cfg: QSMConfig) -> TwoIndexOperator:
    """delta_k eps_{n,m} = eps_{n,m+k}; columns with m+k > mmax are flagged invalid"""
    data, ri, ci = [], [], []
    valid = np.ones(cfg.dim, dtype=bool)
    for n in range(1, cfg.nmax + 1):
        for m in range(cfg.mmax + 1):
            if m + k <= cfg.mmax:
                data.append(1.0)
                ri.append(cfg.index(n, m + k))
                ci.append(cfg.index(n, m))
            else:
                valid[cfg.index(n, m)] = False
    matrix = sp.csr_matrix((data, (ri, ci)), shape=(cfg.dim, cfg.dim), dtype=complex)
    return TwoIndexOperator(cfg.nmax, cfg.mmax, matrix, valid)


def energies(cfg: QSMConfig) -> np.ndarray:
    n = np.repeat(np.arange(1, cfg.nmax + 1, dtype=float), cfg.mmax + 1)
    m = np.tile(np.arange(cfg.mmax + 1, dtype=float), cfg.nmax)
    return np.log(n) - m * math.log(cfg.hbar)


def hamiltonian(cfg: QSMConfig) -> TwoIndexOperator:
    """H eps_{n,m} = (log n - m log hbar) eps_{n,m}"""
    return TwoIndexOperator(cfg.nmax, cfg.mmax, sp.diags(energies(cfg)).astype(complex))


def spectrum_is_simple(cfg: QSMConfig, tol: float = 1e-12) -> bool:
    """Whether the truncated Hamiltonian has pairwise distinct eigenvalues"""
    e = np.sort(energies(cfg))
    return bool(np.all(np.diff(e) > tol))


def time_evolve(op: TwoIndexOperator, t: float, cfg: QSMConfig) -> TwoIndexOperator:
    """e^{itH} op e^{-itH}"""
    phases = np.exp(1j * t * energies(cfg))
    U = sp.diags(phases)
    U_inv = sp.diags(np.conj(phases))
    return TwoIndexOperator(op.nmax, op.mmax, U @ op.matrix @ U_inv, op.valid)


def rho_operator(n: int, op: TwoIndexOperator, cfg: QSMConfig) -> TwoIndexOperator:
    """mu_n op mu_n^*"""
    mu = mu_operator(n, cfg)
    return mu @ op @ mu.adjoint()


@dataclass
class PartitionResult:
    value: float
    tail_bound: float
    closed_form: float
    zeta_part: float
    geometric_part: float

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "tail_bound": self.tail_bound,
            "closed_form": self.closed_form,
            "exact": False,
        }


def _zeta_partial(beta: float, nmax: int) -> float:
    return float(np.sum(np.arange(1, nmax + 1, dtype=float) ** (-beta)))


def _geometric_partial(hbar: float, beta: float, mmax: int) -> float:
    return float(np.sum(hbar ** (beta * np.arange(mmax + 1, dtype=float))))


def partition_function(cfg: QSMConfig) -> PartitionResult:
    """Truncated Z = sum n^-beta hbar^(beta m) with a rigorous tail bound"""
    cfg.require_gibbs()
    beta = cfg.beta
    s_n = _zeta_partial(beta, cfg.nmax)
    g_m = _geometric_partial(cfg.hbar, beta, cfg.mmax)
    h_b = cfg.hbar**beta
    tail = (cfg.nmax ** (1 - beta) / (beta - 1) + s_n * h_b ** (cfg.mmax + 1)) / (1 - h_b)
    closed = float(riemann_zeta(beta)) / (1 - h_b)
    logger.info(f"Partition function at beta={beta}: truncated {s_n * g_m:.12g}, tail <= {tail:.3g}")
    return PartitionResult(s_n * g_m, tail, closed, s_n, g_m)


def partition_double_sum(cfg: QSMConfig) -> float:
    """The same truncation summed term by term, n ascending then m"""
    cfg.require_gibbs()
    weights = np.exp(-cfg.beta * energies(cfg))
    return float(np.sum(weights))


def _weights(cfg: QSMConfig) -> np.ndarray:
    return np.exp(-cfg.beta * energies(cfg))


def gibbs_state(a: TwoIndexOperator, cfg: QSMConfig) -> complex:
    """Tr(a e^{-beta H}) / Tr(e^{-beta H}) on the truncated space"""
    cfg.require_gibbs()
    w = _weights(cfg)
    return complex(np.sum(a.diagonal() * w) / np.sum(w))


def gibbs_split_pairing(ell: int, a: TwoIndexOperator, cfg: QSMConfig) -> complex:
    """Tr(delta_ell^* e^{-beta H} a) / Tr(e^{-beta H}).

    This pairing carries the factor hbar^{beta ell}; divided by it, its
    beta -> infinity limit is the ell-th Taylor coefficient.
    """
    cfg.require_gibbs()
    w = _weights(cfg)
    total = 0j
    for n in range(1, cfg.nmax + 1):
        for m in range(cfg.mmax + 1 - ell):
            total += w[cfg.index(n, m + ell)] * a.entry(n, m + ell, n, m)
    return complex(total / np.sum(w))


def _taylor_series(zeta: RootOfUnity, f: HabiroElt, ell: int, cfg: QSMConfig) -> complex:
    """sum_n t_ell(sigma_n f) n^{-beta}, n ascending"""
    total = 0j
    for n in range(1, cfg.nmax + 1):
        coeff = taylor_of_sigma(f, zeta, n, ell + 1)[ell]
        total += complex_embed(coeff, cfg.embedding) * n ** (-cfg.beta)
    return total


def gibbs_series(zeta: RootOfUnity, f: HabiroElt, ell: int, cfg: QSMConfig) -> complex:
    """Analytic form of gibbs_state(delta_ell^* T_{zeta,f}) at matched truncation"""
    cfg.require_gibbs()
    g_short = _geometric_partial(cfg.hbar, cfg.beta, cfg.mmax - ell)
    z = _zeta_partial(cfg.beta, cfg.nmax) * _geometric_partial(cfg.hbar, cfg.beta, cfg.mmax)
    return _taylor_series(zeta, f, ell, cfg) * g_short / z


def gibbs_split_series(zeta: RootOfUnity, f: HabiroElt, ell: int, cfg: QSMConfig) -> complex:
    """Analytic form of gibbs_split_pairing(ell, T_{zeta,f}) at matched truncation"""
    cfg.require_gibbs()
    g_short = _geometric_partial(cfg.hbar, cfg.beta, cfg.mmax - ell)
    z = _zeta_partial(cfg.beta, cfg.nmax) * _geometric_partial(cfg.hbar, cfg.beta, cfg.mmax)
    return cfg.hbar ** (cfg.beta * ell) * _taylor_series(zeta, f, ell, cfg) * g_short / z


def kms_infinity(a: TwoIndexOperator) -> complex:
    """Vacuum expectation <eps_{1,0}, a eps_{1,0}>"""
    return a.entry(1, 0, 1, 0)


def kms_limit_coefficient(a: TwoIndexOperator, ell: int) -> complex:
    """<eps_{1,0}, delta_ell^* a eps_{1,0}>"""
    return a.entry(1, ell, 1, 0)


@dataclass
class SweepRow:
    beta: float
    value: complex
    target: complex

    @property
    def error(self) -> float:
        return abs(self.value - self.target)

    def to_dict(self) -> dict:
        return {
            "beta": self.beta,
            "value_re": self.value.real,
            "value_im": self.value.imag,
            "error": self.error,
        }


def kms_beta_sweep(zeta: RootOfUnity, f: HabiroElt, cfg: QSMConfig, betas: Sequence[float], ell: int = 0) -> List[SweepRow]:
    """Gibbs values of delta_ell^* T_{zeta,f} along a beta grid against the KMS_inf value"""
    depth = max(ell + 1, 1)
    T = build_T(zeta, f, depth, cfg)
    target = complex_embed(taylor(f, zeta, ell + 1)[ell], cfg.embedding)
    rows = []
    for beta in betas:
        step = QSMConfig(cfg.hbar, beta, cfg.nmax, cfg.mmax, cfg.embedding)
        if ell == 0:
            value = gibbs_state(T, step)
        else:
            value = gibbs_split_pairing(ell, T, step) / step.hbar ** (beta * ell)
        rows.append(SweepRow(beta, value, target))
        logger.info(f"beta={beta}: |phi_beta - phi_inf| = {rows[-1].error:.3e}")
    return rows


def galois_intertwine_check(zeta: RootOfUnity, f: HabiroElt, a: int) -> bool:
    """ev(f, zeta^a) == galois_act(a, ev(f, zeta)) exactly"""
    lhs = ev(f, zeta ** a).embed(zeta.order)
    rhs = galois_act(a, ev(f, zeta).embed(zeta.order))
    return lhs == rhs


def delta_star_commutator(zeta: RootOfUnity, f: HabiroElt, ell: int, depth: Optional[int], cfg: QSMConfig) -> TwoIndexOperator:
    """Closed form of [delta_ell^*, T]: eps_{n,m} -> sum_{k >= ell-m} t_k eps_{n,m+k-ell} for m < ell, else 0"""
    depth = max_depth(zeta, f) if depth is None else depth
    rows = _taylor_rows(zeta, f, depth, cfg)
    data, ri, ci = [], [], []
    for n, coeffs in enumerate(rows, start=1):
        for m in range(min(ell, cfg.mmax + 1)):
            for k in range(ell - m, len(coeffs)):
                target = m + k - ell
                if coeffs[k] == 0 or target > cfg.mmax:
                    continue
                data.append(coeffs[k])
                ri.append(cfg.index(n, target))
                ci.append(cfg.index(n, m))
    matrix = sp.csr_matrix((data, (ri, ci)), shape=(cfg.dim, cfg.dim), dtype=complex)
    return TwoIndexOperator(cfg.nmax, cfg.mmax, matrix)
