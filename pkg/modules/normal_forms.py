"""Exact integer matrices: Hermite and Smith normal forms, lattice solves.

All matrices are numpy arrays with ``dtype=object`` so that entries stay
Python integers (arbitrary precision); numpy only supplies slicing and
matrix products.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np
from sympy import Matrix, divisors

from modules.errors import SingularMatrix

logger = logging.getLogger(__name__)


def as_int_array(rows) -> np.ndarray:
    arr = np.array([[int(v) for v in row] for row in rows], dtype=object)
    if arr.ndim != 2:
        raise ValueError("expected a 2-dimensional integer matrix")
    return arr


def identity(n: int) -> np.ndarray:
    return np.array([[int(i == j) for j in range(n)] for i in range(n)], dtype=object)


def exgcd(a: int, b: int) -> np.ndarray:
    """2x2 integer matrix M of determinant 1 with M @ [a, b] = [gcd(a, b), 0]"""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    g, s0, t0 = old_r, old_s, old_t
    if g < 0:
        g, s0, t0 = -g, -s0, -t0
    if g == 0:
        return identity(2)
    return np.array([[s0, t0], [-b // g, a // g]], dtype=object)


def inv_2x2_det1(M: np.ndarray) -> np.ndarray:
    return np.array([[M[1, 1], -M[0, 1]], [-M[1, 0], M[0, 0]]], dtype=object)


def determinant(A: np.ndarray) -> int:
    return int(Matrix(A.tolist()).det())


def hermite_normal_form(A: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Row-style HNF.

    Returns (H, U) with U unimodular and U @ A == H; H is in row echelon
    form with positive pivots and the entries above each pivot reduced into
    [0, pivot).
    """
    H = as_int_array(A)
    m, n = H.shape
    U = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            if H[i, c] != 0:
                M = exgcd(H[r, c], H[i, c])
                H[[r, i]] = M.dot(H[[r, i]])
                U[[r, i]] = M.dot(U[[r, i]])
        if H[r, c] == 0:
            continue
        if H[r, c] < 0:
            H[r] = -H[r]
            U[r] = -U[r]
        for i in range(r):
            k = H[i, c] // H[r, c]
            if k:
                H[i] = H[i] - k * H[r]
                U[i] = U[i] - k * U[r]
        r += 1
    return H, U


def solve_integer(A: np.ndarray, b: Sequence[int]) -> Optional[List[int]]:
    """An integer solution h of A @ h == b, or None when b is off the lattice"""
    A = as_int_array(A)
    H, U = hermite_normal_form(A.T)
    residual = [int(v) for v in b]
    y = [0] * H.shape[0]
    for i in range(H.shape[0]):
        nonzero = [c for c in range(H.shape[1]) if H[i, c] != 0]
        if not nonzero:
            break
        p = nonzero[0]
        quotient, remainder = divmod(residual[p], H[i, p])
        if remainder:
            return None
        y[i] = quotient
        if quotient:
            for c in range(H.shape[1]):
                residual[c] -= quotient * H[i, c]
    if any(residual):
        return None
    h = U.T.dot(np.array(y, dtype=object))
    return [int(v) for v in h]


def integer_rank(A: np.ndarray) -> int:
    H, _ = hermite_normal_form(A)
    return sum(1 for row in H if any(v != 0 for v in row))


def smith_normal_form(A: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return (U, D, V) with A == U @ D @ V, U and V unimodular, D diagonal
    with positive entries d_1 | d_2 | ... | d_n.
    """
    A = as_int_array(A)
    if A.shape[0] != A.shape[1]:
        raise ValueError("smith_normal_form expects a square matrix")
    if determinant(A) == 0:
        raise SingularMatrix(f"matrix {A.tolist()} is singular")
    n = A.shape[0]
    D = A.copy()
    S, T = identity(n), identity(n)

    def clear_row(i: int) -> bool:
        if all(D[i, j] == 0 for j in range(i + 1, n)):
            return False
        for j in range(i + 1, n):
            M = exgcd(D[i, i], D[i, j]).T
            D[:, [i, j]] = D[:, [i, j]].dot(M)
            T[[i, j]] = inv_2x2_det1(M).dot(T[[i, j]])
        return True

    def clear_col(i: int) -> bool:
        if all(D[j, i] == 0 for j in range(i + 1, n)):
            return False
        for j in range(i + 1, n):
            M = exgcd(D[i, i], D[j, i])
            D[[i, j]] = M.dot(D[[i, j]])
            S[:, [i, j]] = S[:, [i, j]].dot(inv_2x2_det1(M))
        return True

    def diagonalize(start: int):
        for i in range(start, n):
            clear_col(i)
            while clear_row(i) and clear_col(i):
                pass

    diagonalize(0)
    changed = True
    while changed:
        changed = False
        for i, j in itertools.combinations(range(n), 2):
            if D[j, j] % D[i, i] != 0:
                # column i += column j, then re-diagonalize the tail
                D[:, i] = D[:, i] + D[:, j]
                T[j] = T[j] - T[i]
                diagonalize(i)
                changed = True
                break

    for i in range(n):
        if D[i, i] < 0:
            D[i] = -D[i]
            S[:, i] = -S[:, i]
    return S, D, T


def unimodular_inverse(U: np.ndarray) -> np.ndarray:
    inv = Matrix(U.tolist()).inv()
    return as_int_array(inv.tolist())


@dataclass
class IntMatrix:
    """Square integer matrix; det, HNF and SNF are computed on demand"""

    rows: Tuple[Tuple[int, ...], ...]
    _det: Optional[int] = field(default=None, repr=False, compare=False)
    _snf: Optional[Tuple[np.ndarray, np.ndarray, np.ndarray]] = field(
        default=None, repr=False, compare=False
    )

    def __post_init__(self):
        self.rows = tuple(tuple(int(v) for v in row) for row in self.rows)
        n = len(self.rows)
        if n == 0 or any(len(row) != n for row in self.rows):
            raise ValueError(f"IntMatrix must be square, got {self.rows}")

    @classmethod
    def from_array(cls, arr) -> "IntMatrix":
        return cls(tuple(tuple(int(v) for v in row) for row in np.asarray(arr, dtype=object)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_array(identity(n))

    @classmethod
    def scalar(cls, n: int, c: int) -> "IntMatrix":
        return cls.from_array(c * identity(n))

    @classmethod
    def parse(cls, text: str) -> "IntMatrix":
        """Parse ``"a,b;c,d"`` row syntax"""
        try:
            return cls(tuple(tuple(int(v) for v in row.split(",")) for row in text.split(";")))
        except ValueError as exc:
            raise ValueError(f"Invalid matrix '{text}': expected rows like 'a,b;c,d'") from exc

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def array(self) -> np.ndarray:
        return as_int_array(self.rows)

    @property
    def det(self) -> int:
        if self._det is None:
            self._det = determinant(self.array)
        return self._det

    def __hash__(self):
        return hash(self.rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntMatrix) and self.rows == other.rows

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix.from_array(self.array.dot(other.array))

    def apply(self, vec: Sequence) -> list:
        """Matrix times a column vector (entries may be Fractions)"""
        return [sum(a * v for a, v in zip(row, vec)) for row in self.rows]

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix.from_array(self.array.T)

    def snf(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        if self._snf is None:
            self._snf = smith_normal_form(self.array)
        return self._snf

    def hnf(self) -> "IntMatrix":
        return coset_representative(self)

    def to_dict(self) -> list:
        return [[str(v) for v in row] for row in self.rows]

    @classmethod
    def from_dict(cls, data: list) -> "IntMatrix":
        return cls(tuple(tuple(int(v) for v in row) for row in data))


def snf(alpha: IntMatrix) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    U, D, V = alpha.snf()
    return IntMatrix.from_array(U), IntMatrix.from_array(D), IntMatrix.from_array(V)


def coset_representative(alpha: IntMatrix) -> IntMatrix:
    """Canonical representative of the right coset alpha * SL_n(Z).

    Upper triangular, positive diagonal, each entry right of the diagonal
    reduced into [0, diagonal entry of its row).
    """
    if alpha.det <= 0:
        raise SingularMatrix(f"coset representatives need det > 0, got {alpha.det}")
    M = alpha.array
    n = alpha.n
    for r in range(n - 1, -1, -1):
        for j in range(r):
            if M[r, j] != 0:
                E = exgcd(M[r, r], M[r, j])
                M[:, [r, j]] = M[:, [r, j]].dot(E.T)
    negative = [i for i in range(n) if M[i, i] < 0]
    for a, b in zip(negative[0::2], negative[1::2]):
        M[:, a] = -M[:, a]
        M[:, b] = -M[:, b]
    for r in range(n - 1, -1, -1):
        for j in range(r + 1, n):
            k = M[r, j] // M[r, r]
            if k:
                M[:, j] = M[:, j] - k * M[:, r]
    return IntMatrix.from_array(M)


def gamma_equivalent(a: IntMatrix, b: IntMatrix) -> bool:
    return coset_representative(a) == coset_representative(b)


def _divisor_tuples(d: int, n: int):
    if n == 1:
        yield (d,)
        return
    for first in divisors(d):
        for rest in _divisor_tuples(d // first, n - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _hnf_enumerate(n: int, d: int) -> Tuple[IntMatrix, ...]:
    out = []
    for diag in _divisor_tuples(d, n):
        slots = [(r, j) for r in range(n) for j in range(r + 1, n)]
        ranges = [range(diag[r]) for r, _ in slots]
        for values in itertools.product(*ranges):
            M = [[0] * n for _ in range(n)]
            for i in range(n):
                M[i][i] = diag[i]
            for (r, j), v in zip(slots, values):
                M[r][j] = v
            out.append(IntMatrix(tuple(tuple(row) for row in M)))
    return tuple(out)


def hnf_enumerate(n: int, d: int) -> List[IntMatrix]:
    """All upper-triangular coset representatives of determinant d"""
    if n < 1 or d < 1:
        raise ValueError(f"hnf_enumerate needs n >= 1 and d >= 1, got n={n}, d={d}")
    return list(_hnf_enumerate(n, d))


@lru_cache(maxsize=None)
def hnf_count(n: int, d: int) -> int:
    """Number of cosets of determinant d without materializing them"""
    total = 0
    for diag in _divisor_tuples(d, n):
        count = 1
        for r in range(n):
            count *= diag[r] ** (n - 1 - r)
        total += count
    return total
