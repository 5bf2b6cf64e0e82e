import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import divisor_sigma

from modules.errors import SingularMatrix
from modules.normal_forms import (
    IntMatrix,
    coset_representative,
    determinant,
    gamma_equivalent,
    hermite_normal_form,
    hnf_count,
    hnf_enumerate,
    snf,
    solve_integer,
)

entries = st.integers(-6, 6)


@st.composite
def nonsingular(draw, n=2):
    rows = draw(st.lists(st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n))
    matrix = IntMatrix(tuple(tuple(r) for r in rows))
    if matrix.det == 0:
        return IntMatrix.scalar(n, 1)
    return matrix


@st.composite
def sl2(draw):
    # products of elementary matrices stay in SL_2(Z)
    g = IntMatrix.identity(2)
    for k in draw(st.lists(st.integers(-3, 3), max_size=4)):
        g = g @ IntMatrix(((1, k), (0, 1))) @ IntMatrix(((1, 0), (k, 1)))
    return g


@given(nonsingular(2))
def test_smith_form_of_2x2(alpha):
    U, D, V = snf(alpha)
    assert U @ D @ V == alpha
    assert abs(U.det) == 1 and abs(V.det) == 1
    d1, d2 = D.rows[0][0], D.rows[1][1]
    assert D.rows[0][1] == 0 and D.rows[1][0] == 0
    assert d1 > 0 and d2 > 0 and d2 % d1 == 0
    assert d1 * d2 == abs(alpha.det)


@given(nonsingular(3))
def test_smith_form_of_3x3(alpha):
    U, D, V = snf(alpha)
    assert U @ D @ V == alpha
    diagonal = [D.rows[i][i] for i in range(3)]
    assert all(b % a == 0 for a, b in zip(diagonal, diagonal[1:]))


def test_smith_form_rejects_singular_matrices():
    with pytest.raises(SingularMatrix):
        snf(IntMatrix(((1, 2), (2, 4))))


def test_smith_form_of_a_known_matrix():
    _, D, _ = snf(IntMatrix.parse("2,4;6,8"))
    assert D == IntMatrix(((2, 0), (0, 4)))


@pytest.mark.parametrize("d,count", [(1, 1), (2, 3), (6, 12)])
def test_coset_counts(d, count):
    assert hnf_count(2, d) == count
    assert len(hnf_enumerate(2, d)) == count


@pytest.mark.parametrize("d", range(1, 51))
def test_coset_count_is_divisor_sum(d):
    assert hnf_count(2, d) == int(divisor_sigma(d))


def test_three_dimensional_count_matches_enumeration():
    for d in range(1, 9):
        assert len(hnf_enumerate(3, d)) == hnf_count(3, d)


@given(nonsingular(2), sl2())
def test_coset_representative_is_invariant(alpha, g):
    if alpha.det < 0:
        alpha = alpha @ IntMatrix(((0, 1), (1, 0)))
    rep = coset_representative(alpha)
    assert rep == coset_representative(alpha @ g)
    assert rep in hnf_enumerate(2, alpha.det)
    assert gamma_equivalent(alpha, alpha @ g)


def test_coset_representative_needs_positive_determinant():
    with pytest.raises(SingularMatrix):
        coset_representative(IntMatrix(((0, 1), (1, 0))))


def test_hermite_form_and_lattice_solve():
    A = np.array([[2, 4], [6, 8]], dtype=object)
    H, U = hermite_normal_form(A)
    assert (U.dot(A) == H).all()
    assert abs(determinant(U)) == 1
    assert solve_integer(A, [6, 14]) == [1, 1]
    assert solve_integer(A, [1, 0]) is None
