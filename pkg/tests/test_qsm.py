import math

import numpy as np
import pytest

from modules.cyclotomic import RootOfUnity, complex_embed
from modules.errors import BetaOutOfRange
from modules.habiro import ev, reduce, taylor
from modules.qsm import (
    QSMConfig,
    TwoIndexOperator,
    build_T,
    delta_star_commutator,
    galois_intertwine_check,
    gibbs_series,
    gibbs_split_pairing,
    gibbs_split_series,
    gibbs_state,
    hamiltonian,
    kms_beta_sweep,
    kms_infinity,
    kms_limit_coefficient,
    mu_operator,
    partition_double_sum,
    partition_function,
    rho_operator,
    shift_operator,
    spectrum_is_simple,
    time_evolve,
    y_operator,
)

ROOTS = [RootOfUnity.of(0, 1), RootOfUnity.of(1, 2), RootOfUnity.of(1, 4)]


@pytest.fixture
def small():
    return QSMConfig(hbar=1 / math.e, beta=3.0, nmax=30, mmax=10)


def test_partition_function_against_closed_form():
    result = partition_function(QSMConfig(hbar=0.5, beta=2.0, nmax=100000, mmax=60))
    assert result.closed_form == pytest.approx(2.1932454, abs=1e-7)
    gap = result.closed_form - result.value
    assert 0 <= gap <= result.tail_bound
    assert gap / result.closed_form < 1e-4
    assert result.to_dict()["exact"] is False


def test_partition_function_matches_term_by_term_sum(small):
    assert partition_double_sum(small) == pytest.approx(partition_function(small).value, rel=1e-12)


def test_gibbs_states_need_beta_above_one():
    with pytest.raises(BetaOutOfRange):
        partition_function(QSMConfig(beta=1.0))
    with pytest.raises(ValueError):
        QSMConfig(hbar=1.5).validate()


@pytest.mark.parametrize("zeta", ROOTS, ids=str)
@pytest.mark.parametrize("ell", [0, 1, 2])
def test_trace_and_series_routes_agree(small, zeta, ell):
    f = reduce([0, 1, 1], 13)
    T = build_T(zeta, f, 3, small)
    trace = gibbs_state(shift_operator(ell, small).adjoint() @ T, small)
    assert abs(trace - gibbs_series(zeta, f, ell, small)) < 1e-12


def test_split_pairing_matches_its_series(small):
    zeta = RootOfUnity.of(1, 2)
    f = reduce([1, 0, 3], 13)
    T = build_T(zeta, f, 3, small)
    assert abs(gibbs_split_pairing(1, T, small) - gibbs_split_series(zeta, f, 1, small)) < 1e-12


def test_vacuum_recovers_evaluation_and_taylor_coefficients(small):
    zeta = RootOfUnity.of(1, 4)
    f = reduce([2, -1, 0, 1], 13)
    T = build_T(zeta, f, 3, small)
    assert kms_infinity(T) == pytest.approx(complex_embed(ev(f, zeta)))
    assert kms_limit_coefficient(T, 1) == pytest.approx(complex_embed(taylor(f, zeta, 2)[1]))


def test_beta_sweep_converges_to_the_vacuum_value():
    cfg = QSMConfig(hbar=1 / math.e, beta=2.0, nmax=60, mmax=20)
    rows = kms_beta_sweep(RootOfUnity.of(1, 2), reduce([0, 1], 13), cfg, [2.0, 4.0, 8.0, 16.0, 30.0])
    errors = [row.error for row in rows]
    assert all(b <= a for a, b in zip(errors, errors[1:]))
    assert errors[-1] < 1e-6


def test_spectrum():
    assert spectrum_is_simple(QSMConfig(hbar=1 / math.e, nmax=40, mmax=10))
    # log 2 coincides with one step of -log(1/2)
    assert not spectrum_is_simple(QSMConfig(hbar=0.5, nmax=4, mmax=2))


def test_time_evolution_matches_phased_operator(small):
    zeta = RootOfUnity.of(1, 2)
    f = reduce([1, 2, 3], 13)
    T = build_T(zeta, f, 3, small)
    evolved = time_evolve(T, 0.7, small)
    assert evolved.close_to(build_T(zeta, f, 3, small, t=0.7), np.ones(small.dim, dtype=bool))
    H = hamiltonian(small)
    assert time_evolve(H, 1.3, small).close_to(H, np.ones(small.dim, dtype=bool))


def test_isometries_on_valid_columns(small):
    mu = mu_operator(3, small)
    product = mu.adjoint() @ mu
    assert product.close_to(TwoIndexOperator.identity(small), mu.valid)
    rho = rho_operator(2, hamiltonian(small), small)
    assert rho.matrix.shape == (small.dim, small.dim)


@pytest.mark.parametrize("n, k", [(2, 1), (3, 2), (5, 4)])
def test_dilations_commute_with_shifts(small, n, k):
    mu, delta = mu_operator(n, small), shift_operator(k, small)
    inside = mu.column_mask(lambda a, m: n * a <= small.nmax and m + k <= small.mmax)
    assert (mu @ delta).close_to(delta @ mu, inside)


def test_commutator_closed_form(small):
    zeta = RootOfUnity.of(1, 2)
    f = reduce([0, 1, 4], 13)
    T = build_T(zeta, f, 3, small)
    delta_star = shift_operator(2, small).adjoint()
    commutator = (delta_star @ T) - (T @ delta_star)
    interior = commutator.column_mask(lambda n, m: m <= small.mmax - 3)
    assert commutator.close_to(delta_star_commutator(zeta, f, 2, 3, small), interior)


@pytest.mark.parametrize("a", [1, 3, 5, 7])
def test_galois_symmetry_intertwines_evaluation(a):
    assert galois_intertwine_check(RootOfUnity.of(1, 8), reduce([1, 2, 0, 5, -1], 9), a)


@pytest.mark.parametrize("ell", [1, 2])
def test_shifted_taylor_operator_on_the_ground_column(small, ell):
    zeta = RootOfUnity.of(1, 2)
    f = reduce([3, 0, 1, 2], 13)
    T = build_T(zeta, f, 4, small)
    ground = T.column_mask(lambda n, m: m == 0)
    lowered = shift_operator(ell, small).adjoint() @ T
    assert lowered.close_to(y_operator(zeta, f, ell, 4, small), ground)
