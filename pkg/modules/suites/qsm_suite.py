"""Partition function, Gibbs route equivalence and the beta -> infinity limit."""

import logging

from modules.cyclotomic import RootOfUnity
from modules.habiro import HabiroElt, reduce
from modules.qsm import (
    QSMConfig,
    build_T,
    gibbs_series,
    gibbs_state,
    kms_beta_sweep,
    partition_function,
    shift_operator,
)

from .base import BaseSuite

logger = logging.getLogger(__name__)

ROOTS = [RootOfUnity.of(0, 1), RootOfUnity.of(1, 2), RootOfUnity.of(1, 4)]


def _monomial(power: int, level: int) -> HabiroElt:
    return reduce([0] * power + [1], level)


class QSMSuite(BaseSuite):
    name = "qsm"

    def checks(self):
        return [
            ("partition_closed_form", self.partition_closed_form),
            ("gibbs_route_equivalence", self.gibbs_routes),
            ("kms_infinity_recovery", self.kms_recovery),
            ("kms_taylor_coefficient", self.kms_taylor_coefficient),
        ]

    def _cfg(self, beta: float) -> QSMConfig:
        settings = self.config.qsm
        return QSMConfig(
            hbar=self.param("hbar", settings.hbar),
            beta=beta,
            nmax=self.param("nmax", settings.nmax),
            mmax=self.param("mmax", settings.mmax),
            embedding=settings.embedding,
        )

    def partition_closed_form(self):
        cfg = QSMConfig(
            hbar=0.5,
            beta=2.0,
            nmax=self.param("partition_nmax", 10**6),
            mmax=self.param("partition_mmax", 60),
        )
        result = partition_function(cfg)
        gap = result.closed_form - result.value
        relative = abs(gap) / result.closed_form
        passed = 0 <= gap <= result.tail_bound and relative <= 1e-6
        return passed, relative, f"Z={result.value:.10f}, closed {result.closed_form:.10f}, tail {result.tail_bound:.3g}"

    def gibbs_routes(self):
        tolerance = self.param("route_tolerance", 1e-12)
        level = 13
        worst = 0.0
        for beta in (2.0, 4.0, 8.0):
            cfg = self._cfg(beta)
            for power in (1, 2):
                f = _monomial(power, level)
                for zeta in ROOTS:
                    T = build_T(zeta, f, 3, cfg)
                    for ell in (0, 1, 2):
                        trace = gibbs_state(shift_operator(ell, cfg).adjoint() @ T, cfg)
                        series = gibbs_series(zeta, f, ell, cfg)
                        worst = max(worst, abs(trace - series))
        return worst <= tolerance, worst, "f in {q, q^2}, zeta in {1, -1, i}, ell <= 2, beta in {2, 4, 8}"

    def _sweep(self, ell: int):
        cfg = self._cfg(2.0)
        betas = [float(b) for b in self.param("beta_grid", list(self.config.qsm.beta_grid))]
        rows = []
        for zeta in ROOTS:
            f = _monomial(2, 13)
            rows.append(kms_beta_sweep(zeta, f, cfg, betas, ell=ell))
        return rows

    def kms_recovery(self):
        worst, monotone = 0.0, True
        for rows in self._sweep(0):
            errors = [r.error for r in rows]
            monotone &= all(b <= a + 1e-15 for a, b in zip(errors, errors[1:]))
            worst = max(worst, errors[-1])
        return monotone and worst < 1e-6, worst, f"error decreasing along the grid: {monotone}"

    def kms_taylor_coefficient(self):
        worst = max(rows[-1].error for rows in self._sweep(1))
        return worst < 1e-6, worst, "rescaled ell=1 pairing against t_1(f)"
