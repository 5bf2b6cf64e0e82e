"""Handlers for the qsm subcommand group"""

import logging
from typing import Dict

from config.settings import parse_float_list
from core.command import CommandSpec, Flag
from modules.cyclotomic import complex_embed
from modules.habiro import taylor
from modules.qsm import (
    QSMConfig,
    build_T,
    gibbs_series,
    gibbs_state,
    kms_beta_sweep,
    kms_limit_coefficient,
    partition_function,
    shift_operator,
)

from .base import ROOT, BaseHandler, habiro_flags, habiro_from

logger = logging.getLogger(__name__)

# kms-limit reads only the eps_{1,0} column, whose Gibbs weight is 1 for every beta
VACUUM_BETA = 2.0


class QSMHandler(BaseHandler):
    """Partition function, Gibbs states and their beta -> infinity limit"""

    group = "qsm"

    def _truncation_flags(self, beta: bool = True):
        settings = self.config.qsm
        flags = [
            Flag("hbar", float, settings.hbar, "hbar in (0, 1)"),
            Flag("nmax", int, settings.nmax, "cutoff on n"),
            Flag("mmax", int, settings.mmax, "cutoff on m"),
        ]
        if beta:
            flags.insert(1, Flag("beta", float, 2.0, "inverse temperature"))
        return flags

    def commands(self) -> Dict[str, CommandSpec]:
        ell = Flag("ell", int, 0, "shift index")
        operator_flags = habiro_flags(16) + [ROOT, ell]
        return {
            "partition": CommandSpec(self.handle_partition, self._truncation_flags(), "truncated Z(beta)"),
            "gibbs": CommandSpec(
                self.handle_gibbs,
                operator_flags + self._truncation_flags(),
                "phi_beta(delta_ell^* T_{zeta,f}) by trace ratio and by series",
            ),
            "kms-limit": CommandSpec(self.handle_kms_limit, operator_flags, "beta -> infinity value"),
            "sweep": CommandSpec(
                self.handle_sweep,
                operator_flags
                + self._truncation_flags(beta=False)
                + [Flag("betas", parse_float_list, ",".join(str(b) for b in self.config.qsm.beta_grid), "beta grid")],
                "|phi_beta - phi_inf| along a beta grid",
            ),
        }

    def _cfg(self, cmd, beta=None) -> QSMConfig:
        cfg = QSMConfig(
            hbar=cmd["hbar"],
            beta=cmd["beta"] if beta is None else beta,
            nmax=cmd["nmax"],
            mmax=cmd["mmax"],
            embedding=self.config.qsm.embedding,
        )
        cfg.validate()
        return cfg

    def handle_partition(self, cmd):
        result = partition_function(self._cfg(cmd))
        payload = result.to_dict()
        payload["deterministic"] = True
        return self.numeric(payload)

    def handle_gibbs(self, cmd):
        cfg = self._cfg(cmd)
        cfg.require_gibbs()
        f, zeta, ell = habiro_from(cmd), cmd["zeta"], cmd["ell"]
        T = build_T(zeta, f, None, cfg)
        trace = gibbs_state(shift_operator(ell, cfg).adjoint() @ T, cfg)
        series = gibbs_series(zeta, f, ell, cfg)
        return self.numeric({
            "value_re": trace.real,
            "value_im": trace.imag,
            "series_re": series.real,
            "series_im": series.imag,
            "route_residual": abs(trace - series),
            "routes_agree": bool(abs(trace - series) <= self.config.qsm.tolerance),
            "deterministic": True,
        })

    def handle_kms_limit(self, cmd):
        f, zeta, ell = habiro_from(cmd), cmd["zeta"], cmd["ell"]
        coefficient = taylor(f, zeta, ell + 1)[ell]
        vacuum = QSMConfig(
            hbar=self.config.qsm.hbar, beta=VACUUM_BETA, nmax=1, mmax=ell, embedding=self.config.qsm.embedding
        )
        value = kms_limit_coefficient(build_T(zeta, f, ell + 1, vacuum), ell)
        embedded = complex_embed(coefficient, self.config.qsm.embedding)
        return self.numeric({
            "coefficient": coefficient.to_dict(),
            "value_re": value.real,
            "value_im": value.imag,
            "residual": abs(value - embedded),
            "agrees": bool(abs(value - embedded) <= self.config.qsm.tolerance),
        })

    def handle_sweep(self, cmd):
        cfg = self._cfg(cmd, beta=2.0)
        rows = kms_beta_sweep(cmd["zeta"], habiro_from(cmd), cfg, cmd["betas"], ell=cmd["ell"])
        table = [r.to_dict() for r in rows]
        return self.numeric({"rows": table, "deterministic": True}, table)
