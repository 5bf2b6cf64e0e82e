"""Handlers for the habiro and bc subcommand groups"""

import logging
from typing import Dict

from core.command import CommandSpec, Flag
from modules.bc_core import bc_mul, integral_rho_tilde, qz_rho, qz_sigma
from modules.habiro import eta_n, ev, project, sigma_n, taylor

from .base import ROOT, BaseHandler, habiro_flags, habiro_from, parse_bc, parse_qz, switch

logger = logging.getLogger(__name__)


class HabiroHandler(BaseHandler):
    """Evaluation, Taylor expansion and the sigma/eta maps on Z[q]/((q)_N)"""

    group = "habiro"

    def commands(self) -> Dict[str, CommandSpec]:
        n_flag = Flag("n", int, help="sigma index n >= 1")
        return {
            "ev": CommandSpec(self.handle_ev, habiro_flags() + [ROOT], "evaluate f at a root of unity"),
            "taylor": CommandSpec(
                self.handle_taylor,
                habiro_flags() + [ROOT, Flag("depth", int, 1, "number of Taylor coefficients")],
                "Taylor coefficients of f at zeta",
            ),
            "sigma": CommandSpec(self.handle_sigma, habiro_flags() + [n_flag], "q -> q^n"),
            "eta": CommandSpec(
                self.handle_eta,
                habiro_flags() + [n_flag, Flag("target-level", int, 0, "level of the preimage (default: N)")],
                "preimage under sigma_n",
            ),
            "reduce": CommandSpec(
                self.handle_reduce,
                habiro_flags() + [Flag("project", int, 0, "project to a lower level K")],
                "canonical representative modulo (q)_N",
            ),
        }

    def handle_ev(self, cmd):
        return self.exact(ev(habiro_from(cmd), cmd["zeta"]).to_dict())

    def handle_taylor(self, cmd):
        coeffs = taylor(habiro_from(cmd), cmd["zeta"], cmd["depth"])
        return self.exact([c.to_dict() for c in coeffs])

    def handle_sigma(self, cmd):
        return self.exact(sigma_n(habiro_from(cmd), cmd["n"]).to_dict())

    def handle_eta(self, cmd):
        f = habiro_from(cmd)
        K = cmd["target_level"] or f.level
        return self.exact(eta_n(f, cmd["n"], K).to_dict())

    def handle_reduce(self, cmd):
        f = habiro_from(cmd)
        if cmd["project"]:
            f = project(f, cmd["project"])
        return self.exact(f.to_dict())


class BCHandler(BaseHandler):
    """Products and endomorphisms of the Bost-Connes algebra"""

    group = "bc"

    def commands(self) -> Dict[str, CommandSpec]:
        x_flag = Flag("x", parse_qz, help='element of Q[Q/Z], e.g. "1/2:3, 1/3"')
        n_flag = Flag("n", int, help="index n >= 1")
        return {
            "mul": CommandSpec(
                self.handle_mul,
                [Flag("u", parse_bc, help="JSON monomial list"), Flag("v", parse_bc, help="JSON monomial list")],
                "product in the crossed product",
            ),
            "rho": CommandSpec(
                self.handle_rho,
                [x_flag, n_flag, switch("integral", "n * rho_n (integral model)")],
                "rho_n(x)",
            ),
            "sigma": CommandSpec(self.handle_sigma, [x_flag, n_flag], "sigma_n(x)"),
        }

    def handle_mul(self, cmd):
        return self.exact(bc_mul(cmd["u"], cmd["v"]).to_dict())

    def handle_rho(self, cmd):
        if cmd["integral"]:
            return self.exact(integral_rho_tilde(cmd["x"], cmd["n"]).to_dict())
        return self.exact(qz_rho(cmd["x"], cmd["n"]).to_dict())

    def handle_sigma(self, cmd):
        return self.exact(qz_sigma(cmd["x"], cmd["n"]).to_dict())
