"""Handlers for the multi subcommand group"""

import logging
from typing import Dict

from core.command import CommandSpec, Flag
from modules.cyclotomic import RootOfUnity
from modules.multivar import MultiHabiroElt, multi_ev, multi_sigma, partition_II1, preimage_solutions
from modules.normal_forms import IntMatrix, hnf_enumerate, snf

from .base import BaseHandler, parse_fraction_list, switch

logger = logging.getLogger(__name__)


def parse_roots(text: str):
    return [RootOfUnity.parse(part) for part in text.split(",")]


class MultiHandler(BaseHandler):
    """Integer normal forms, the HNF trace sum and several-variable sigma"""

    group = "multi"

    def commands(self) -> Dict[str, CommandSpec]:
        matrix = Flag("matrix", IntMatrix.parse, help='integer matrix "a,b;c,d"')
        poly = [
            Flag("f", str, help='polynomial in q1..qn, e.g. "q1*q2 - 1"'),
            Flag("nvars", int, 2, "number of variables"),
            Flag("level", int, help="Habiro level N"),
        ]
        return {
            "snf": CommandSpec(self.handle_snf, [matrix], "Smith normal form alpha = U D V"),
            "hnf": CommandSpec(
                self.handle_hnf,
                [Flag("n", int, 2, "matrix size"), Flag("det", int, help="determinant d >= 1")],
                "Hermite representatives of M_n(Z)^+ / Gamma with det d",
            ),
            "partition": CommandSpec(
                self.handle_partition,
                [
                    Flag("n", int, 2, "matrix size"),
                    Flag("beta", float, 4.0, "inverse temperature, beta > n"),
                    Flag("cap", int, self.config.multi.det_cap, "determinant cutoff"),
                ],
                "HNF-weighted trace sum against prod zeta(beta - k)",
            ),
            "sigma": CommandSpec(
                self.handle_sigma,
                poly + [matrix, switch("strict", "refuse alpha that do not preserve the level")],
                "q_i -> prod_j q_j^alpha_ij",
            ),
            "ev": CommandSpec(
                self.handle_ev,
                poly + [Flag("point", parse_roots, help='roots of unity "1/2,1/3"')],
                "evaluate at a point of roots of unity",
            ),
            "preimages": CommandSpec(
                self.handle_preimages,
                [matrix, Flag("r", parse_fraction_list, help='label in (Q/Z)^n, e.g. "1/2,0"')],
                "solutions of alpha s = r in (Q/Z)^n",
            ),
        }

    def handle_snf(self, cmd):
        U, D, V = snf(cmd["matrix"])
        return self.exact({"U": U.to_dict(), "D": D.to_dict(), "V": V.to_dict()})

    def handle_hnf(self, cmd):
        if cmd["n"] < 1 or cmd["det"] < 1:
            raise ValueError(f"hnf needs n >= 1 and det >= 1, got n={cmd['n']}, det={cmd['det']}")
        matrices = hnf_enumerate(cmd["n"], cmd["det"])
        return self.exact({"count": len(matrices), "matrices": [m.to_dict() for m in matrices]})

    def handle_partition(self, cmd):
        result = partition_II1(cmd["n"], cmd["beta"], cmd["cap"])
        payload = result.to_dict()
        payload["agrees"] = result.agrees()
        return self.numeric(payload)

    def _poly(self, cmd) -> MultiHabiroElt:
        return MultiHabiroElt.parse(cmd["f"], cmd["nvars"], cmd["level"])

    def handle_sigma(self, cmd):
        return self.exact(multi_sigma(self._poly(cmd), cmd["matrix"], strict=cmd["strict"]).to_dict())

    def handle_ev(self, cmd):
        return self.exact(multi_ev(self._poly(cmd), cmd["point"]).to_dict())

    def handle_preimages(self, cmd):
        alpha, r = cmd["matrix"], cmd["r"]
        if len(r) != alpha.n:
            raise ValueError(f"label has {len(r)} components, matrix is {alpha.n}x{alpha.n}")
        solutions = preimage_solutions(alpha, r)
        return self.exact({"count": len(solutions), "solutions": [[str(v) for v in s] for s in solutions]})
