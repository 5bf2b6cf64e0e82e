"""Handlers for the witt (alias lambda) subcommand group"""

import logging
from typing import Dict, List

from core.command import CommandSpec, Flag
from modules.witt_lambda import (
    GroupRingElt,
    WittVector,
    adams_frobenius,
    frobenius_lift_check,
    ghost,
    unghost,
    verschiebung,
)

from .base import BaseHandler, parse_fraction_list, switch

logger = logging.getLogger(__name__)


def _truncate(values: List, trunc: int) -> List:
    """Pad with zeros or cut to ``trunc`` components; 0 keeps the input length"""
    if not trunc:
        return list(values)
    return (list(values) + [0] * trunc)[:trunc]


class WittHandler(BaseHandler):
    """Big Witt vectors in ghost coordinates and Frobenius lift checks"""

    group = "witt"
    aliases = ("lambda",)

    def commands(self) -> Dict[str, CommandSpec]:
        vec = Flag("u", parse_fraction_list, help='Witt components "u1,u2,..."')
        other = Flag("v", parse_fraction_list, help="second Witt vector")
        trunc = Flag("trunc", int, 0, "truncation length N (default: input length)")
        return {
            "ghost": CommandSpec(self.handle_ghost, [vec, trunc], "ghost components psi_1..psi_N"),
            "unghost": CommandSpec(
                self.handle_unghost,
                [Flag("psi", parse_fraction_list, help="ghost components"), trunc,
                 switch("integral", "fail on non-integral components")],
                "inverse of the ghost map",
            ),
            "add": CommandSpec(self.handle_add, [vec, other, trunc], "Witt sum"),
            "mul": CommandSpec(self.handle_mul, [vec, other, trunc], "Witt product"),
            "frobenius": CommandSpec(
                self.handle_frobenius, [vec, Flag("n", int, help="index n"), trunc], "F_n on ghost coordinates"
            ),
            "verschiebung": CommandSpec(
                self.handle_verschiebung, [vec, Flag("n", int, help="index n"), trunc], "V_n on ghost coordinates"
            ),
            "frobcheck": CommandSpec(
                self.handle_frobcheck,
                [
                    Flag("k", int, help="cyclic group order"),
                    Flag("p", int, help="prime"),
                    Flag("elem", str, "t", 'element, e.g. "t + 1" or "t1*t2 - 3"'),
                    Flag("nvars", int, 1, "number of generators"),
                ],
                "s_p(x) - x^p in pR",
            ),
        }

    def _vector(self, cmd, name: str = "u") -> WittVector:
        return WittVector.of(_truncate(cmd[name], cmd["trunc"]))

    def handle_ghost(self, cmd):
        return self.exact([str(v) for v in ghost(self._vector(cmd))])

    def handle_unghost(self, cmd):
        psi = _truncate(cmd["psi"], cmd["trunc"])
        return self.exact(unghost(psi, integral=cmd["integral"]).to_dict())

    def handle_add(self, cmd):
        return self.exact((self._vector(cmd) + self._vector(cmd, "v")).to_dict())

    def handle_mul(self, cmd):
        return self.exact((self._vector(cmd) * self._vector(cmd, "v")).to_dict())

    def handle_frobenius(self, cmd):
        return self.exact(adams_frobenius(self._vector(cmd), cmd["n"]).to_dict())

    def handle_verschiebung(self, cmd):
        return self.exact(verschiebung(self._vector(cmd), cmd["n"]).to_dict())

    def handle_frobcheck(self, cmd):
        x = GroupRingElt.parse(cmd["elem"], cmd["k"], cmd["nvars"])
        return self.exact(frobenius_lift_check(x, cmd["p"]).to_dict())
