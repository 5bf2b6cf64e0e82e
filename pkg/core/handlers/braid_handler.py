"""Handlers for the braid subcommand group"""

import logging
from typing import Dict

from core.command import CommandSpec, Flag
from modules.braids import (
    BraidWord,
    compose_exponent,
    compose_identity_check,
    markov_check,
    rho_endo,
    torus_knot_action,
    writhe,
)

from .base import BaseHandler

logger = logging.getLogger(__name__)


class BraidHandler(BaseHandler):
    """rho_m(s_i) = s_i T_N^m on braid words"""

    group = "braid"

    def commands(self) -> Dict[str, CommandSpec]:
        word = [
            Flag("n", int, help="number of strands N"),
            Flag("word", str, "", 'word such as "s1 s2^-1"'),
            Flag("center", int, 0, "exponent of the full twist T_N"),
        ]
        return {
            "rho": CommandSpec(self.handle_rho, word + [Flag("m", int, help="twist parameter m")], "rho_m(gamma)"),
            "compose": CommandSpec(
                self.handle_compose,
                word + [Flag("n1", int, help="first parameter"), Flag("n2", int, help="second parameter")],
                "rho_n2 after rho_n1",
            ),
            "torus": CommandSpec(
                self.handle_torus,
                [Flag("a", int, help="strands"), Flag("b", int, help="twists"), Flag("m", int, help="twist parameter")],
                "action on torus knot braids",
            ),
            "markov": CommandSpec(
                self.handle_markov, word + [Flag("m", int, help="twist parameter")], "stabilization bookkeeping"
            ),
        }

    def _word(self, cmd) -> BraidWord:
        return BraidWord.parse(cmd["n"], cmd["word"], cmd["center"])

    def handle_rho(self, cmd):
        gamma = self._word(cmd)
        image = rho_endo(gamma, cmd["m"])
        return self.exact({"writhe": writhe(gamma), "image": image.to_dict()})

    def handle_compose(self, cmd):
        gamma = self._word(cmd)
        exponent = compose_exponent(gamma.strands, cmd["n1"], cmd["n2"])
        return self.exact({
            "exponent": exponent,
            "writhe": writhe(gamma),
            "holds": compose_identity_check(gamma, cmd["n1"], cmd["n2"]),
        })

    def handle_torus(self, cmd):
        return self.exact(torus_knot_action(cmd["a"], cmd["b"], cmd["m"]).to_dict())

    def handle_markov(self, cmd):
        return self.exact(markov_check(self._word(cmd), cmd["m"]).to_dict())
