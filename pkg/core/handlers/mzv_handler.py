"""Handlers for the mzv subcommand group"""

import logging
from typing import Dict

from core.command import CommandSpec, Flag
from modules.mzv_channels import ConeState, channel_transform, mzv_cone
from modules.normal_forms import IntMatrix

from .base import BaseHandler, switch

logger = logging.getLogger(__name__)


class MZVHandler(BaseHandler):
    group = "mzv"

    def commands(self) -> Dict[str, CommandSpec]:
        settings = self.config.mzv
        return {
            "cone": CommandSpec(
                self.handle_cone,
                [
                    Flag("gens", str, help='cone generators "1,0;0,1"'),
                    Flag("forms", str, help='linear forms "1,1|1,0"'),
                    Flag("theta", str, help='character "0,0"'),
                    Flag("hmax", float, settings.hmax, "height cutoff"),
                    Flag("channel", str, "", 'optional matrix "a,b;c,d" applied first'),
                    switch("allow-divergent", "sum even when k <= n", "true" if settings.allow_divergent else "false"),
                ],
                "truncated cone zeta value",
            ),
        }

    def handle_cone(self, cmd):
        state = ConeState.parse(cmd["gens"], cmd["forms"], cmd["theta"])
        if cmd["channel"]:
            state = channel_transform(state, IntMatrix.parse(cmd["channel"]))
        result = mzv_cone(state, cmd["hmax"], allow_divergent=cmd["allow_divergent"])
        payload = result.to_dict()
        payload["state"] = state.to_dict()
        return self.numeric(payload)
