"""The repro subcommand: run an acceptance suite and emit its table"""

import logging
from typing import Dict

from core.command import CommandOutput, CommandSpec

from .base import BaseHandler

logger = logging.getLogger(__name__)


class ReproHandler(BaseHandler):
    group = "repro"

    def commands(self) -> Dict[str, CommandSpec]:
        return {
            name: CommandSpec(self._runner(name), [], f"acceptance suite '{name}'")
            for name in self.controller.suite_service.names()
        }

    def _runner(self, name: str):
        def run(cmd):
            return self.handle_repro(name)

        return run

    def handle_repro(self, name: str) -> CommandOutput:
        service = self.controller.suite_service
        report = service.run(name)
        exact = all(s.exact for s in service.suites.values()) if name == "all" else service.get(name).exact
        failed = [c.name for c in report.checks if not c.passed]
        if failed:
            logger.warning(f"repro {name}: {len(failed)} checks failed: {failed}")
        else:
            logger.info(f"repro {name}: all {len(report.checks)} checks passed")
        return CommandOutput(report.to_dict(), exact, report.to_rows(), code=0 if report.passed else 1)
