import logging
from typing import Dict, List

from .base import BaseSuite, SuiteReport

logger = logging.getLogger(__name__)


class SuiteService:
    """Registry and dispatcher for acceptance suites."""

    def __init__(self, controller):
        self.controller = controller
        self.suites: Dict[str, BaseSuite] = {}

    def register(self, suite: BaseSuite):
        self.suites[suite.name] = suite
        logger.debug(f"Registered acceptance suite: {suite.name}")

    def get(self, suite_name: str) -> BaseSuite:
        if suite_name in self.suites:
            return self.suites[suite_name]
        raise KeyError(suite_name)

    def names(self) -> List[str]:
        return list(self.suites) + ["all"]

    def run(self, suite_name: str) -> SuiteReport:
        if suite_name == "all":
            report = SuiteReport("all")
            for suite in self.suites.values():
                report.extend(suite.run())
            return report
        return self.get(suite_name).run()
