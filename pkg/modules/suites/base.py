"""Abstract acceptance suite interfaces and shared report dataclasses."""

from __future__ import annotations

import logging
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Callable, List, Optional, Tuple

import numpy as np

from modules.errors import ToolkitError

logger = logging.getLogger(__name__)

Outcome = Tuple[bool, float, str]


@dataclass
class CheckResult:
    """One row of a repro table"""

    suite: str
    name: str
    passed: bool
    residual: float = 0.0
    detail: str = ""
    duration_ms: int = 0

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "check": self.name,
            "passed": self.passed,
            "residual": self.residual,
            "detail": self.detail,
            "duration_ms": self.duration_ms,
        }


@dataclass
class SuiteReport:
    suite: str
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def extend(self, other: "SuiteReport"):
        self.checks.extend(other.checks)

    def to_rows(self) -> List[dict]:
        return [c.to_dict() for c in self.checks]

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "failed": [c.name for c in self.checks if not c.passed],
            "rows": self.to_rows(),
        }


class BaseSuite(ABC):
    """Abstract base class for all acceptance suites."""

    name: str
    exact: bool = False

    def __init__(self, controller):
        self.controller = controller
        self.config = controller.config
        self.params = self.config.suite_params(self.name)
        self.rng = np.random.default_rng(int(self.params.get("seed", 0)))

    def param(self, key: str, default: Any) -> Any:
        """Repro-file override for ``key`` cast to the type of the default"""
        value = self.params.get(key, default)
        if value is default or default is None:
            return value
        try:
            return type(default)(value)
        except (TypeError, ValueError):
            logger.warning(f"Invalid {self.name}.{key} override: {value}, using {default}")
            return default

    def _calculate_duration_ms(self, started_at: Optional[float]) -> int:
        if not started_at:
            return 0
        elapsed = time.monotonic() - started_at
        return max(0, int(elapsed * 1000))

    def check(self, name: str, fn: Callable[[], Outcome]) -> CheckResult:
        """Run one check; a domain error counts as a failure, not a crash"""
        started_at = time.monotonic()
        try:
            passed, residual, detail = fn()
        except ToolkitError as e:
            logger.error(f"{self.name}.{name} raised {e.name}: {e}")
            passed, residual, detail = False, float("nan"), f"{e.name}: {e}"
        result = CheckResult(
            self.name, name, bool(passed), float(residual), detail,
            self._calculate_duration_ms(started_at),
        )
        log = logger.info if result.passed else logger.warning
        log(f"[{self.name}] {name}: {'pass' if result.passed else 'FAIL'} (residual {result.residual:.3g})")
        return result

    def run(self) -> SuiteReport:
        report = SuiteReport(self.name)
        for name, fn in self.checks():
            report.checks.append(self.check(name, fn))
        return report

    @abstractmethod
    def checks(self) -> List[Tuple[str, Callable[[], Outcome]]]:
        """Named check callables, run in order"""
