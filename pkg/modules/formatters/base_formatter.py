from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Any, Dict, List, Optional

import numpy as np

from config.settings import SCHEMA_VERSION


class BaseFormatter(ABC):
    """Abstract base class for result serializers"""

    name: str

    def __init__(self, schema: str = SCHEMA_VERSION):
        self.schema = schema

    # Common value conversions shared by every output format
    def format_exact(self, value) -> str:
        """Exact integers and rationals travel as decimal strings"""
        return str(Fraction(value)) if not isinstance(value, str) else value

    def format_value(self, value: Any) -> Any:
        """Map numpy scalars, rationals and complex numbers to plain data"""
        if isinstance(value, (bool, np.bool_)):
            return bool(value)
        if isinstance(value, (int, np.integer)):
            return int(value)
        if isinstance(value, Fraction):
            return self.format_exact(value)
        if isinstance(value, (float, np.floating)):
            return float(value)
        if isinstance(value, (complex, np.complexfloating)):
            return {"re": float(value.real), "im": float(value.imag)}
        if isinstance(value, dict):
            return {str(k): self.format_value(v) for k, v in value.items()}
        if isinstance(value, (list, tuple)):
            return [self.format_value(v) for v in value]
        if hasattr(value, "to_dict"):
            return self.format_value(value.to_dict())
        return value

    def envelope(
        self,
        command: str,
        config: Dict[str, str],
        result: Any,
        exact: bool,
        extra: Optional[Dict[str, Any]] = None,
    ) -> Dict[str, Any]:
        payload = {
            "schema": self.schema,
            "command": command,
            "config": dict(config),
            "exact": exact,
            "result": self.format_value(result),
        }
        if extra:
            payload.update(self.format_value(extra))
        return payload

    def error_payload(self, name: str, message: str) -> Dict[str, str]:
        return {"error": name, "message": message}

    # Format-specific rendering
    @abstractmethod
    def format_result(
        self,
        command: str,
        config: Dict[str, str],
        result: Any,
        exact: bool,
        extra: Optional[Dict[str, Any]] = None,
    ) -> str:
        """Render one command result"""
        pass

    @abstractmethod
    def format_table(self, rows: List[Dict[str, Any]]) -> str:
        """Render homogeneous rows (sweeps, repro tables)"""
        pass

    @abstractmethod
    def format_error(self, name: str, message: str) -> str:
        pass
