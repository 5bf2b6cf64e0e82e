import json
from typing import Any, Dict, List, Optional

from .base_formatter import BaseFormatter


class JsonFormatter(BaseFormatter):
    """Versioned JSON documents, one per invocation"""

    name = "json"

    def __init__(self, indent: Optional[int] = 2, **kwargs):
        super().__init__(**kwargs)
        self.indent = indent

    def _dump(self, data: Any) -> str:
        return json.dumps(data, indent=self.indent, sort_keys=False)

    def format_result(self, command, config, result, exact, extra=None) -> str:
        return self._dump(self.envelope(command, config, result, exact, extra))

    def format_table(self, rows: List[Dict[str, Any]]) -> str:
        return self._dump({"schema": self.schema, "rows": self.format_value(rows)})

    def format_error(self, name: str, message: str) -> str:
        return self._dump(self.error_payload(name, message))
