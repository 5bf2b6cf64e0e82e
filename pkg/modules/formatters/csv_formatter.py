import csv
import io
import json
from typing import Any, Dict, Iterable, List, Tuple

from .base_formatter import BaseFormatter


def _flatten(prefix: str, value: Any) -> Iterable[Tuple[str, Any]]:
    if isinstance(value, dict):
        for key, item in value.items():
            yield from _flatten(f"{prefix}.{key}" if prefix else str(key), item)
    elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
        for i, item in enumerate(value):
            yield from _flatten(f"{prefix}[{i}]", item)
    elif isinstance(value, list):
        yield prefix, json.dumps(value)
    else:
        yield prefix, value


class CsvFormatter(BaseFormatter):
    """Comma-separated output; tabular results become one row per record"""

    name = "csv"

    def _write(self, header: List[str], rows: Iterable[List[Any]]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buffer.getvalue()

    def format_result(self, command, config, result, exact, extra=None) -> str:
        data = self.format_value(result)
        if isinstance(data, dict) and isinstance(data.get("rows"), list):
            return self.format_table(data["rows"])
        pairs = [("schema", self.schema), ("command", command), ("exact", exact)]
        pairs += [(f"config.{k}", v) for k, v in config.items()]
        pairs += list(_flatten("result", data))
        if extra:
            pairs += list(_flatten("", self.format_value(extra)))
        return self._write(["key", "value"], ([k, v] for k, v in pairs))

    def format_table(self, rows: List[Dict[str, Any]]) -> str:
        records = [dict(_flatten("", self.format_value(row))) for row in rows]
        header: List[str] = []
        for record in records:
            header += [k for k in record if k not in header]
        return self._write(header, ([record.get(k, "") for k in header] for record in records))

    def format_error(self, name: str, message: str) -> str:
        return self._write(["error", "message"], [[name, message]])
