"""Factory for creating output formatters"""

import logging

from .base_formatter import BaseFormatter

logger = logging.getLogger(__name__)


class FormatterFactory:
    """Factory class to create the formatter for an output format"""

    @staticmethod
    def create(fmt: str, **kwargs) -> BaseFormatter:
        """Create the formatter for ``fmt``

        Raises:
            ValueError: If the format is not supported
        """
        from .csv_formatter import CsvFormatter
        from .json_formatter import JsonFormatter

        fmt = (fmt or "json").lower()
        if fmt == "json":
            return JsonFormatter(**kwargs)
        elif fmt == "csv":
            return CsvFormatter(**{k: v for k, v in kwargs.items() if k != "indent"})
        raise ValueError(f"Unsupported output format: {fmt}")

    @staticmethod
    def get_supported_formats() -> list[str]:
        return ["json", "csv"]

    @staticmethod
    def validate_format(fmt: str) -> None:
        if (fmt or "").lower() not in FormatterFactory.get_supported_formats():
            raise ValueError(f"Unsupported output format: {fmt}")
