from .base_formatter import BaseFormatter
from .csv_formatter import CsvFormatter
from .factory import FormatterFactory
from .json_formatter import JsonFormatter

__all__ = ["BaseFormatter", "JsonFormatter", "CsvFormatter", "FormatterFactory"]
