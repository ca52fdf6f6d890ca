"""Finite semigroup analysis with inherent nondualisability checks."""
from .core import FiniteSemigroup, parse_and_validate, parse_table_text, format_table_text
from .catalog import catalog, catalog_names
from .classify import Status, Verdict, classify, verify_witness
from .errors import SemidualError

__all__ = ["FiniteSemigroup", "parse_and_validate", "parse_table_text", "format_table_text",
           "catalog", "catalog_names", "Status", "Verdict", "classify", "verify_witness",
           "SemidualError"]
__version__ = "0.1.0"
