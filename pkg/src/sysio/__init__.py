"""System/start file formats and the JSON report."""

from src.sysio.parser import (
    format_polynomial,
    format_system,
    parse_polynomial,
    parse_start,
    parse_system,
)
from src.sysio.report import build_report, emit_report

__all__ = [
    "build_report",
    "emit_report",
    "format_polynomial",
    "format_system",
    "parse_polynomial",
    "parse_start",
    "parse_system",
]
