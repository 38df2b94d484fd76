"""Reporting module for Orbita."""

from orbita.reporting.report import (
    Report,
    ReportError,
    Verdict,
    VerdictStatus,
    render_table,
    to_csv,
    to_json,
    write_report,
)

__all__ = [
    "Report",
    "ReportError",
    "Verdict",
    "VerdictStatus",
    "render_table",
    "to_csv",
    "to_json",
    "write_report",
]
