"""
Report module for Orbita.

An experiment produces a Report: an echo of its inputs, a table of result
rows, and verdicts comparing recorded numbers against declared tolerances.
Reports are written as CSV or JSON.
"""

import io
import json
import logging
import sys
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import pandas as pd
from pydantic import BaseModel, Field
from tabulate import tabulate

logger = logging.getLogger("orbita.reporting")

CSV_FLOAT_FORMAT = "%.17g"
CSV_LINE_TERMINATOR = "\r\n"


class ReportError(Exception):
    """Exception raised for report writing errors."""
    pass


class VerdictStatus(str, Enum):
    """Outcome of a verdict."""

    PASS = "PASS"
    FAIL = "FAIL"
    NA = "N/A"


class Verdict(BaseModel):
    """
    Comparison of a recorded value against a tolerance.

    With comparison "le" the verdict passes when value <= tolerance, with
    "ge" when value >= tolerance. A missing value gives N/A.
    """

    name: str
    value: Optional[float] = None
    tolerance: float
    comparison: str = "le"
    status: VerdictStatus = VerdictStatus.NA

    def evaluate(self) -> VerdictStatus:
        if self.value is None:
            return VerdictStatus.NA
        if self.comparison == "le":
            ok = self.value <= self.tolerance
        elif self.comparison == "ge":
            ok = self.value >= self.tolerance
        else:
            raise ReportError(f"Unknown comparison: {self.comparison}")
        return VerdictStatus.PASS if ok else VerdictStatus.FAIL

    @classmethod
    def check(
        cls,
        name: str,
        value: Optional[float],
        tolerance: float,
        comparison: str = "le",
        tol_scale: float = 1.0,
    ) -> "Verdict":
        """Build and evaluate a verdict; ``tol_scale`` widens "le" tolerances."""
        scaled = tolerance * tol_scale if comparison == "le" else tolerance
        verdict = cls(
            name=name,
            value=None if value is None else float(value),
            tolerance=scaled,
            comparison=comparison,
        )
        verdict.status = verdict.evaluate()
        return verdict


class Report(BaseModel):
    """
    Result of one experiment.

    Attributes:
        experiment: Experiment name
        inputs: Echo of the parameters used
        columns: Column names of ``rows``
        rows: Result table
        summary: Scalar results (fitted constants, conic elements)
        verdicts: Checks against declared tolerances
        notices: Free-form remarks (skipped checks and similar)
        wall_time: Seconds spent; excluded from CSV output
    """

    experiment: str
    inputs: Dict[str, Any] = Field(default_factory=dict)
    columns: List[str] = Field(default_factory=list)
    rows: List[List[Any]] = Field(default_factory=list)
    summary: Dict[str, Any] = Field(default_factory=dict)
    verdicts: List[Verdict] = Field(default_factory=list)
    notices: List[str] = Field(default_factory=list)
    wall_time: float = 0.0

    def add_verdict(self, *args, **kwargs) -> Verdict:
        verdict = Verdict.check(*args, **kwargs)
        self.verdicts.append(verdict)
        return verdict

    @property
    def failed(self) -> List[Verdict]:
        return [v for v in self.verdicts if v.evaluate() == VerdictStatus.FAIL]

    @property
    def exit_code(self) -> int:
        """0 if every verdict passes or is N/A, 1 otherwise."""
        return 1 if self.failed else 0

    def column(self, name: str) -> List[Any]:
        index = self.columns.index(name)
        return [row[index] for row in self.rows]

    def verdict(self, name: str) -> Verdict:
        for verdict in self.verdicts:
            if verdict.name == name:
                return verdict
        raise KeyError(name)


def _frame_csv(frame: pd.DataFrame) -> str:
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator=CSV_LINE_TERMINATOR)
    return buffer.getvalue()


def _cell(value: Any) -> Any:
    if isinstance(value, float):
        return CSV_FLOAT_FORMAT % value
    if isinstance(value, (list, tuple, dict)):
        return json.dumps(value)
    return value


def to_csv(report: Report) -> str:
    """
    Render a report as CSV.

    Three tables separated by blank lines: the result rows, the verdicts,
    and a field/value table echoing inputs, scalar results and notices.
    """
    results = pd.DataFrame(report.rows, columns=report.columns)
    verdicts = pd.DataFrame(
        [[v.name, v.value, v.tolerance, v.comparison, v.evaluate().value] for v in report.verdicts],
        columns=["verdict", "value", "tolerance", "comparison", "status"],
    )
    fields = [["experiment", report.experiment]]
    fields += [[f"input.{key}", _cell(value)] for key, value in report.inputs.items()]
    fields += [[f"result.{key}", _cell(value)] for key, value in report.summary.items()]
    fields += [["notice", notice] for notice in report.notices]
    echo = pd.DataFrame(fields, columns=["field", "value"])
    return CSV_LINE_TERMINATOR.join([_frame_csv(results), _frame_csv(verdicts), _frame_csv(echo)])


def to_json(report: Report) -> str:
    """Render a report as one JSON document."""
    data = report.model_dump(mode="json")
    for verdict in data["verdicts"]:
        verdict["status"] = Verdict(**verdict).evaluate().value
    return json.dumps(data, indent=2) + "\n"


def render_table(report: Report, max_rows: int = 12) -> str:
    """Human-readable summary for the log."""
    lines = [f"Experiment: {report.experiment}"]
    if report.rows:
        shown = report.rows[:max_rows]
        lines.append(tabulate(shown, headers=report.columns, floatfmt=".10g"))
        if len(report.rows) > max_rows:
            lines.append(f"... {len(report.rows) - max_rows} more rows")
    if report.verdicts:
        lines.append(
            tabulate(
                [[v.name, v.value, v.comparison, v.tolerance, v.evaluate().value] for v in report.verdicts],
                headers=["verdict", "value", "cmp", "tolerance", "status"],
                floatfmt=".6g",
            )
        )
    lines.extend(f"Notice: {notice}" for notice in report.notices)
    return "\n".join(lines)


def write_report(report: Report, fmt: str = "csv", out: Optional[Union[str, Path]] = None) -> None:
    """
    Write a report to ``out`` or to stdout.

    Raises:
        ReportError: For an unknown format or an unwritable path
    """
    if fmt == "csv":
        text = to_csv(report)
    elif fmt == "json":
        text = to_json(report)
    else:
        raise ReportError(f"Unknown report format: {fmt}")

    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return

    try:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    except OSError as e:
        logger.error(f"Error writing report to {out}: {str(e)}")
        raise ReportError(f"Cannot write report to {out}: {str(e)}") from e
    logger.info(f"Wrote {fmt} report to {out}")
