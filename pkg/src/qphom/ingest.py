"""Loading and validation of scalar time series from CSV files.

Accepted layouts: one value per row, or multi-column rows with the value
column picked by index or by header name.  Lines starting with '#' and blank
lines are skipped.  Files are read as UTF-8.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DataError


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """A scalar series x_1, ..., x_T stored as a float64 array.

    The container itself tolerates non-finite entries so that ``validate``
    can report them; pipeline entry points reject series with a non-empty
    validation report.
    """

    values: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=float).reshape(-1)
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return int(self.values.shape[0])

    @property
    def length(self) -> int:
        return len(self)


@dataclass(frozen=True)
class ValidationIssue:
    index: int | None  # 1-based sample index, None for series-level issues
    message: str


@dataclass
class ValidationReport:
    issues: list[ValidationIssue]

    @property
    def ok(self) -> bool:
        return not self.issues

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "; ".join(
            m.message if m.index is None else f"sample {m.index}: {m.message}"
            for m in self.issues
        )


def validate(ts: TimeSeries) -> ValidationReport:
    """Report non-finite samples (by 1-based index) and zero length."""
    issues: list[ValidationIssue] = []
    if len(ts) == 0:
        issues.append(ValidationIssue(None, "series is empty"))
    for i, v in enumerate(ts.values, start=1):
        if not math.isfinite(v):
            issues.append(ValidationIssue(i, f"non-finite value {v!r}"))
    return ValidationReport(issues)


def _select_cell(cells: list[str], column: int | str | None, row_no: int) -> str:
    if column is None:
        if len(cells) != 1:
            raise DataError(
                f"row {row_no} has {len(cells)} columns; "
                "pass a column index or header name to pick the value column"
            )
        return cells[0]
    if isinstance(column, int):
        if not 0 <= column < len(cells):
            raise DataError(f"row {row_no}: no column {column} (row has {len(cells)})")
        return cells[column]
    raise DataError(f"row {row_no}: unresolved column name {column!r}")


def load_csv(path: str | Path, column: int | str | None = None) -> TimeSeries:
    """Load a series from a CSV file, in file order.

    ``column`` picks the value column: an integer is a 0-based index, a
    string must match a header in the first non-comment row (which is then
    consumed).  With ``column=None`` every row must hold exactly one value.

    Raises ``DataError`` for a missing file, an empty file, or a cell that
    does not parse as a real number (the message names the offending row).
    """
    path = Path(path)
    if not path.is_file():
        raise DataError(f"no such file: {path}")

    values: list[float] = []
    col: int | str | None = column
    header_pending = isinstance(column, str)
    with path.open(newline="", encoding="utf-8") as fh:
        for row_no, cells in enumerate(csv.reader(fh), start=1):
            cells = [c.strip() for c in cells]
            if not cells or all(c == "" for c in cells):
                continue
            if cells[0].startswith("#"):
                continue
            if header_pending:
                if column not in cells:
                    raise DataError(f"header row {row_no} has no column {column!r}")
                col = cells.index(column)  # type: ignore[arg-type]
                header_pending = False
                continue
            cell = _select_cell(cells, col, row_no)
            try:
                values.append(float(cell))
            except ValueError:
                raise DataError(f"non-numeric value {cell!r} at row {row_no}") from None
    if not values:
        raise DataError(f"no data rows in {path}")
    return TimeSeries(np.asarray(values))
