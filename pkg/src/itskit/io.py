"""CSV reading and writing for monthly outcome series."""

from __future__ import annotations

import csv
import io
from pathlib import Path

from .core import TimeSeries, ValidationFailure


def _parse_month(text: str, row: int) -> tuple[int, int]:
    parts = text.strip().split("-")
    if len(parts) >= 2:
        try:
            year, month = int(parts[0]), int(parts[1])
        except ValueError:
            year, month = 0, 0
        if 1 <= month <= 12 and year >= 1:
            return month, year
    raise ValidationFailure(
        [f"row {row}: could not parse date {text!r} (expected YYYY-MM or YYYY-MM-DD)"]
    )


def parse_csv(
    source,
    outcome: str = "outcome",
    date: str | None = None,
    start_month: int | None = None,
    start_year: int | None = None,
    bounds: tuple[float, float] | None = None,
) -> TimeSeries:
    """Read a monthly series from CSV.

    ``source`` may be a path or an open text stream. The file must have one
    header row; ``outcome`` names the value column. When ``date`` names a
    date column, consecutive rows must be consecutive calendar months and
    the series anchor is taken from the first row (explicit anchors, if also
    given, must agree). Without a date column, ``start_month`` and
    ``start_year`` are required.

    Raises
    ------
    ValidationFailure
        For structural problems, naming the offending row or column.
    """
    if isinstance(source, (str, Path)):
        with open(source, newline="") as fh:
            return parse_csv(fh, outcome, date, start_month, start_year, bounds)

    reader = csv.reader(source)
    try:
        header = next(reader)
    except StopIteration:
        raise ValidationFailure(["input is empty; expected a CSV header row"]) from None
    header = [h.strip() for h in header]
    dupes = {h for h in header if header.count(h) > 1}
    if dupes:
        raise ValidationFailure(
            [f"duplicate column name {d!r} in header" for d in sorted(dupes)]
        )

    def column(name: str) -> int:
        if name not in header:
            raise ValidationFailure(
                [f"column {name!r} not found; available columns: {', '.join(header)}"]
            )
        return header.index(name)

    val_col = column(outcome)
    date_col = column(date) if date is not None else None

    values: list[float] = []
    months: list[tuple[int, int]] = []
    for i, row in enumerate(reader, start=1):
        if not row or all(not cell.strip() for cell in row):
            continue  # skip blank lines
        if len(row) != len(header):
            raise ValidationFailure(
                [f"row {i}: expected {len(header)} fields, got {len(row)}"]
            )
        cell = row[val_col].strip()
        if not cell:
            raise ValidationFailure(
                [f"row {i}: blank outcome value in column {outcome!r}"]
            )
        try:
            value = float(cell)
        except ValueError:
            raise ValidationFailure(
                [f"row {i}: could not parse outcome value {cell!r} in column {outcome!r}"]
            ) from None
        values.append(value)
        if date_col is not None:
            months.append(_parse_month(row[date_col], i))

    if not values:
        raise ValidationFailure(["no data rows found after the header"])

    if date_col is not None:
        for j in range(1, len(months)):
            prev, cur = months[j - 1], months[j]
            if (cur[1] * 12 + cur[0]) - (prev[1] * 12 + prev[0]) != 1:
                raise ValidationFailure(
                    [
                        f"row {j + 1}: date {cur[1]:04d}-{cur[0]:02d} does not follow "
                        f"{prev[1]:04d}-{prev[0]:02d} by one month; the series must be "
                        f"consecutive monthly observations"
                    ]
                )
        anchor_month, anchor_year = months[0]
        if (start_month is not None and start_month != anchor_month) or (
            start_year is not None and start_year != anchor_year
        ):
            raise ValidationFailure(
                [
                    f"declared start {start_year}-{start_month:02d} disagrees with the "
                    f"date column ({anchor_year}-{anchor_month:02d})"
                ]
            )
        start_month, start_year = anchor_month, anchor_year
    elif start_month is None or start_year is None:
        raise ValidationFailure(
            [
                "no date column was given, so start_month and start_year are "
                "required to anchor the series"
            ]
        )

    return TimeSeries(
        values=values, start_month=start_month, start_year=start_year, bounds=bounds
    )


def series_to_csv(series: TimeSeries) -> str:
    """Render a series as date,outcome CSV (dates as YYYY-MM)."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["date", "outcome"])
    month, year = series.start_month, series.start_year
    for v in series.values:
        writer.writerow([f"{year:04d}-{month:02d}", repr(v)])
        month += 1
        if month > 12:
            month, year = 1, year + 1
    return out.getvalue()
