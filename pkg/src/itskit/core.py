"""Core value types, input validation, and calendar indexing.

A series is a monthly outcome anchored to a starting month and year; time
indices are 1-based throughout. Validation never raises: it returns a result
listing every problem found, and callers decide whether to proceed.
"""

from __future__ import annotations

import calendar
import math
from dataclasses import dataclass

import numpy as np


class AnalysisError(Exception):
    """Numerical failure during estimation (maps to CLI exit code 3)."""


class PhaseTooShortError(AnalysisError):
    """A phase or segment has too few observations for the requested fit."""


class DegenerateFitError(AnalysisError):
    """The data admit no unique estimate (constant segment, zero variance)."""


class ValidationFailure(ValueError):
    """Input rejected by validation (maps to CLI exit code 2)."""

    def __init__(self, issues):
        self.issues = tuple(issues)
        super().__init__("; ".join(self.issues) or "validation failed")


# Pre/post phases must each keep at least this many observations outside the
# candidate window for the change-point search to be identified.
MIN_PHASE_MARGIN = 5

MIN_SERIES_LENGTH = 12


@dataclass(frozen=True)
class TimeSeries:
    """A monthly outcome series.

    Parameters
    ----------
    values : sequence of float
        Observations in time order; index 1 is the first month.
    start_month, start_year : int
        Calendar anchor of index 1 (month is 1..12).
    bounds : (float, float), optional
        Declared admissible range for the outcome, lower < upper.
    """

    values: tuple[float, ...]
    start_month: int
    start_year: int
    bounds: tuple[float, float] | None = None

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if not 1 <= int(self.start_month) <= 12:
            raise ValueError(f"start_month must be 1..12, got {self.start_month}")
        if self.bounds is not None:
            lo, hi = self.bounds
            if not lo < hi:
                raise ValueError(f"bounds must satisfy lower < upper, got {self.bounds}")
            object.__setattr__(self, "bounds", (float(lo), float(hi)))

    def __len__(self) -> int:
        return len(self.values)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)


@dataclass(frozen=True)
class CandidateWindow:
    """Candidate change points around the announced intervention.

    The window covers indices ``intervention - before`` through
    ``intervention + after`` inclusive.
    """

    intervention: int
    before: int = 0
    after: int = 0

    def __post_init__(self):
        if self.before < 0 or self.after < 0:
            raise ValueError("window margins before/after must be >= 0")

    @property
    def first(self) -> int:
        return self.intervention - self.before

    @property
    def last(self) -> int:
        return self.intervention + self.after

    def candidates(self) -> range:
        return range(self.first, self.last + 1)


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    issues: tuple[str, ...]

    def raise_if_failed(self) -> None:
        if not self.ok:
            raise ValidationFailure(self.issues)


def validate_series(series: TimeSeries, window: CandidateWindow) -> ValidationResult:
    """Check a series and candidate window against the analysis preconditions.

    Collects every violation rather than stopping at the first; returns a
    :class:`ValidationResult` and never raises.
    """
    issues: list[str] = []
    n = len(series)

    if n < MIN_SERIES_LENGTH:
        issues.append(
            f"series has {n} observations; at least {MIN_SERIES_LENGTH} are required"
        )
    bad = [i + 1 for i, v in enumerate(series.values) if not math.isfinite(v)]
    if bad:
        shown = ", ".join(str(i) for i in bad[:5])
        more = "" if len(bad) <= 5 else f" (and {len(bad) - 5} more)"
        issues.append(f"non-finite value at index {shown}{more}")
    if series.bounds is not None:
        lo, hi = series.bounds
        out = [
            i + 1
            for i, v in enumerate(series.values)
            if math.isfinite(v) and not lo <= v <= hi
        ]
        if out:
            shown = ", ".join(str(i) for i in out[:5])
            more = "" if len(out) <= 5 else f" (and {len(out) - 5} more)"
            issues.append(f"value outside declared bounds [{lo}, {hi}] at index {shown}{more}")

    if not 1 <= window.intervention <= max(n, 1):
        issues.append(
            f"intervention index {window.intervention} is outside the series (1..{n})"
        )
    pre_margin = window.first - 1
    if pre_margin < MIN_PHASE_MARGIN:
        issues.append(
            f"pre-phase margin is {pre_margin} observations before the earliest "
            f"candidate change point (index {window.first}); the fit requires at "
            f"least {MIN_PHASE_MARGIN} observations in each phase outside the "
            f"candidate window"
        )
    post_margin = n - window.last + 1
    if post_margin < MIN_PHASE_MARGIN:
        issues.append(
            f"post-phase margin is {post_margin} observations from the latest "
            f"candidate change point (index {window.last}) to the end of the "
            f"series; the fit requires at least {MIN_PHASE_MARGIN} observations "
            f"in each phase outside the candidate window"
        )

    return ValidationResult(ok=not issues, issues=tuple(issues))


@dataclass(frozen=True)
class CalendarMonth:
    month: int
    year: int

    def __str__(self) -> str:
        return f"{calendar.month_name[self.month]} {self.year}"

    @property
    def iso(self) -> str:
        return f"{self.year:04d}-{self.month:02d}"


def index_to_calendar(index: int, series: TimeSeries) -> CalendarMonth:
    """Map a 1-based series index to its calendar month."""
    if not 1 <= index <= len(series):
        raise ValueError(f"index {index} is outside the series (1..{len(series)})")
    offset = series.start_month - 1 + (index - 1)
    return CalendarMonth(month=offset % 12 + 1, year=series.start_year + offset // 12)


def calendar_to_index(month: int, year: int, series: TimeSeries) -> int:
    """Map a calendar month to its 1-based series index."""
    if not 1 <= month <= 12:
        raise ValueError(f"month must be 1..12, got {month}")
    index = (year - series.start_year) * 12 + (month - series.start_month) + 1
    if not 1 <= index <= len(series):
        raise ValueError(
            f"{calendar.month_name[month]} {year} is outside the observed range "
            f"{index_to_calendar(1, series)} .. {index_to_calendar(len(series), series)}"
        )
    return index
