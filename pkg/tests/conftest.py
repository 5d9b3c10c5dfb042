"""Shared helpers for the test suite."""

from __future__ import annotations

import numpy as np
import pytest

from itskit import CandidateWindow, ResidualSet, SimSpec, TimeSeries, acf

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def residual_set(x, split: int) -> ResidualSet:
    """Wrap a raw array as a ResidualSet for direct estimator tests."""
    x = np.asarray(x, dtype=float)
    return ResidualSet(
        residuals=x,
        studentized=np.zeros_like(x),
        leverage=np.zeros_like(x),
        split=split,
        acf_pre=acf(x[: split - 1]),
        acf_post=acf(x[split - 1 :]),
        acf_all=acf(x),
    )


def random_series(rng: np.random.Generator, length: int | None = None) -> TimeSeries:
    """A noisy two-phase series with randomized shape, for oracle checks."""
    T = int(length if length is not None else rng.integers(20, 120))
    tau = int(rng.integers(8, T - 6))
    t = np.arange(1, T + 1)
    intercept = rng.normal(50.0, 20.0)
    slope = rng.normal(0.0, 1.0)
    ic = rng.normal(0.0, 5.0)
    sc = rng.normal(0.0, 0.5)
    mean = np.where(t < tau, intercept + slope * t, (intercept + ic) + (slope + sc) * t)
    y = mean + rng.normal(0.0, rng.uniform(0.5, 4.0), size=T)
    return TimeSeries(values=y, start_month=1, start_year=2000)


def interior_q(rng: np.random.Generator, length: int) -> int:
    """A change-point candidate leaving at least 4 points per phase."""
    return int(rng.integers(5, length - 3))


@pytest.fixture
def unit_break_spec() -> SimSpec:
    """Anticipatory break: level drop of 7 at month 25, intervention at 31."""
    return SimSpec(
        length=60,
        change_point=25,
        intercept=64.32,
        slope=0.56,
        intercept_change=1.5,
        slope_change=-0.34,
        sd_pre=3.0,
        sd_post=3.0,
        seed=0,
        start_month=1,
        start_year=2008,
    )


@pytest.fixture
def wide_window() -> CandidateWindow:
    return CandidateWindow(intervention=31, before=6, after=6)
