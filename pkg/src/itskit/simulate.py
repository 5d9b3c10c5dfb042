"""Synthetic series generation with known ground truth.

The mean follows the two-phase segmented line; the errors follow an AR(1)
process whose coefficient and innovation scale may switch at the change
point. The post-regime recursion continues from the last pre-regime error,
so the error path has no artificial reset at the break. Randomness comes
from numpy's default PCG64 generator seeded per spec, which makes every
series reproducible from its spec alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import TimeSeries


@dataclass(frozen=True)
class SimSpec:
    """Ground-truth description of a simulated series.

    The change point must leave at least 5 observations on each side;
    innovation scales may be 0 (an exact piecewise line). ``bounds``, when
    set, clips the finished series and flags the run.
    """

    length: int
    change_point: int
    intercept: float
    slope: float
    intercept_change: float = 0.0
    slope_change: float = 0.0
    phi_pre: float = 0.0
    phi_post: float = 0.0
    sd_pre: float = 1.0
    sd_post: float = 1.0
    seed: int = 0
    bounds: tuple[float, float] | None = None
    start_month: int = 1
    start_year: int = 2000

    def __post_init__(self):
        if self.length < 12:
            raise ValueError(f"length must be at least 12, got {self.length}")
        if not 6 <= self.change_point <= self.length - 4:
            raise ValueError(
                f"change_point {self.change_point} must leave 5 observations per "
                f"phase (6..{self.length - 4} for length {self.length})"
            )
        for name, phi in (("phi_pre", self.phi_pre), ("phi_post", self.phi_post)):
            if not abs(phi) < 1.0:
                raise ValueError(f"{name} must satisfy |phi| < 1, got {phi}")
        if self.sd_pre < 0.0 or self.sd_post < 0.0:
            raise ValueError("innovation scales must be >= 0")


@dataclass(frozen=True, eq=False)
class SimulatedSeries:
    """A generated series with its true mean and error paths."""

    series: TimeSeries
    mean: np.ndarray
    errors: np.ndarray
    clamped: bool

    def __post_init__(self):
        self.mean.setflags(write=False)
        self.errors.setflags(write=False)


def generate_details(spec: SimSpec) -> SimulatedSeries:
    """Generate a series and keep the decomposition used to build it."""
    T = spec.length
    tau = spec.change_point
    t = np.arange(1, T + 1, dtype=float)
    mean = np.where(
        t < tau,
        spec.intercept + spec.slope * t,
        (spec.intercept + spec.intercept_change)
        + (spec.slope + spec.slope_change) * t,
    )

    rng = np.random.default_rng(spec.seed)
    z = rng.standard_normal(T)
    e = np.empty(T)
    # Stationary start for the pre regime, then one recursion per month; the
    # post regime takes over at the change point without re-initializing.
    e[0] = z[0] * spec.sd_pre / math.sqrt(1.0 - spec.phi_pre**2)
    for i in range(1, T):
        if i < tau - 1:
            e[i] = spec.phi_pre * e[i - 1] + spec.sd_pre * z[i]
        else:
            e[i] = spec.phi_post * e[i - 1] + spec.sd_post * z[i]

    y = mean + e
    clamped = False
    if spec.bounds is not None:
        clipped = np.clip(y, spec.bounds[0], spec.bounds[1])
        clamped = bool(np.any(clipped != y))
        y = clipped
    series = TimeSeries(
        values=tuple(y),
        start_month=spec.start_month,
        start_year=spec.start_year,
        bounds=spec.bounds,
    )
    return SimulatedSeries(series=series, mean=mean, errors=e, clamped=clamped)


def generate(spec: SimSpec) -> TimeSeries:
    """Generate the series described by ``spec``."""
    return generate_details(spec).series


def seed_stream(master_seed: int, n: int) -> list[int]:
    """Derive ``n`` independent child seeds from one master seed."""
    return [int(s) for s in np.random.SeedSequence(master_seed).generate_state(n)]
