import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from itskit import (
    CandidateWindow,
    TimeSeries,
    ValidationFailure,
    calendar_to_index,
    index_to_calendar,
    validate_series,
)


def series_of(n: int, start_month: int = 1, start_year: int = 2008, **kw) -> TimeSeries:
    return TimeSeries(
        values=[float(i) for i in range(n)],
        start_month=start_month,
        start_year=start_year,
        **kw,
    )


class TestTimeSeries:
    def test_values_coerced_to_float_tuple(self):
        s = TimeSeries(values=[1, 2, 3], start_month=1, start_year=2000)
        assert s.values == (1.0, 2.0, 3.0)
        assert isinstance(s.values, tuple)

    def test_start_month_range_enforced(self):
        with pytest.raises(ValueError, match="start_month"):
            TimeSeries(values=[1.0], start_month=13, start_year=2000)

    def test_bounds_must_be_ordered(self):
        with pytest.raises(ValueError, match="bounds"):
            TimeSeries(values=[1.0], start_month=1, start_year=2000, bounds=(5.0, 5.0))

    def test_length(self):
        assert len(series_of(14)) == 14


class TestCandidateWindow:
    def test_candidate_range(self):
        w = CandidateWindow(intervention=31, before=6, after=6)
        assert list(w.candidates()) == list(range(25, 38))
        assert (w.first, w.last) == (25, 37)

    def test_negative_margins_rejected(self):
        with pytest.raises(ValueError):
            CandidateWindow(intervention=10, before=-1)


class TestValidateSeries:
    def test_wide_window_on_standard_series_passes(self):
        result = validate_series(series_of(60), CandidateWindow(31, 6, 6))
        assert result.ok and result.issues == ()

    def test_minimum_length_boundary_passes(self):
        result = validate_series(series_of(12), CandidateWindow(6, 0, 0))
        assert result.ok

    def test_thin_pre_margin_fails(self):
        result = validate_series(series_of(20), CandidateWindow(8, 3, 3))
        assert not result.ok
        assert any("pre-phase margin" in i for i in result.issues)

    def test_reports_all_issues_without_raising(self):
        s = TimeSeries(
            values=[math.nan] + [200.0] * 10,
            start_month=1,
            start_year=2000,
            bounds=(0.0, 100.0),
        )
        result = validate_series(s, CandidateWindow(3, 2, 0))
        assert not result.ok
        joined = " | ".join(result.issues)
        assert "11 observations" in joined
        assert "non-finite" in joined
        assert "bounds" in joined
        assert "margin" in joined

    def test_raise_if_failed(self):
        result = validate_series(series_of(20), CandidateWindow(8, 3, 3))
        with pytest.raises(ValidationFailure):
            result.raise_if_failed()

    @given(
        t_star=st.integers(10, 50),
        before=st.integers(0, 8),
        after=st.integers(0, 8),
        shrink_b=st.integers(0, 8),
        shrink_a=st.integers(0, 8),
    )
    @settings(max_examples=60, deadline=None)
    def test_shrinking_window_never_invalidates(self, t_star, before, after, shrink_b, shrink_a):
        s = series_of(60)
        wide = validate_series(s, CandidateWindow(t_star, before, after))
        if wide.ok:
            narrow = validate_series(
                s,
                CandidateWindow(t_star, min(before, shrink_b), min(after, shrink_a)),
            )
            assert narrow.ok


class TestCalendar:
    def test_known_mapping(self):
        s = series_of(60, start_month=1, start_year=2008)
        cm = index_to_calendar(29, s)
        assert (cm.month, cm.year) == (5, 2010)
        assert str(cm) == "May 2010"
        assert cm.iso == "2010-05"
        assert index_to_calendar(31, s).iso == "2010-07"

    def test_inverse_mapping(self):
        s = series_of(60, start_month=1, start_year=2008)
        assert calendar_to_index(5, 2010, s) == 29

    def test_year_wrap(self):
        s = series_of(24, start_month=11, start_year=2019)
        assert index_to_calendar(3, s).iso == "2020-01"

    def test_out_of_range_raises(self):
        s = series_of(12)
        with pytest.raises(ValueError):
            index_to_calendar(13, s)
        with pytest.raises(ValueError):
            index_to_calendar(0, s)
        with pytest.raises(ValueError):
            calendar_to_index(1, 1990, s)

    @given(index=st.integers(1, 200), start_month=st.integers(1, 12), start_year=st.integers(1900, 2100))
    @settings(max_examples=100, deadline=None)
    def test_round_trip(self, index, start_month, start_year):
        s = series_of(200, start_month=start_month, start_year=start_year)
        cm = index_to_calendar(index, s)
        assert calendar_to_index(cm.month, cm.year, s) == index
