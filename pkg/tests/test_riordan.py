from fractions import Fraction

import pytest

from cdyck.riordan import (
    RiordanArray,
    RiordanError,
    array_for,
    peaks_array,
    peaks_array_ab,
    points_array,
    points_array_ab,
    riordan_count,
    riordan_table,
    usteps_array,
    usteps_array_ab,
)
from cdyck.series import TruncSeries, series_Sr


@pytest.mark.parametrize(
    "build,r,n,k,expected",
    [(points_array, 2, 2, 1, 12), (usteps_array, 3, 1, 0, 24), (peaks_array, 2, 3, 2, 24), (peaks_array, 3, 0, 0, 3)],
)
def test_entries(build, r, n, k, expected):
    assert build(r, 8).entry(n, k) == expected


def test_points_head_correction():
    arr = points_array(2, 4)
    assert arr.entry(0, 0) == 2
    assert riordan_count("points", 0, 0, 2) == 1


def test_lower_triangular():
    arr = usteps_array(3, 8)
    assert arr.proper
    assert all(arr.entry(n, k) == 0 for n in range(6) for k in range(n + 1, 8))


def test_apply_constant_gives_d():
    arr = peaks_array(2, 8)
    assert arr.apply(TruncSeries.constant(1, 8)) == arr.d


def test_points_array_on_alternating_vector():
    got = points_array(2, 8).apply(TruncSeries.geometric(-1, 8))
    s = series_Sr(2, 8)
    assert got == s + TruncSeries([1], 8)


def test_peaks_array_on_squared_alternating_vector():
    assert peaks_array(2, 6).apply(TruncSeries.geometric(-1, 6) ** 2)[2] == 6


def test_weighted_arrays_reduce_to_colored_case():
    assert usteps_array_ab(2, 1, 6).entry(1, 0) == 10
    for n in range(6):
        for k in range(n + 1):
            assert peaks_array_ab(3, 2, 6).entry(n, k) == peaks_array(3, 6).entry(n, k)
            assert points_array_ab(3, 2, 6).entry(n, k) == points_array(3, 6).entry(n, k)


def test_table_matches_cellwise():
    for stat in ("points", "usteps", "peaks"):
        tri = riordan_table(stat, 3, 5)
        assert tri == [[riordan_count(stat, n, k, 3) for k in range(n + 1)] for n in range(6)]


@pytest.mark.parametrize("r", [0, 1])
def test_small_r_rejected(r):
    with pytest.raises(RiordanError):
        points_array(r)


def test_zero_b_rejected():
    with pytest.raises(RiordanError):
        peaks_array_ab(1, 0)


def test_invalid_array_rejected():
    x = TruncSeries.x(4)
    with pytest.raises(RiordanError):
        RiordanArray(x, x)
    with pytest.raises(RiordanError):
        RiordanArray(TruncSeries.constant(1, 4), TruncSeries.constant(1, 4))


def test_entry_beyond_order_rejected():
    with pytest.raises(RiordanError):
        points_array(2, 4).entry(5, 0)


def test_unknown_stat():
    with pytest.raises(RiordanError):
        array_for("udu", 2)


def test_rational_entries_allowed():
    arr = points_array_ab(Fraction(1, 2), 3, 4)
    assert isinstance(arr.entry(2, 1), Fraction)
