from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cdyck import kernel, paths
from cdyck.paths import (
    Family,
    OracleCapError,
    Path,
    PeaksAtLevel,
    PointsAtLevel,
    SameColorDDCount,
    UduCount,
    UStepsAtLevel,
    enumerate_colored_dyck,
    enumerate_paths,
    oracle_scan,
    oracle_total,
    stat_value,
    weighted_count,
)


def test_colored_enumeration_count_and_order():
    got = [str(p) for p in enumerate_colored_dyck(2, 2)]
    assert got == [
        "u u d1 d1", "u u d1 d2", "u u d2 d1", "u u d2 d2",
        "u d1 u d1", "u d1 u d2", "u d2 u d1", "u d2 u d2",
    ]


def test_empty_path_is_enumerated_once():
    assert [p.steps for p in enumerate_colored_dyck(0, 5)] == [()]


def test_six_paths_avoid_equal_colored_dd():
    good = [p for p in enumerate_colored_dyck(2, 2) if stat_value(p, SameColorDDCount()) == 0]
    assert len(good) == 6


@pytest.mark.parametrize("n,r", [(3, 2), (4, 3), (3, 4)])
def test_colored_count_is_catalan_times_r_power(n, r):
    assert sum(1 for _ in enumerate_colored_dyck(n, r)) == paths.catalan(n) * r**n


@pytest.mark.parametrize("family,n,expected", [(Family.DYCK, 4, 14), (Family.MOTZKIN, 4, 9), (Family.SCHRODER, 3, 22)])
def test_family_counts(family, n, expected):
    assert sum(1 for _ in enumerate_paths(family, n)) == expected


def test_stat_examples():
    uudd_same = Path.from_word("uudd", [1, 1], r=2)
    assert stat_value(uudd_same, SameColorDDCount()) == 1
    assert stat_value(Path.from_word("uudd", [1, 2], r=2), SameColorDDCount()) == 0
    assert stat_value(uudd_same, PointsAtLevel(1)) == 2
    assert stat_value(Path.from_word("udud", [2, 1], r=2), UduCount()) == 1
    assert stat_value(Path.from_word("uudd"), PeaksAtLevel(2)) == 1
    assert stat_value(Path.from_word("uudd"), UStepsAtLevel(1)) == 1


def test_color_stat_on_uncolored_path_fails():
    with pytest.raises(ValueError):
        stat_value(Path.from_word("ud"), SameColorDDCount())


@pytest.mark.parametrize("word", ["du", "uud", "udd"])
def test_invalid_paths_rejected(word):
    with pytest.raises(ValueError):
        Path.from_word(word)


def test_color_out_of_range_rejected():
    with pytest.raises(ValueError):
        Path.from_word("ud", [3], r=2)


@given(st.integers(0, 5), st.integers(1, 3))
@settings(max_examples=25, deadline=None)
def test_points_conserved(n, r):
    # every path of length 2n has 2n+1 points, whatever the levels
    for p in enumerate_colored_dyck(n, r):
        assert sum(stat_value(p, PointsAtLevel(h)) for h in range(n + 1)) == 2 * n + 1
        assert sum(stat_value(p, UStepsAtLevel(h)) for h in range(1, n + 1)) == n


@pytest.mark.parametrize(
    "stat,n,r,expected",
    [
        (PointsAtLevel(0), 1, 2, 4),
        (UStepsAtLevel(1), 1, 2, 10),
        (UduCount(exactly=1), 2, 2, 4),
        (SameColorDDCount(exactly=1), 2, 2, 2),
        (PeaksAtLevel(1), 1, 2, 8),
    ],
)
def test_oracle_examples(stat, n, r, expected):
    assert oracle_total(stat, n, r) == expected


def test_oracle_scan_matches_path_by_path_enumeration():
    n, r = 4, 3
    scan = oracle_scan(n, r)
    good = [p for p in enumerate_colored_dyck(n, r) if stat_value(p, SameColorDDCount()) == 0]
    assert scan.valid == len(good)
    assert scan.total == paths.catalan(n) * r**n
    for h in range(n + 1):
        assert scan.points[h] == sum(stat_value(p, PointsAtLevel(h)) for p in good)
        assert scan.peaks[h] == sum(stat_value(p, PeaksAtLevel(h)) for p in good)
    for c in range(n):
        assert scan.udu_hist[c] == sum(1 for p in good if stat_value(p, UduCount()) == c)


def test_oracle_needs_target_for_histogram_stats():
    with pytest.raises(ValueError):
        oracle_total(UduCount(), 2, 2)


@pytest.mark.parametrize(
    "family,n,a,b,expected",
    [
        (Family.DYCK, 2, 1, 1, 2),
        (Family.SCHRODER, 2, 1, 1, 6),
        (Family.MOTZKIN, 4, 1, 1, 9),
        (Family.DYCK, 2, 2, 1, 6),
        (Family.SCHRODER, 2, 1, 2, 15),
    ],
)
def test_weighted_count(family, n, a, b, expected):
    assert weighted_count(family, n, a, b) == expected


def test_weighted_count_rational():
    assert weighted_count("motzkin", 1, Fraction(1, 3), 5) == Fraction(1, 3)


def test_cap_refusal_reports_estimate():
    with pytest.raises(OracleCapError) as info:
        list(enumerate_colored_dyck(9, 2))
    assert info.value.estimate == paths.catalan(9) * 2**9


def test_cap_env_override(monkeypatch):
    monkeypatch.setenv(paths.CAP_ENV, "2")
    with pytest.raises(OracleCapError):
        oracle_total(PointsAtLevel(0), 3, 2)
    assert oracle_total(PointsAtLevel(0), 3, 2, cap=3) == 68


@pytest.mark.parametrize("n,r", [(0, 2), (1, 3), (5, 2), (4, 4)])
def test_python_kernel_matches_compiled(n, r):
    if kernel.compiled_dd_histogram is None:
        pytest.skip("compiled kernel not built")
    for pairs in ([], [(0, 1)], [(0, 1), (1, 2), (3, 4)]):
        if pairs and max(max(p) for p in pairs) >= n:
            continue
        assert kernel.compiled_dd_histogram(n, r, pairs) == kernel.python_dd_histogram(n, r, pairs)


def test_sharded_scan_matches_serial():
    serial = oracle_scan(5, 3)
    sharded = oracle_scan(5, 3, workers=2)
    assert serial == sharded


def test_scan_independent_of_backend(monkeypatch):
    fast = oracle_scan(6, 3)
    monkeypatch.setattr(paths, "dd_histogram", kernel.python_dd_histogram)
    paths.clear_oracle_cache()
    try:
        slow = oracle_scan(6, 3)
    finally:
        paths.clear_oracle_cache()
    assert fast == slow
