import json
from fractions import Fraction

import pytest

from cdyck import formulas as fm
from cdyck import verify as vf


def test_checks_pass_on_small_grids():
    for cid, spec in vf.CHECKS.items():
        kw = {"n_max": 6, "r_range": (2, 3)}
        if cid == "lemma2.2":
            kw = {"m_max": 2, "order": 10}
        rep = spec.run(**kw)
        assert rep.passed, rep.counterexample


def test_registry_ids():
    assert {"eq1.5", "cor2.3", "lemma2.2", "eq2.5", "cor3.2", "cor3.3", "cor4.2", "cor4.3",
            "cor4.4", "cor5.2", "cor5.3", "thm6.2"} <= set(vf.CHECKS)


def test_weighted_relation_skips_n0():
    rep = vf.check_schroder_catalan_motzkin(n_max=3, grid=((1, 1),))
    assert rep.instances[0]["status"] == "skip"
    assert rep.passed


def test_tower_sum_collapses_when_a_equals_b():
    assert vf.check_schroder_tower_sum(n_max=6, m_max=2, grid=((2, 2),)).passed


def test_z_tower_requires_nonzero_a():
    with pytest.raises(ValueError):
        vf.check_z_tower(grid=((0, 1),))


def test_binomial_transform_at_rational_m():
    rep = vf.check_peaks_binomial_transform(n_max=6, r_range=(2, 4), m_grid=(Fraction(1, 3), Fraction(-5, 2)))
    assert rep.passed


def _break_peaks(monkeypatch):
    real = fm.peak_count
    monkeypatch.setattr(fm, "peak_count", lambda n, ell, r: real(n, ell, r) + (1 if n >= 3 else 0))


def test_failure_reports_smallest_counterexample(monkeypatch):
    _break_peaks(monkeypatch)
    rep = vf.CHECKS["cor5.2"].run(n_max=6, r_range=(2, 3))
    assert not rep.passed and rep.status == "fail"
    assert rep.counterexample["params"]["n"] == 3
    assert rep.counterexample["params"]["r"] == 2


def test_counterexample_refails_in_isolation(monkeypatch):
    _break_peaks(monkeypatch)
    rep = vf.CHECKS["cor5.2"].run(n_max=6, r_range=(2, 3))
    again = vf.rerun(rep)
    assert not again.passed
    assert again.counterexample["params"] == rep.counterexample["params"]


def test_rerun_needs_a_counterexample():
    with pytest.raises(ValueError):
        vf.rerun(vf.check_points_alternating(n_max=2, r_range=(2,)))


def test_report_json_schema():
    rep = vf.check_udu_first_moment(n_max=4, r_range=(2,))
    d = json.loads(rep.to_json())
    assert {"check_id", "grid", "status", "counterexample", "millis", "scope"} <= set(d)
    assert d["status"] == "pass" and d["counterexample"] is None
    assert d["instances"]["total"] == 5
    full = json.loads(rep.to_json(with_instances=True))
    assert full["instances"][0]["params"] == {"n": 0, "r": 2}
    combined = json.loads(vf.reports_to_json([rep]))
    assert combined["status"] == "pass" and combined["checks"][0]["check_id"] == "thm6.2"


def test_reports_deterministic():
    a = vf.check_points_weighted_alternating(n_max=5, r_range=(3,))
    b = vf.check_points_weighted_alternating(n_max=5, r_range=(3,))
    assert a.instances == b.instances


def test_recurrence_tables(tables):
    assert vf.recurrence_table("points", 2, 6) == tables["points"]["2"]
    assert vf.recurrence_table("usteps", 3, 6) == tables["usteps"]["3"]
    assert vf.recurrence_table("peaks", 2, 0) == [[2]]


@pytest.mark.parametrize("stat,n_max,rs", [("points", 6, (2, 3)), ("udu", 6, (2, 3)), ("peaks", 0, (2,))])
def test_cross_check_examples(stat, n_max, rs):
    rep = vf.cross_check(stat, n_max, rs)
    assert rep.passed
    if stat == "udu":
        assert set(rep.instances[-1]["values"]) == {"oracle", "closed_form", "series"}


def test_cross_check_rejects_unknown_stat():
    with pytest.raises(ValueError):
        vf.cross_check("valleys", 2)
