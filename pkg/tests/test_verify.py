import json

import pytest

from qmperiods.verify import SUITES, plan, run_cell, verify


def test_all_suites_pass():
    report = verify("all", jobs=2)
    assert report.ok, report.to_text()
    checks = {c.check for c in report.cases}
    assert {"theorem1", "lemma3", "ode", "key2", "mirror-inverse", "corollary", "pascal"} <= checks


def test_unknown_suite():
    with pytest.raises(ValueError):
        plan("lemma9")


def test_plan_ranges():
    cells = plan("theorem1", N=5, dmax=2)
    assert [p for _, p in cells] == [{"N": 5, "d": d, "j": j} for d in (1, 2) for j in range(4)]
    assert len(plan("lemma3")) == 3 * 3 * 4
    assert all(p["dmax"] == 4 for _, p in plan("ode"))


def test_case_serialization():
    case = run_cell("closedform", {"N": 5, "d": 1, "j": 1})
    d = case.to_dict()
    assert (d["lhs"], d["rhs"], d["pass"]) == ("3250", "3250", True)
    assert d["elapsed"] >= 0


def test_report_text_and_json():
    report = verify("lemma2", N=4, dmax=2)
    assert report.to_text().endswith("2/2 passed, 0 failed")
    assert json.loads(report.to_json())["summary"]["passed"] == 2
    assert set(SUITES) >= {"theorem1", "lemma1", "lemma2", "lemma3", "lemma4", "ode", "key2"}
