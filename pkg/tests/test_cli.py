import json

import pytest

from qmperiods import cli, verify
from qmperiods.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_coeff(capsys):
    assert run(capsys, "coeff", "-N", "5", "-d", "1", "-r", "1") == (0, "B_0 = 120\nB_1 = 770\n")
    assert run(capsys, "coeff", "-N", "5", "-d", "0")[1] == "B_0 = 1\n"
    code, out = run(capsys, "coeff", "-N", "5", "-d", "2", "-r", "0", "--json", "--check", "--method", "conv")
    assert code == 0
    assert json.loads(out) == {"N": 5, "d": 2, "B": ["113400"], "check": True}


def test_coeff_mismatch_exit(capsys, monkeypatch):
    monkeypatch.setattr(cli, "B_coeff_conv", lambda N, d, r: [0] * (r + 1))
    assert run(capsys, "coeff", "-N", "5", "-d", "1", "--check")[0] == 1


def test_intersect(capsys):
    assert run(capsys, "intersect", "-N", "5", "-d", "1", "-a", "3", "-b", "-1", "-j", "0") == (0, "600\n")
    assert run(capsys, "intersect", "-N", "5", "-d", "1", "-a", "2", "-b", "0", "-j", "0") == (0, "3850\n")
    assert run(capsys, "intersect", "-N", "2", "-d", "1", "-a", "0", "-b", "0", "-j", "0") == (0, "0\n")
    code, out = run(capsys, "intersect", "-N", "5", "-d", "2", "-a", "2", "-b", "-1", "-j", "1", "--oracle", "--json")
    assert code == 0 and json.loads(out)["check"] is True


def test_intersect_oracle_mismatch(capsys, monkeypatch):
    monkeypatch.setattr(cli, "w_closed_form", lambda N, d, j: 1)
    assert run(capsys, "intersect", "-N", "5", "-d", "1", "-a", "3", "-b", "-1", "--oracle")[0] == 1


def test_intersect_bad_spec(capsys):
    assert run(capsys, "intersect", "-N", "5", "-d", "1", "-a", "3", "-b", "-2")[0] == 2


@pytest.mark.parametrize("argv", [
    ("verify", "theorem1", "-N", "5", "-dmax", "2"),
    ("verify", "ode", "-N", "5", "-dmax", "4"),
    ("verify", "key2", "-N", "5", "-dmax", "3"),
    ("verify", "lemma3", "-N", "4"),
])
def test_verify_suites_pass(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == 0
    assert "0 failed" in out


def test_verify_json_is_deterministic(capsys):
    argv = ("verify", "theorem1", "-N", "4", "-dmax", "2", "--json", "--no-timings")
    _, a = run(capsys, *argv)
    _, b = run(capsys, *argv + ("--jobs", "2"))
    assert a == b
    data = json.loads(a)
    assert data["summary"] == {"total": 6, "passed": 6, "failed": 0}
    case = data["cases"][0]
    assert set(case) == {"check", "params", "lhs", "rhs", "pass"}


def test_verify_failure_exit(capsys, monkeypatch):
    monkeypatch.setitem(verify.CELLS, "lemma2", lambda N, d: (1, 2))
    code, out = run(capsys, "verify", "lemma2", "-N", "5", "-dmax", "1")
    assert code == 1
    assert "FAIL" in out and "lhs = 1" in out


def test_series(capsys):
    assert run(capsys, "series", "w", "-N", "5", "-i", "0", "-dmax", "2")[1] == "1 + 120*q + 113400*q^2\n"
    code, out = run(capsys, "series", "mirror", "-N", "5", "-dmax", "1", "--json")
    assert json.loads(out) == {"dmax": 1, "terms": [{"coef": "770", "d": 1, "m": 0}]}
    code, out = run(capsys, "series", "ifunction", "-N", "4", "-dmax", "0", "--json")
    comps = json.loads(out)["components"]
    assert [c["terms"] for c in comps] == [
        [{"d": 0, "m": 0, "coef": "1"}],
        [{"d": 0, "m": 1, "coef": "1"}],
        [{"d": 0, "m": 2, "coef": "1/2"}],
    ]
    code, out = run(capsys, "series", "gw", "-N", "5", "-a", "2", "-b", "0", "-dmax", "2")
    assert out == "5*t\n"


def test_series_index_error(capsys):
    assert run(capsys, "series", "w", "-N", "5", "-i", "4")[0] == 2


def test_series_output_is_byte_stable(capsys):
    argv = ("series", "W", "-N", "5", "-j", "3", "-dmax", "3", "--json")
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]
