import json
import subprocess
import sys
from importlib import resources

import pytest

from conftest import PD
from ffk.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    return code, json.loads(capsys.readouterr().out)


def test_count_trefoil(capsys):
    code, out = call(capsys, "count", PD["trefoil"], "--p", "2", "--nu", "1")
    assert code == 0
    assert out["q"] == 2 and out["delta_q"] == 3 and out["count"] == 3
    assert set(out) >= {"q", "delta_q", "count", "p_divides_c0", "elementary_divisors"}


def test_alex_unknot(capsys):
    assert call(capsys, "alex", "unknot") == (0, {"poly": [1], "method": "dehn"})


@pytest.mark.parametrize("method", ["dehn", "fox"])
def test_alex_corpus_name(capsys, method):
    code, out = call(capsys, "alex", "5_2", "--method", method)
    assert out["poly"] == [2, -3, 2]


def test_file_input(capsys, tmp_path):
    path = tmp_path / "k.pd"
    path.write_text(PD["figure-eight"])
    code, out = call(capsys, "alex", "--file", str(path))
    assert out["poly"] == [1, -3, 1]


def test_parse_and_present(capsys):
    code, out = call(capsys, "parse", PD["trefoil"])
    assert out["v"] == 3 and out["null_region"] == 0 and len(out["regions"]) == 5
    code, out = call(capsys, "present", PD["trefoil"])
    assert set(out) == {"dehn", "wirtinger"}


def test_enumerate(capsys):
    code, out = call(capsys, "enumerate", "trefoil", "--p", "3", "--cap", "8")
    assert code == 0
    assert out["stable_count"] == 7
    assert out["orbifold_count"] == {"num": 7, "den": 2}
    assert out["automorphism_orders"] == [2] * 7
    assert len(out["class_representatives"]) == 7


def test_torsor(capsys):
    code, out = call(capsys, "torsor", "trefoil", "--group", "gl1", "--p", "2", "--level", "2")
    assert out["solutions"] == 3 and out["classes"] == 3
    code, out = call(capsys, "torsor", "trefoil", "--group", "gl2", "--p", "2", "--level", "2")
    assert code == 0 and out["fixed_group_order"] == 6


def test_module_error_exit_code(capsys):
    code, out = call(capsys, "parse", "X[1,2,3]")
    assert code == 1
    assert out["error"] == "MalformedNotation" and out["detail"]


def test_bad_prime(capsys):
    code, out = call(capsys, "count", "trefoil", "--p", "4")
    assert code == 1 and out["error"] == "InvalidParameter"


def test_not_stabilized_carries_the_report(capsys):
    code, out = call(capsys, "enumerate", "trefoil", "--p", "3", "--cap", "1")
    assert code == 1 and out["error"] == "NotStabilized"
    assert out["report"][0]["level"] == 1


def test_budget_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("FFK_BUDGET", "10")
    code, out = call(capsys, "enumerate", "torus(2,5)", "--cap", "6")
    levels = out["levels"] if code == 0 else out["report"]
    assert any(r["status"].startswith("skipped") for r in levels)
    monkeypatch.setenv("FFK_BUDGET", str(2 ** 20))
    code, out = call(capsys, "enumerate", "torus(2,5)", "--cap", "6")
    assert all(r["status"] == "ok" for r in out["levels"])


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        run(["frobnicate"])
    assert exc.value.code == 2


def test_verify_p2(capsys):
    code, out = call(capsys, "verify", "--p", "2", "--nu", "1")
    assert out["all_pass"]
    keys = [(r["knot"], r["p"], r["nu"]) for r in out["rows"]]
    assert keys == sorted(keys) and len(keys) == 5


def test_corpus_regen(capsys, tmp_path):
    target = tmp_path / "c.json"
    code, out = call(capsys, "corpus", "regen", "--out", str(target))
    assert out["entries"] == 15
    bundled = resources.files("ffk").joinpath("data").joinpath("corpus.json").read_text()
    assert target.read_text() == bundled


def test_pretty_and_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "ffk", "alex", "trefoil", "--pretty"],
                         capture_output=True, text=True, check=True).stdout
    assert "\n  " in out
    assert json.loads(out)["poly"] == [1, -1, 1]
