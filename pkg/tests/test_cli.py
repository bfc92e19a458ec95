import io
import json
import subprocess
import sys

import pytest

from sl3lam.cli import run

ZERO = json.dumps({"flavor": "X", "coords": ["0"] * 10})


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out)
    text = out.getvalue()
    return code, (json.loads(text) if text else None), text


def test_casimir_example():
    point = json.dumps({"flavor": "X", "coords": ["1"] + ["0"] * 9})
    code, data, _ = call("casimir", "--chart", "dstar:p", "--point", point)
    assert code == 0 and data == {"w1": "0", "w2": "1"}


def test_mutate_zero_point():
    code, data, _ = call("mutate", "--path", '[{"mutate":1}]', "--point", ZERO)
    assert code == 0 and data["point"] == json.loads(ZERO)


def test_point_from_file(tmp_path):
    f = tmp_path / "p.json"
    f.write_text(json.dumps({"flavor": "X", "coords": ["0", "0", "1/2", "0", "0", "0", "0", "0", "0", "0"]}))
    code, data, _ = call("casimir", "--chart", "dstar", "--point", f"@{f}")
    assert data == {"w1": "1/2", "w2": "0"}


def test_verify_suite_from_file_path():
    from importlib import resources
    path = str(resources.files("sl3lam.fixtures") / "dstar.json")
    code, data, _ = call("verify", "--suite", "weyl-relations", "--surface", path)
    assert code == 0 and data["passed"]
    names = [c["name"] for c in data["suites"][0]["checks"]]
    assert any("involution" in n for n in names) and any("braid" in n for n in names)


def test_weyl_loop_and_closed_form_agree():
    point = json.dumps({"flavor": "X", "coords": ["1", "-2", "0", "3", "0", "0", "0", "0", "0", "0"]})
    _, closed, _ = call("weyl", "--chart", "dstar:p", "--word", "121", "--point", point)
    _, loop, _ = call("weyl", "--chart", "dstar:p", "--word", "121", "--loop", "--point", point)
    assert closed == loop


def test_other_subcommands():
    assert call("quiver", "--surface", "triangle")[1]["frozen"] == [1, 2, 3, 4, 5, 6]
    code, data, _ = call("flip", "--surface", "square", "--edge", "E", "--point", json.dumps({"flavor": "X", "coords": ["1"] * 12}))
    assert code == 0 and len(data["path"]) == 4
    assert call("dynkin", "--point", ZERO)[1] == json.loads(ZERO)
    assert call("ends", "--ends", "o+", "--word", "121")[1]["result"] == [["o-", 1]]
    assert len(call("catalog")[1]) == 11
    assert call("catalog", "--name", "curve-3", "--variant", "rotate")[1][0]["coords"] == {"2": "1"}
    stations = call("track", "--path", '[{"mutate":5},{"mutate":3}]', "--vertices", "3,5")[1]
    assert stations[-1]["theta_star"] == {"3": {"w1": "0", "w2": "0"}, "5": {"w1": "0", "w2": "0"}}


@pytest.mark.parametrize("argv", [
    ["nope"],
    ["casimir", "--chart", "dstar:p", "--point", "{not json"],
    ["casimir", "--chart", "dstar:p", "--point", json.dumps({"flavor": "X", "coords": ["1"]})],
    ["flip", "--surface", "square", "--edge", "RT"],
    ["flip", "--surface", "square", "--edge", "missing"],
    ["casimir", "--chart", "square"],
    ["verify"],
])
def test_usage_errors_exit_2(argv):
    assert call(*argv)[0] == 2


def test_output_is_deterministic():
    a = call("verify", "--suite", "a-side", "--rng-seed", "5", "--random", "50")[2]
    b = call("verify", "--suite", "a-side", "--rng-seed", "5", "--random", "50")[2]
    assert a == b


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sl3lam.cli", "ends", "--ends", "o+", "--word", "11"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"] == [["o+", 1]]


def test_pretty_output():
    _, _, text = call("catalog", "--name", "curve-1", "--pretty")
    assert "\n  " in text


def test_failed_verification_exits_1(monkeypatch):
    from sl3lam import verify
    failing = lambda surface, rng_seed=0, n_random=0: {
        "suite": "stub", "claim": "always fails", "passed": False,
        "checks": [{"name": "stub", "passed": False, "witness": {"index": 0}}]}
    monkeypatch.setitem(verify.SUITES, "stub", failing)
    code, data, _ = call("verify", "--suite", "stub")
    assert code == 1 and data["suites"][0]["checks"][0]["witness"] == {"index": 0}
