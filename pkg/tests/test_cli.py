import json
import subprocess
import sys

import pytest

from albertine import cli, comp


@pytest.fixture(autouse=True)
def _no_seed_env(monkeypatch):
    monkeypatch.delenv("ALBERTINE_SEED", raising=False)


def test_verify_comp_zorn(capsys):
    code, rep = cli.run(["verify", "comp:zorn"])
    out = capsys.readouterr().out
    assert code == 0 and rep.ok
    assert out.strip().splitlines()[-1].startswith("ok: ")
    assert "[PASS] composition_law" in out


def test_census_her(capsys):
    code, rep = cli.run(["census", "her"])
    assert code == 0
    assert rep["idempotent_count"].detail == "3"


def test_census_roots():
    code, rep = cli.run(["census", "roots"])
    assert code == 0 and rep["root_count"].detail == "240"


def test_signature_split():
    code, rep = cli.run(["signature", "split-27"])
    assert code == 0
    assert rep.checks[0].detail.startswith("3 ")


def test_signature_all():
    code, rep = cli.run(["signature", "all"])
    assert code == 0 and len(rep.checks) >= 4


@pytest.mark.parametrize("argv", [
    ["verify", "comp:nothing"],
    ["signature", "compact-8"],
    ["diagonalize", "--field", "r"],
    ["census"],
    [],
])
def test_usage_errors_exit_two(argv, capsys):
    code, rep = cli.run(argv)
    assert code == 2 and rep is None


def test_bad_seed_env_exits_two(monkeypatch, capsys):
    monkeypatch.setenv("ALBERTINE_SEED", "seven")
    code, _ = cli.run(["diagonalize", "--field", "p", "--p", "3", "--trials", "2"])
    assert code == 2
    assert "ALBERTINE_SEED" in capsys.readouterr().err


def test_seed_env_overrides_flag(monkeypatch):
    monkeypatch.setenv("ALBERTINE_SEED", "11")
    _, rep = cli.run(["diagonalize", "--field", "p", "--p", "3", "--trials", "3", "--seed", "0"])
    assert rep.command.endswith("--seed 11")


def test_diagonalize_is_deterministic():
    argv = ["diagonalize", "--field", "p", "--p", "5", "--trials", "4", "--seed", "3"]
    (c1, r1), (c2, r2) = cli.run(argv), cli.run(argv)
    assert c1 == c2 == 0
    assert [c.as_dict() for c in r1.checks] == [c.as_dict() for c in r2.checks]


def test_failure_exits_one_with_counterexample(monkeypatch, tmp_path, capsys):
    real = comp.zorn
    monkeypatch.setattr(cli.comp, "zorn", lambda R: comp.corrupt(real(R)))
    path = tmp_path / "out.json"
    code, rep = cli.run(["--json", str(path), "verify", "comp:zorn"])
    out = capsys.readouterr().out
    assert code == 1
    assert out.strip().splitlines()[-1].startswith("FAILED: ")
    assert "counterexample:" in out
    data = json.loads(path.read_text())
    bad = next(c for c in data["checks"] if c["name"] == "composition_law")
    assert bad["status"] == "fail" and set(bad["counterexample"]["values"]) == {"x", "y"}


def test_json_schema(tmp_path):
    path = tmp_path / "census.json"
    code, _ = cli.run(["--json", str(path), "census", "roots"])
    data = json.loads(path.read_text())
    assert code == 0
    assert set(data) == {"version", "command", "checks", "elapsed_ms"}
    assert data["command"] == "census roots"
    for c in data["checks"]:
        assert set(c) == {"name", "ref", "status", "detail", "counterexample"}
        assert c["status"] == "pass" and c["counterexample"] is None
    assert data["elapsed_ms"] >= 0


def test_report_bundle(tmp_path):
    path = tmp_path / "report.json"
    code, rep = cli.run(["report", "--json", str(path)])
    assert code == 0
    names = [c["name"] for c in json.loads(path.read_text())["checks"]]
    assert any(n.startswith("census her:") for n in names)
    assert any(n.startswith("verify jordan:mat3:") for n in names)


def test_generators_mat2():
    code, rep = cli.run(["generators", "mat2-f2"])
    assert code == 0 and rep["triple_generates"].passed


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "albertine.cli", "census", "roots"],
                          capture_output=True, text=True, timeout=300)
    assert proc.returncode == 0
    assert "root_count" in proc.stdout
