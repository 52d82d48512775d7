from __future__ import annotations

import json
import subprocess
import sys

import pytest

from effcat.cli import DEFAULTS, main, resolve_settings
from effcat.instances import ConfigError
from effcat.laws import LawReport


def run_cli(*args, env=None):
    import os
    full_env = dict(os.environ)
    full_env.pop("EFFCAT_BUDGET", None)
    full_env.update(env or {})
    return subprocess.run([sys.executable, "-m", "effcat.cli", *args],
                          capture_output=True, env=full_env)


def test_pass_exit_code_and_json_round_trip():
    proc = run_cli("check", "--instance", "error", "--suite", "centrality", "--format", "json")
    assert proc.returncode == 0, proc.stderr
    report = LawReport.from_dict(json.loads(proc.stdout))
    assert report.to_json().encode() == proc.stdout
    assert report.config["instance"] == "error" and report.config["sizes"]


def test_json_is_byte_identical_across_runs_and_workers():
    base = ("check", "--instance", "list", "--suite", "product-props", "--format", "json")
    one = run_cli(*base).stdout
    assert one == run_cli(*base).stdout
    assert one == run_cli(*base, "--workers", "2").stdout


def test_failure_exit_code():
    proc = run_cli("check", "--instance", "error", "--suite", "consistency-axioms",
                   "--set", "mutant=cons-always-true", "--format", "json")
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["status"] == "fail"


def test_config_errors_exit_two():
    assert run_cli("check", "--instance", "nope", "--suite", "centrality").returncode == 2
    proc = run_cli("check", "--instance", "error", "--suite", "nope")
    assert proc.returncode == 2 and b"centrality" in proc.stderr
    assert run_cli("check", "--instance", "state", "--suite", "strength-theorem").returncode == 2
    assert run_cli("check", "--instance", "error", "--suite", "centrality",
                   "--set", "E=zero").returncode == 2
    assert run_cli("check", "--instance", "error", "--suite", "centrality",
                   "--config", "/nonexistent.json").returncode == 2


def test_tiny_budget_exits_three():
    proc = run_cli("check", "--instance", "list", "--suite", "consistency-axioms",
                   "--set", "max_hom_size=1")
    assert proc.returncode == 3


def test_text_format_has_one_line_per_law(tmp_path):
    out = tmp_path / "r.txt"
    assert main(["check", "--instance", "error", "--suite", "centrality",
                 "--report", str(out)]) == 0
    lines = out.read_text().splitlines()
    law_lines = [l for l in lines if l.startswith("  ") and "# " in l]
    js = tmp_path / "r.json"
    main(["check", "--instance", "error", "--suite", "centrality", "--format", "json",
          "--report", str(js)])
    assert len(law_lines) == len(json.loads(js.read_text())["entries"])
    assert any("existence" in l for l in law_lines)
    assert lines[-1] == "overall: pass"


def test_settings_layering(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"instance": "list", "suite": "centrality", "L": 3,
                               "sizes": {"A": 1}}))
    s = resolve_settings(str(cfg), ["list_cap=1", "list_cap=2", "sizes.B=2"], None, None,
                         env={"EFFCAT_BUDGET": "77"})
    assert s["instance"] == "list" and s["list_cap"] == 2
    assert s["sizes"] == {"A": 1, "B": 2} and s["max_hom_size"] == 77
    s = resolve_settings(str(cfg), ["budget=5"], "error", "naturality", env={})
    assert (s["instance"], s["suite"], s["max_hom_size"]) == ("error", "naturality", 5)
    assert resolve_settings(None, [], "state", "all", env={})["E"] == DEFAULTS["E"]
    with pytest.raises(ConfigError):
        resolve_settings(None, ["colour=blue"], "error", "all", env={})


def test_all_suites_lists_inapplicable(tmp_path):
    out = tmp_path / "r.json"
    code = main(["check", "--instance", "multiset", "--suite", "all", "--format", "json", "--set", "sizes=A:1",
                 "--report", str(out)])
    doc = json.loads(out.read_text())
    assert code == 0 and doc["status"] == "pass"
    assert set(doc["unsupported"]) == {"evlogic-compare"}
    assert len(doc["reports"]) == 11
