import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from _scen import SCENARIOS
from qvertex.cli import main
from qvertex.suites import catalog
from qvertex.scenario import SUITES


def _lines(path):
    return [json.loads(x) for x in open(path)]


def test_list_checks(capsys):
    assert main(["list-checks"]) == 0
    out = capsys.readouterr().out.splitlines()
    for line in json.loads((Path(__file__).parent / "data" / "catalog_lines.json").read_text()):
        assert line in out
    assert len(out) == len(SUITES) == len(catalog())


def test_bad_window_exits_2(capsys):
    assert main(["verify", str(SCENARIOS / "bad_window.toml")]) == 2
    assert "window" in capsys.readouterr().err


def test_missing_file_exits_2(tmp_path):
    assert main(["verify", str(tmp_path / "nope.toml")]) == 2


def _tiny(tmp_path, extra=""):
    p = tmp_path / "tiny.toml"
    p.write_text('name = "tiny"\nseed = 3\nchecks = ["delta-calculus", "compatibility", "minpoly"]\n'
                 '[family]\nkind = "twisted-affine"\nlie = "abelian"\norder = 2\nlevel = "2"\n'
                 'cyclotomic = 2\ncutoff = 4\n' + extra)
    return p


def test_verify_report_lines(tmp_path):
    rep = tmp_path / "out.jsonl"
    assert main(["verify", str(_tiny(tmp_path)), "--report", str(rep)]) == 0
    lines = _lines(rep)
    assert [d["suite"] for d in lines][0] == "delta-calculus"
    assert all(d["scenario"] == "tiny" and d["seed"] == 3 and d["status"] == "pass" for d in lines)


def test_failure_exits_1_and_finishes(tmp_path):
    rep = tmp_path / "out.jsonl"
    p = _tiny(tmp_path, '[perturb]\nsuite = "compatibility"\n')
    assert main(["verify", str(p), "--report", str(rep)]) == 1
    lines = _lines(rep)
    failed = [d for d in lines if d["status"] == "fail"]
    assert failed and all(d["suite"] == "compatibility" for d in failed)
    assert failed[0]["counterexample"]
    # the suite after the failing one still ran
    assert any(d["suite"] == "minpoly" for d in lines)


def test_report_env_var(tmp_path, monkeypatch):
    target = tmp_path / "env.jsonl"
    monkeypatch.setenv("QVERTEX_REPORT", str(target))
    assert main(["verify", str(_tiny(tmp_path))]) == 0
    assert target.exists()


def test_parallel_keeps_declaration_order(tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    p = _tiny(tmp_path)
    assert main(["verify", str(p), "--report", str(a), "--no-timing"]) == 0
    assert main(["verify", str(p), "--parallel", "--report", str(b), "--no-timing"]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_determinism_across_hash_seeds(tmp_path):
    p = _tiny(tmp_path)
    outs = []
    for seed in ("1", "2"):
        rep = tmp_path / f"r{seed}.jsonl"
        env = dict(os.environ, PYTHONHASHSEED=seed)
        res = subprocess.run([sys.executable, "-m", "qvertex.cli", "verify", str(p), "--report", str(rep),
                              "--no-timing"], env=env, capture_output=True, text=True)
        assert res.returncode == 0, res.stderr
        outs.append(rep.read_bytes())
    assert outs[0] == outs[1]


def test_dump_module(capsys):
    assert main(["dump-module", str(SCENARIOS / "twisted_abelian_T2.toml")]) == 0
    info = json.loads(capsys.readouterr().out)
    assert info["dimensions"] == [1, 1, 1, 2, 2, 3, 4]
    assert info["basis"][0] == "|0>"
    assert info["gamma"] == ["1", "-1"]
    assert info["generators"] == [{"name": "a^s", "weight": 1}]


def test_perturbed_scenario_locates_jacobi_failure(tmp_path, capsys):
    rep = tmp_path / "p.jsonl"
    assert main(["verify", str(SCENARIOS / "twisted_affine_T2_perturbed.toml"), "--report", str(rep)]) == 1
    (line,) = _lines(rep)
    assert line["check"] == "gamma-jacobi" and line["status"] == "fail"
    assert {"a", "alpha", "modes", "component"} <= set(line["counterexample"])


def test_twisted_affine_scenario_passes(tmp_path):
    rep = tmp_path / "t.jsonl"
    assert main(["verify", str(SCENARIOS / "twisted_affine_T2.toml"), "--report", str(rep)]) == 0
    lines = _lines(rep)
    assert sorted({d["suite"] for d in lines}) == sorted(SUITES)
    assert all(d["status"] == "pass" for d in lines)
