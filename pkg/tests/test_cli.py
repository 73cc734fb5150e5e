"""Command-line behavior: exit codes, deterministic JSON, artifacts on disk."""

import json
import os

import pytest

from bensonkit import cli
from bensonkit.efficiency import verdict_from_dict, verdict_to_dict, is_benson_proper
from bensonkit.fixtures import sign_flip_problem
from bensonkit.model import serialize_problem


@pytest.fixture()
def problem_file(tmp_path):
    path = tmp_path / "problem.json"
    path.write_text(json.dumps(serialize_problem(sign_flip_problem())))
    return str(path)


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_check_not_member_exits_one(capsys):
    code, out, _ = run(capsys, "check", "--problem", "builtin:sign-flip",
                       "--point", "0,0", "--perturbation", "0,1")
    assert code == 1
    assert "efficient: yes" in out
    assert "proper_plain: no" in out
    assert "(-1, 0)" in out


def test_check_member_exits_zero(capsys):
    code, out, _ = run(capsys, "check", "--problem", "builtin:wedge",
                       "--point", "1/2,7", "--perturbation", "1,0", "--kind", "e")
    assert code == 0
    assert "proper_plusK: yes" in out


def test_check_rejects_float_literal(capsys):
    code, _, err = run(capsys, "check", "--problem", "builtin:sign-flip",
                       "--point", "0,0", "--perturbation", "0,1.5")
    assert code == 2
    assert "1.5" in err


def test_check_rejects_missing_file(capsys):
    code, _, err = run(capsys, "check", "--problem", "/nonexistent.json",
                       "--point", "0,0", "--perturbation", "0,1")
    assert code == 2


def test_check_loads_problem_files(capsys, problem_file):
    code, out, _ = run(capsys, "check", "--problem", problem_file,
                       "--point", "1,1/2", "--perturbation", "0,1",
                       "--form", "plain")
    assert code == 1  # efficient but not proper
    assert "proper_plain: no" in out


def test_json_output_is_byte_identical_and_round_trips(capsys):
    args = ("check", "--problem", "builtin:sign-flip", "--point", "0,0",
            "--perturbation", "0,1", "--output", "json")
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 1
    assert out1 == out2
    doc = json.loads(out1)
    parsed = verdict_from_dict(doc["results"]["proper_plain"])
    direct = is_benson_proper(sign_flip_problem(), (0, 0), (0, 1), form="plain")
    assert parsed == direct
    assert verdict_to_dict(parsed) == doc["results"]["proper_plain"]


def test_examples_pass(capsys):
    code, out, _ = run(capsys, "examples")
    assert code == 0
    assert "overall: PASS" in out


def test_examples_report_dir(capsys, tmp_path):
    report_dir = str(tmp_path / "report")
    code, out, _ = run(capsys, "examples", "--report-dir", report_dir)
    assert code == 0
    names = set(os.listdir(report_dir))
    assert {"examples.txt", "examples.json", "sign-flip.svg", "halfplane.svg",
            "wedge.svg"} <= names
    svg = (tmp_path / "report" / "wedge.svg").read_text()
    assert "<svg" in svg


def test_verify_small_budget(capsys):
    code, out, _ = run(capsys, "verify", "--seed", "3", "--budget", "4")
    assert code == 0
    assert "criterion-forms-agree" in out and "seed: 3" in out


def test_analyze_report_dir(capsys, tmp_path):
    report_dir = str(tmp_path / "analysis")
    code, out, _ = run(capsys, "analyze", "--problem", "builtin:wedge",
                       "--perturbation", "1,0", "--kind", "e",
                       "--grid-step", "1/2", "--report-dir", report_dir)
    assert code == 0
    assert "dichotomy: all-proper" in out
    names = set(os.listdir(report_dir))
    assert {"classification.csv", "report.json", "regions.svg"} <= names
    header = (tmp_path / "analysis" / "classification.csv").read_text().splitlines()[0]
    assert header == "point,provenance,eps_efficient,benson_proper,certificate"


def test_analyze_json_deterministic(capsys):
    args = ("analyze", "--problem", "builtin:sign-flip", "--perturbation", "0,1",
            "--grid-step", "1", "--output", "json")
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["dichotomy"]["outcome"] == "none-proper"


def test_plot_writes_svg(capsys, tmp_path):
    out_path = str(tmp_path / "fig.svg")
    code, out, _ = run(capsys, "plot", "--problem", "builtin:sign-flip",
                       "--point", "0,0", "--perturbation", "0,1",
                       "--grid-step", "1", "--out", out_path)
    assert code == 0
    content = open(out_path).read()
    assert "<svg" in content


def test_bad_subcommand_is_input_error(capsys):
    assert cli.main(["frobnicate"]) == 2


def test_dimension_cap_env(capsys, tmp_path, monkeypatch):
    doc = serialize_problem(sign_flip_problem())
    path = tmp_path / "p.json"
    path.write_text(json.dumps(doc))
    monkeypatch.setenv("BENSONKIT_MAX_DIM", "1")
    code, _, err = run(capsys, "analyze", "--problem", str(path),
                       "--perturbation", "0,1")
    assert code == 2
    assert "cap" in err
