import json
import subprocess
import sys

import pytest

from conftest import without_replacement
from popsample.cli import run
from popsample.files import dump_sampler, write_tuples
from popsample.report import report_from_json


@pytest.fixture
def work(tmp_path):
    (tmp_path / "pop3.json").write_text(json.dumps(
        {"size": 3, "weights": "classical",
         "variables": {"X": ["0", "1", "2"], "C": ["5", "5", "5"]}}))
    (tmp_path / "skew.json").write_text(json.dumps(
        {"size": 3, "weights": ["1/2", "1/3", "1/6"], "variables": {"X": ["7", "7", "9"]}}))
    dump_sampler(without_replacement(3), tmp_path / "wor.json")
    return tmp_path


def test_construct_and_verify(work, capsys):
    assert run(["construct", "discrete", "--size", "3", "--n", "2", "--out", str(work / "d.json")]) == 0
    capsys.readouterr()
    assert run(["verify", "--population", str(work / "pop3.json"), "--sampler", str(work / "d.json")]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "simple: true"
    assert "worst_deviation: 0" in out


def test_verify_without_replacement(work, capsys):
    code = run(["verify", "--population", str(work / "pop3.json"), "--sampler", str(work / "wor.json")])
    assert code == 1
    out = capsys.readouterr().out
    assert "simple: false" in out and "worst_tuple: (0,0)" in out and "worst_deviation: 1/9" in out


def test_verify_rectangles(work, capsys):
    run(["construct", "discrete", "--size", "3", "--n", "2", "--out", str(work / "d.json")])
    capsys.readouterr()
    code = run(["verify", "--json", "--rectangles", "--population", str(work / "pop3.json"),
                "--sampler", str(work / "d.json")])
    rep = report_from_json(capsys.readouterr().out)
    assert code == 0 and rep.is_simple and rep.checked_rectangles == 64


def test_global_json_flag_before_subcommand(work, capsys):
    code = run(["--json", "verify", "--population", str(work / "pop3.json"),
                "--sampler", str(work / "wor.json")])
    assert code == 1
    assert json.loads(capsys.readouterr().out)["worst_deviation"] == "1/9"


def test_construct_product_and_iid(work, capsys):
    assert run(["construct", "product", "--population", str(work / "skew.json"), "--n", "2",
                "--out", str(work / "p.json")]) == 0
    capsys.readouterr()
    assert run(["iid", "--population", str(work / "skew.json"), "--sampler", str(work / "p.json"),
                "--variable", "X"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[:3] == ["marginals_identical: true", "marginals_match_population: true",
                         "independent: true"]


def test_iid_failure(work, capsys):
    code = run(["iid", "--population", str(work / "pop3.json"), "--sampler", str(work / "wor.json"),
                "--variable", "X"])
    assert code == 1
    out = capsys.readouterr().out
    assert "independent: false" in out and "witness: (0,0)" in out
    assert run(["iid", "--population", str(work / "pop3.json"), "--sampler", str(work / "wor.json"),
                "--variable", "C"]) == 0


def test_subset_prob(work, capsys):
    run(["construct", "discrete", "--size", "5", "--n", "2", "--out", str(work / "d5.json")])
    capsys.readouterr()
    assert run(["subset-prob", "--sampler", str(work / "d5.json"), "--subset", "1,3"]) == 0
    assert capsys.readouterr().out.strip() == "2/25"
    assert run(["subset-prob", "--sampler", str(work / "d5.json"), "--subset", "1"]) == 2


def test_cdf(work, capsys):
    assert run(["cdf", "--population", str(work / "skew.json"), "--variable", "X", "--at", "9"]) == 0
    assert capsys.readouterr().out.strip() == "5/6"
    assert run(["cdf", "--population", str(work / "skew.json"), "--variable", "X", "--at", "1/-2"]) == 2


def test_cells(capsys):
    assert run(["cells", "--size", "2", "--n", "3"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 8
    assert lines[5] == "1,0,1 5/8 3/4"


def test_sample_emit_and_gof(tmp_path, capsys):
    emit = tmp_path / "t.txt"
    args = ["sample", "--construction", "continuous", "--size", "4", "--n", "2",
            "--count", "2000", "--seed", "9", "--emit", str(emit)]
    assert run(args) == 0
    first = capsys.readouterr().out
    stream = emit.read_text()
    assert len(stream.splitlines()) == 2000
    assert all(len(line.split(",")) == 2 and " " not in line for line in stream.splitlines())
    assert run(args) == 0
    assert capsys.readouterr().out == first and emit.read_text() == stream
    # counting without --emit takes the compiled/dense path; same tally
    assert run(args[:-2]) == 0
    assert capsys.readouterr().out == first

    assert run(["gof", "--counts", str(emit), "--size", "4", "--n", "2", "--alpha", "0.001"]) == 0
    out = capsys.readouterr().out
    assert "reject: false" in out and "degrees_of_freedom: 15" in out


def test_gof_rejects_biased(tmp_path, capsys):
    p = tmp_path / "b.txt"
    write_tuples([(0, 0)] * 400 + [(1, 1)] * 100, p)
    assert run(["gof", "--counts", str(p), "--size", "2", "--n", "2"]) == 1
    assert "reject: true" in capsys.readouterr().out


def test_gof_needs_enough_draws(tmp_path, capsys):
    p = tmp_path / "few.txt"
    write_tuples([(0, 0), (1, 1)], p)
    assert run(["gof", "--counts", str(p), "--size", "2", "--n", "2"]) == 2
    assert "raise the number of draws" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["construct", "discrete", "--size", "0", "--n", "2", "--out", "x.json"],
    ["construct", "discrete", "--size", "3"],
    ["verify", "--population", "missing.json", "--sampler", "missing.json"],
    ["verify", "--bogus"],
    ["frobnicate"],
    [],
    ["gof", "--counts", "x", "--size", "2", "--n", "2", "--alpha", "0.2"],
])
def test_usage_errors(argv, tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    assert run(argv) == 2


def test_malformed_json_reports_position(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"size": 3,\n  "weights": [1/3]}')
    assert run(["verify", "--population", str(bad), "--sampler", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "line 2" in err and "column" in err


def test_exit_code_matrix(work, capsys):
    d = work / "d.json"
    run(["construct", "discrete", "--size", "3", "--n", "2", "--out", str(d)])
    pop = str(work / "pop3.json")
    cases = [
        (["verify", "--population", pop, "--sampler", str(d)], 0),
        (["verify", "--population", pop, "--sampler", str(work / "wor.json")], 1),
        (["verify", "--population", str(work / "skew.json"), "--sampler", str(d)], 1),
        (["iid", "--population", pop, "--sampler", str(d), "--variable", "X"], 0),
        (["iid", "--population", pop, "--sampler", str(d), "--variable", "Y"], 2),
        (["verify", "--population", pop], 2),
    ]
    for argv, code in cases:
        assert run(argv) == code, argv


def test_console_entry_point(work):
    proc = subprocess.run([sys.executable, "-m", "popsample.cli", "verify", "--population",
                           str(work / "pop3.json"), "--sampler", str(work / "wor.json")],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert "simple: false" in proc.stdout


def test_help(capsys):
    assert run(["--help"]) == 0
    assert "verify" in capsys.readouterr().out
