import json

import pytest

from backdet import cli
from backdet.formats import parse_nba, parse_waa
from backdet.nutl import parse_nutl
from backdet.automata import Alphabet


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_ltl2waa_writes_parseable_waa(tmp_path, capsys):
    out = tmp_path / "waa.txt"
    code, _, err = run_cli(capsys, "ltl2waa", "F a", "-o", str(out))
    assert code == 0
    assert "2 states, very weak, BDA bound 4" in err
    waa = parse_waa(out.read_text())
    assert waa.states == ("q_F_a", "q_a")


def test_ltl2waa_parse_error_exit_code(capsys):
    code, _, err = run_cli(capsys, "ltl2waa", "F (")
    assert code == cli.EXIT_PARSE


def test_waa2bda_header(tmp_path, capsys):
    waa_file = tmp_path / "waa.txt"
    run_cli(capsys, "ltl2waa", "F a", "-o", str(waa_file))
    code, out, _ = run_cli(capsys, "waa2bda", str(waa_file))
    assert code == 0
    assert "state-space-bound: 4" in out


def test_waa2bda_cap_exceeded(tmp_path, capsys):
    waa_file = tmp_path / "waa.txt"
    run_cli(capsys, "ltl2waa", "F a", "-o", str(waa_file))
    code, _, err = run_cli(capsys, "waa2bda", str(waa_file), "--enumerate", "1")
    assert code == cli.EXIT_CAP
    assert "4" in err  # names the bound


def test_waa2bda_rejects_non_weak(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text(
        "alphabet: a\nstates: q0 q1\nrecurring: q0\n"
        "delta q0 = X q1\ndelta q1 = X q0\n"
    )
    code, _, err = run_cli(capsys, "waa2bda", str(bad))
    assert code == cli.EXIT_SEMANTIC


def test_run_reports_outputs_and_oracle(tmp_path, capsys):
    waa_file = tmp_path / "waa.txt"
    run_cli(capsys, "ltl2waa", "G a", "-o", str(waa_file))
    code, out, _ = run_cli(capsys, "run", str(waa_file), "; a")
    assert code == 0
    assert "q_G_a" in out
    assert "MISMATCH" not in out
    assert "accepted from initial set: True" in out


def test_run_rejecting_word(tmp_path, capsys):
    waa_file = tmp_path / "waa.txt"
    run_cli(capsys, "ltl2waa", "F a", "-o", str(waa_file))
    code, out, _ = run_cli(capsys, "run", str(waa_file), "; b")
    assert code == 0
    assert "accepted from initial set: False" in out
    assert "MISMATCH" not in out


def test_nba2nutl_block_count(tmp_path, capsys):
    nba_file = tmp_path / "nba.txt"
    nba_file.write_text(
        "alphabet: a b\nstates: q0\ninitial: q0\nbuchi: q0\ntrans q0 a q0\n"
    )
    out_file = tmp_path / "tuple.txt"
    code, _, err = run_cli(capsys, "nba2nutl", str(nba_file), "-o", str(out_file))
    assert code == 0
    assert "2 fixed-point blocks" in err
    lines = out_file.read_text().strip().splitlines()
    assert len(lines) == 1  # one tuple component per NBA state
    parse_nutl(lines[0], Alphabet(("a", "b")))


def test_nutl2waa_round_trip(tmp_path, capsys):
    src = tmp_path / "phi.txt"
    src.write_text("mu_0 (X).(b | (a & O X))\n")
    out = tmp_path / "waa.txt"
    code, _, err = run_cli(
        capsys, "nutl2waa", str(src), "--alphabet", "a", "b", "-o", str(out)
    )
    assert code == 0
    parse_waa(out.read_text().split("# components")[0])


def test_nutl2waa_unguarded_rejected(tmp_path, capsys):
    src = tmp_path / "phi.txt"
    src.write_text("mu_0 (X).(b | X)\n")
    code, _, err = run_cli(capsys, "nutl2waa", str(src), "--alphabet", "a", "b")
    assert code == cli.EXIT_SEMANTIC
    assert "guarded" in err


def test_dot_output(tmp_path, capsys):
    waa_file = tmp_path / "waa.txt"
    run_cli(capsys, "ltl2waa", "F a", "-o", str(waa_file))
    code, out, _ = run_cli(capsys, "dot", str(waa_file))
    assert code == 0
    assert out.startswith("digraph waa")
    assert "q_F_a" in out
    code, out, _ = run_cli(capsys, "dot", str(waa_file), "--lasso", "; a b")
    assert code == 0
    assert out.startswith("digraph period")


def test_check_pass_mode(capsys, monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    code, out, _ = run_cli(capsys, "check", "--mode", "dual", "--count", "5")
    assert code == 0
    assert "dual: pass" in out


def test_check_counterexample_writes_reproducer(capsys, tmp_path, monkeypatch):
    # force a failure by monkeypatching the sweep
    from backdet.validation import CheckReport

    def broken(seed=0, **kw):
        r = CheckReport("dual", cases=1)
        r.fail(word="; a", reason="synthetic")
        return r

    monkeypatch.setitem(cli._CHECKS, "dual", broken)
    repro = tmp_path / "cex.json"
    code, out, err = run_cli(
        capsys, "check", "--mode", "dual", "--reproducer", str(repro)
    )
    assert code == cli.EXIT_COUNTEREXAMPLE
    data = json.loads(repro.read_text())
    assert data[0]["reason"] == "synthetic"
