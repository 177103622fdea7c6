from __future__ import annotations

import io
import json

import pytest

from wtensor.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    reports = [json.loads(line) for line in out.getvalue().splitlines()]
    return code, reports, err.getvalue()


def test_hurwitz_mul_ones():
    code, reps, _ = call("hurwitz", "mul", "--trunc", "6", "--lambda", "1", "--f", "ones", "--g", "ones")
    assert code == 0
    assert reps[0]["count"] == [1, 3, 9, 27, 81, 243]


def test_formal_lambda_is_default():
    code, reps, _ = call("hurwitz", "mul", "--trunc", "3", "--f", "ones", "--g", "ones")
    assert code == 0
    assert reps[0]["params"]["lam"] == "1*lam"


@pytest.mark.parametrize(
    "argv,needle",
    [
        (["qcharade", "dim-check", "--q", "4", "--n", "4"], "q must be prime for enumeration"),
        (["qcharade", "dim-check", "--q", "7", "--n", "4"], "q must be one of"),
        (["hurwitz", "mul", "--f", "[\"1+\"]", "--g", "ones"], "error:"),
        (["hurwitz", "mul", "--f", "[1,", "--g", "ones"], "malformed"),
        (["nosuch"], "error:"),
        (["hurwitz", "frobnicate"], "error:"),
        (["species", "enum", "--lambda", "formal"], "error:"),
    ],
)
def test_usage_errors_exit_2(argv, needle):
    code, reps, err = call(*argv)
    assert code == 2
    assert reps == []
    assert needle in err


def test_failure_exits_1():
    # cyclic difference is a derivation of weight 1 only
    code, reps, _ = call("gph", "check-dermonoid", "--lambda", "0")
    assert code == 1 and reps[0]["pass"] is False
    assert call("gph", "check-dermonoid", "--lambda", "1")[0] == 0


def test_check_rb_passes():
    code, reps, _ = call("hurwitz", "check-rb", "--P", "finite-partial-sums", "--lambda", "1")
    assert code == 0 and all(r["pass"] for r in reps)


def test_species_and_q_commands():
    assert call("species", "cov", "--a", "2", "--b", "2", "--n", "3")[0] == 0
    code, reps, _ = call("qcharade", "subspaces", "--n", "2", "--q", "2")
    assert code == 0 and reps[0]["count"] == [1, 3, 1]
    assert call("species", "flag3", "--n", "3")[0] == 0
    assert call("gph", "rmonoid")[0] == 0


def test_json_file_and_timing(tmp_path):
    path = tmp_path / "out.jsonl"
    code, reps, _ = call("qcharade", "subspaces", "--n", "2", "--json", str(path))
    assert code == 0 and reps == []
    rec = json.loads(path.read_text().strip())
    assert "elapsed_s" not in rec
    _, reps, _ = call("qcharade", "subspaces", "--n", "2", "--timing")
    assert "elapsed_s" in reps[0]


def test_help_exits_0():
    assert call("--help")[0] == 0


def test_verify_all_quick_and_deterministic():
    first = io.StringIO()
    assert run(["verify", "all", "--seed", "42", "--level", "quick"], stdout=first) == 0
    second = io.StringIO()
    run(["verify", "all", "--seed", "42", "--level", "quick"], stdout=second)
    assert first.getvalue() == second.getvalue()
    assert len(first.getvalue().splitlines()) == 13


def test_verify_strict_counts_evidence():
    code, reps, _ = call("verify", "suite", "12", "--level", "quick", "--strict")
    assert code == 1 and reps[0]["pass"] is False
    code, _, _ = call("verify", "suite", "12", "--level", "quick")
    assert code == 0
