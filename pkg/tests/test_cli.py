import json
import subprocess
import sys
from pathlib import Path

import pytest

from eqmcg.cli import RunConfig, main

INPUTS = Path(__file__).resolve().parent.parent / "inputs"


def run_cli(*args):
    proc = subprocess.run([sys.executable, "-m", "eqmcg", *args], capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def test_group_info(capsys):
    assert main(["group", "info", "S3", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["order"] == 6 and out["abelian"] is False
    assert len(out["conjugacy_classes"]) == 3


def test_decompose_human_output(capsys):
    assert main(["decompose", "Q8"]) == 0
    text = capsys.readouterr().out
    assert "IIIa-HurwitzQuaternion" in text
    assert text.count("block dim=") == 5


def test_gamma(capsys):
    assert main(["gamma", "Z2", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert len(out["generators"]) == 5
    assert all(g["preserves_form"] for g in out["generators"])


def test_cover_build(capsys):
    assert main(["cover", "build", "--spec", str(INPUTS / "hyperelliptic.json"), "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["genus"] == 2 and out["riemann_hurwitz_chi"] == -2


def test_twists(capsys):
    assert main(["twists", "--spec", str(INPUTS / "z3_genus4.json"), "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert all(v["agree"] for v in out["d_beta_agreement"].values())


def test_diagnose_exit_codes(capsys):
    spec = str(INPUTS / "example_c2.json")
    assert main(["diagnose", "--spec", spec]) == 0
    assert main(["diagnose", "--spec", spec, "--beta", "y2"]) == 1
    capsys.readouterr()


def test_invalid_inputs_exit_one(capsys):
    assert main(["group", "info", "NotAGroup"]) == 1
    assert main(["diagnose", "--spec", str(INPUTS / "hyperelliptic.json")]) == 1
    assert main(["decompose", "Z3", "--primes", "4"]) == 1
    assert main(["decompose", "Z3", "--max-word-len", "0"]) == 1
    assert main(["cover", "build", "--spec", "/nonexistent.json"]) == 1
    assert "error:" in capsys.readouterr().err


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig("decompose", primes=(2, 9))


def test_diagnose_json_is_byte_identical():
    args = ("diagnose", "--spec", str(INPUTS / "s3_genus6.json"), "--json")
    first, second = run_cli(*args), run_cli(*args)
    assert first[0] == second[0] == 0
    assert first[1] == second[1]
    json.loads(first[1])
