import json
import os
import subprocess
import sys

import pytest

from f1schemes import budget as budget_mod
from f1schemes.cli import RunConfig, main
from f1schemes.errors import InputError

from golden_cases import CASES, GOLDEN, HERE, run


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_output(name):
    args, code = CASES[name]
    first_code, first = run(args)
    second_code, second = run(args)
    assert first_code == second_code == code
    assert first == second
    assert first == (GOLDEN / f"{name}.json").read_bytes()


def invoke(capsys, *args):
    cwd = os.getcwd()
    os.chdir(HERE)
    try:
        code = main(list(args))
    finally:
        os.chdir(cwd)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_fan_text_output(capsys):
    code, out, _ = invoke(capsys, "fan", "data/p2.json")
    assert code == 0
    assert out.startswith("fan in dimension 2: valid, 7 cones")


def test_malformed_json_reports_position(capsys):
    code, _, err = invoke(capsys, "fan", "data/malformed.json")
    assert code == 2
    assert "malformed.json:3:2" in err


def test_missing_file(capsys):
    code, _, err = invoke(capsys, "fan", "data/nope.json")
    assert code == 2 and "cannot read" in err


def test_invalid_fan_for_toric(capsys):
    code, _, err = invoke(capsys, "toric", "data/overlapping.json")
    assert code == 1 and err


def test_toric_text_modes(capsys):
    code, out, _ = invoke(capsys, "toric", "catalog:P1", "--basechange", "Z")
    assert code == 0
    assert "x0=t1^-1" in out and "Z[x0,x0^-1]" in out
    code, out, _ = invoke(capsys, "toric", "catalog:P2", "--count", "--q", "2,3")
    assert out.splitlines() == ["q=2: glue=7 cone_sum=7 ok", "q=3: glue=13 cone_sum=13 ok"]
    code, _, err = invoke(capsys, "toric", "catalog:P2", "--count")
    assert code == 2


def test_points_over_non_local_target(capsys):
    code, _, err = invoke(capsys, "toric", "catalog:P1", "--points", "ring:Z/6")
    assert code == 2 and "not local" in err
    # P^1 over a local ring R with maximal ideal m has |R| + |m| points
    code, out, _ = invoke(capsys, "toric", "catalog:P1", "--points", "ring:Z/4")
    assert code == 0 and out.startswith("6 points")


def test_gln_text(capsys):
    code, out, _ = invoke(capsys, "gln", "2", "Fq:2")
    assert code == 0
    assert out.startswith("Gl_2 over Fq:2: order 6 (closed form 6)")
    code, _, err = invoke(capsys, "gln", "2", "Q")
    assert code == 2


def test_budget_exit_code(capsys):
    code, _, err = invoke(capsys, "gln", "3", "Fq:4", "--budget", "1000")
    assert code == 3 and "budget" in err
    assert budget_mod.default_budget() == budget_mod.FALLBACK_BUDGET or os.environ.get(
        budget_mod.ENV_VAR)


def test_budget_from_environment():
    env = dict(os.environ, **{budget_mod.ENV_VAR: "1000"})
    proc = subprocess.run([sys.executable, "-m", "f1schemes", "gln", "3", "Fq:4"],
                          capture_output=True, env=env, cwd=HERE)
    assert proc.returncode == 3


def test_descent_modes(capsys):
    code, out, _ = invoke(capsys, "descent", "data/identity_cover.json")
    assert code == 0 and "descent: VerifiedUpTo (split cover)" in out
    code, out, _ = invoke(capsys, "descent", "data/collapse_cover.json")
    assert code == 1 and "conservative: CounterexampleFound" in out
    code, _, _ = invoke(capsys, "descent", "data/identity_cover.json", "--bound", "0")
    assert code == 2
    code, _, _ = invoke(capsys, "descent")
    assert code == 2


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"format": "json", "q": [2]}))
    code, out, _ = invoke(capsys, "toric", "catalog:P1", "--count", "--config", str(cfg))
    assert code == 0
    assert json.loads(out)["counts"][0]["glue"] == 3
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"colour": 1}))
    code, _, err = invoke(capsys, "fan", "catalog:P1", "--config", str(bad))
    assert code == 2 and "unknown config keys" in err


def test_run_config_validation():
    with pytest.raises(InputError):
        RunConfig("fan", output_format="yaml")
    with pytest.raises(InputError):
        RunConfig("fan", bound=0)
    with pytest.raises(InputError):
        RunConfig("toric", q=(1,))
