"""End-to-end CLI behavior: the pulse scenario, exit codes, determinism."""

import json

import numpy as np
import pytest

from lulu.cli import main
from lulu.io import dump_plfunction, load_plfunction
from lulu.plf import sup_norm_diff

# height-1 pulse on [4, 4.4] sampled at spacing 0.2 over [0, 10]
_PULSE_SAMPLES = [1.0 if 4.0 <= 0.2 * i < 4.4 else 0.0 for i in range(50)]


@pytest.fixture
def pulse_csv(tmp_path):
    p = tmp_path / "pulse.csv"
    p.write_text("\n".join(str(v) for v in _PULSE_SAMPLES) + "\n")
    return p


@pytest.fixture
def vee_json(tmp_path, vee):
    p = tmp_path / "vee.json"
    p.write_text(dump_plfunction(vee))
    return p


def _smooth_pulse(pulse_csv, tmp_path, capsys, *extra):
    out = tmp_path / "out.csv"
    code = main(["smooth", str(pulse_csv), "--format", "csv-seq",
                 "--spacing", "0.2", "--word", "LU", "--delta", "0.8",
                 "--output", str(out), *extra])
    return code, json.loads(capsys.readouterr().out), out


def test_pulse_scenario(pulse_csv, tmp_path, capsys):
    code, rep, out = _smooth_pulse(pulse_csv, tmp_path, capsys)
    assert code == 0
    assert rep["n"] == 2                       # round(0.8 / (2*0.2))
    assert rep["delta"] == 0.8
    assert rep["boundary_policy"] == "clamp"
    assert rep["sup_norm_error"] == 1.0        # the pulse is removed whole
    assert rep["modulus_before"]["mu_hat"] == 1.0
    assert rep["modulus_after"]["mu"] == 0.0
    assert rep["bounds"]["error_leq_mu_hat"] is True
    assert rep["bounds"]["error_leq_mu_tilde"] is True
    assert rep["runtime_seconds"] is None
    vals = [float(line) for line in out.read_text().split()]
    assert vals == [0.0] * 50


def test_report_byte_deterministic(pulse_csv, tmp_path, capsys):
    _, rep1, _ = _smooth_pulse(pulse_csv, tmp_path, capsys)
    _, rep2, _ = _smooth_pulse(pulse_csv, tmp_path, capsys)
    assert rep1 == rep2


def test_smooth_with_plot_and_oracle(pulse_csv, tmp_path, capsys):
    svg = tmp_path / "fig.svg"
    code, rep, _ = _smooth_pulse(pulse_csv, tmp_path, capsys,
                                 "--plot", str(svg), "--oracle")
    assert code == 0
    assert svg.read_text().startswith("<?xml")
    oc = rep["oracle_crosscheck"]
    assert oc["stages"] == 4
    assert oc["max_divergence"] <= oc["bound"] + 1e-12


def test_smooth_json_pl_round_trip(vee_json, tmp_path, capsys, vee):
    out = tmp_path / "res.json"
    code = main(["smooth", str(vee_json), "--format", "json-pl",
                 "--word", "L", "--delta", "2", "--output", str(out)])
    assert code == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["word"] == {"given": "L", "reduced": "L"}
    g = load_plfunction(out.read_text())
    assert g(5.0) == 0.0 and g(0.0) == 4.0     # lower smoothing of |x-5|


def test_word_reduction_in_report(vee_json, tmp_path, capsys):
    out = tmp_path / "res.json"
    code = main(["smooth", str(vee_json), "--format", "json-pl",
                 "--word", "ULU", "--delta", "1", "--output", str(out)])
    assert code == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["word"] == {"given": "ULU", "reduced": "LU"}


def test_timing_flag(pulse_csv, tmp_path, capsys):
    code, rep, _ = _smooth_pulse(pulse_csv, tmp_path, capsys, "--timing")
    assert code == 0
    assert rep["runtime_seconds"] > 0


def test_exit_2_on_empty_input(tmp_path, capsys):
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    code = main(["smooth", str(empty), "--format", "csv-seq",
                 "--delta", "2", "--output", str(tmp_path / "o.csv")])
    assert code == 2


def test_exit_2_on_missing_file(tmp_path):
    code = main(["smooth", str(tmp_path / "nope.csv"),
                 "--delta", "1", "--output", str(tmp_path / "o.csv")])
    assert code == 2


def test_exit_2_on_bad_json(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    code = main(["smooth", str(bad), "--format", "json-pl",
                 "--delta", "1", "--output", str(tmp_path / "o.json")])
    assert code == 2


def test_exit_3_on_bad_params(pulse_csv, vee_json, tmp_path):
    out = str(tmp_path / "o")
    base = ["smooth", str(pulse_csv), "--format", "csv-seq",
            "--spacing", "0.2", "--output", out]
    assert main([*base, "--word", "LX", "--delta", "1"]) == 3
    assert main([*base, "--delta", "-1"]) == 3
    assert main([*base, "--delta", "1", "--boundary", "wrap"]) == 3
    assert main([*base, "--n", "2", "--delta", "1"]) == 3          # both given
    assert main([*base]) == 3                                      # neither
    assert main(["smooth", str(vee_json), "--format", "json-pl",
                 "--delta", "1", "--n", "2", "--output", out]) == 3
    assert main(["smooth", str(pulse_csv), "--format", "csv-foo",
                 "--delta", "1", "--output", out]) == 3


def test_exit_4_on_bounds_assert(pulse_csv, tmp_path, capsys):
    code, rep, _ = _smooth_pulse(pulse_csv, tmp_path, capsys,
                                 "--assert-bounds", "--tol", "-10")
    assert code == 4
    assert rep["bounds"]["error_leq_mu_hat"] is False


def test_exit_5_on_unwritable_output(pulse_csv, tmp_path):
    code = main(["smooth", str(pulse_csv), "--format", "csv-seq",
                 "--spacing", "0.2", "--delta", "0.8",
                 "--output", str(tmp_path / "no" / "such" / "dir" / "o.csv")])
    assert code == 5


def test_plot_command(vee_json, tmp_path):
    svg = tmp_path / "v.svg"
    code = main(["plot", str(vee_json), "--format", "json-pl",
                 "--delta", "2", "--output", str(svg)])
    assert code == 0
    assert svg.read_text().count('<g id="axes_') == 4


def test_plot_deterministic(vee_json, tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    for p in (a, b):
        assert main(["plot", str(vee_json), "--format", "json-pl",
                     "--delta", "2", "--output", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_verify_passes(capsys):
    code = main(["verify", "--seed", "7", "--count", "2"])
    assert code == 0
    out = capsys.readouterr().out
    assert "all checks passed" in out
    assert "FAIL" not in out


def test_verify_count_zero_is_vacuous(capsys):
    assert main(["verify", "--count", "0"]) == 0


def test_verify_fault_injection(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    ce = tmp_path / "ce.json"
    code = main(["verify", "--seed", "7", "--count", "2",
                 "--inject-fault", "negate-bounds",
                 "--counterexample", str(ce)])
    assert code == 1
    record = json.loads(ce.read_text())
    assert record["check"] == "smoother-bounds"
    f = load_plfunction(json.dumps(record["function"]))
    assert f.a < f.b


def test_embed_check(pulse_csv, capsys):
    code = main(["embed-check", str(pulse_csv), "--n", "2",
                 "--spacing", "0.2"])
    assert code == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["schema"] == "embed-check/v1"
    assert rep["delta"] == 0.8
    for policy in ("clamp", "reflect", "extend-constant"):
        assert set(rep["sup_differences"][policy]) == {"L", "U"}
        # the pulse vanishes identically under every convention here
        assert rep["sup_differences"][policy]["L"] == 0.0


def test_tolerance_env_default(pulse_csv, tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("LULU_TOL", "0.5")
    code, rep, _ = _smooth_pulse(pulse_csv, tmp_path, capsys)
    assert code == 0
    assert rep["bounds"]["tolerance"] == 0.5
