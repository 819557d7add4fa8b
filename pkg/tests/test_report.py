"""Analysis report: verdicts, determinism, skip-moduli semantics."""

import json

from lulu.report import build_report, content_hash
from lulu.smoothers import SmootherConfig, apply_word


def _pulse_report(box_pulse, **kw):
    result = apply_word("LU", box_pulse, SmootherConfig(1.0))
    return build_report(box_pulse, result, "LU", 1.0,
                        input_name="pulse", input_format="json-pl",
                        input_text="dummy", tolerance=1e-9, **kw)


def test_report_values(box_pulse):
    rep = _pulse_report(box_pulse)
    assert rep.sup_norm_error == 1.0
    assert rep.modulus_before.mu_hat == 1.0
    assert rep.modulus_after.mu == 0.0
    assert rep.error_leq_mu_hat is True
    assert rep.error_leq_mu_tilde is True
    assert rep.bounds_ok
    assert rep.word_reduced == "LU"
    assert rep.runtime_seconds is None


def test_report_dict_shape(box_pulse):
    d = _pulse_report(box_pulse).to_dict()
    assert d["schema"] == "analysis-report/v1"
    assert d["word"] == {"given": "LU", "reduced": "LU"}
    assert d["input"]["sha256"] == content_hash("dummy")
    assert d["bounds"]["error_leq_mu_hat"] is True
    assert d["modulus_before"]["witness"]["direction"] == "up"


def test_report_json_deterministic(box_pulse):
    a = _pulse_report(box_pulse).to_json()
    b = _pulse_report(box_pulse).to_json()
    assert a == b
    json.loads(a)   # must be valid JSON


def test_word_reduction_reported(box_pulse):
    result = apply_word("ULU", box_pulse, SmootherConfig(1.0))
    rep = build_report(box_pulse, result, "ULU", 1.0,
                       input_name="pulse", input_format="json-pl",
                       input_text="dummy", tolerance=1e-9)
    assert rep.word == "ULU" and rep.word_reduced == "LU"


def test_skip_moduli(box_pulse):
    rep = _pulse_report(box_pulse, skip_moduli=True)
    assert rep.modulus_before is None and rep.modulus_after is None
    assert rep.error_leq_mu_hat is None
    assert rep.bounds_ok   # unknown bounds do not fail the verdict
