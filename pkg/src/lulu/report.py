"""Analysis report for one smoothing run ("analysis-report/v1").

Reports are deterministic by default: identical input and parameters yield
byte-identical JSON.  Wall-clock time is therefore only filled in when the
caller asks for it (the field stays null otherwise).  Bound verdicts are
computed facts — error measured against mu-hat and mu-tilde — not assertions;
the CLI turns them into an exit status only under --assert-bounds.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Optional

from .monotonicity import ModulusReport, analyze_modulus
from .plf import PLFunction, sup_norm_diff
from .smoothers import reduce_word

REPORT_SCHEMA = "analysis-report/v1"

# moduli of embedded sequences get expensive past this many samples
MODULUS_SIZE_LIMIT = 5000


def content_hash(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class AnalysisReport:
    input_name: str
    input_format: str
    input_sha256: str
    word: str
    word_reduced: str
    delta: Optional[float]
    n: Optional[int]
    boundary_policy: Optional[str]
    modulus_before: Optional[ModulusReport]
    modulus_after: Optional[ModulusReport]
    sup_norm_error: float
    tolerance: float
    error_leq_mu_hat: Optional[bool]
    error_leq_mu_tilde: Optional[bool]
    runtime_seconds: Optional[float] = None

    def to_dict(self) -> dict:
        return {
            "schema": REPORT_SCHEMA,
            "input": {
                "name": self.input_name,
                "format": self.input_format,
                "sha256": self.input_sha256,
            },
            "word": {"given": self.word, "reduced": self.word_reduced},
            "delta": self.delta,
            "n": self.n,
            "boundary_policy": self.boundary_policy,
            "modulus_before": None if self.modulus_before is None
                              else self.modulus_before.to_dict(),
            "modulus_after": None if self.modulus_after is None
                             else self.modulus_after.to_dict(),
            "sup_norm_error": float(self.sup_norm_error),
            "bounds": {
                "tolerance": self.tolerance,
                "error_leq_mu_hat": self.error_leq_mu_hat,
                "error_leq_mu_tilde": self.error_leq_mu_tilde,
            },
            "runtime_seconds": self.runtime_seconds,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @property
    def bounds_ok(self) -> bool:
        return bool(self.error_leq_mu_hat is not False
                    and self.error_leq_mu_tilde is not False)


def build_report(f: PLFunction, result: PLFunction, word: str, delta: float,
                 *, input_name: str, input_format: str, input_text: str,
                 tolerance: float, n: int | None = None,
                 boundary_policy: str | None = None,
                 skip_moduli: bool = False,
                 runtime_seconds: float | None = None) -> AnalysisReport:
    err = sup_norm_diff(f, result)
    before = after = None
    leq_hat = leq_tilde = None
    if not skip_moduli:
        before = analyze_modulus(f, delta)
        after = analyze_modulus(result, delta)
        leq_hat = bool(err <= before.mu_hat + tolerance)
        leq_tilde = bool(err <= before.mu_tilde + tolerance)
    return AnalysisReport(
        input_name=input_name,
        input_format=input_format,
        input_sha256=content_hash(input_text),
        word=word,
        word_reduced=str(reduce_word(word)),
        delta=float(delta),
        n=n,
        boundary_policy=boundary_policy,
        modulus_before=before,
        modulus_after=after,
        sup_norm_error=float(err),
        tolerance=tolerance,
        error_leq_mu_hat=leq_hat,
        error_leq_mu_tilde=leq_tilde,
        runtime_seconds=runtime_seconds,
    )
