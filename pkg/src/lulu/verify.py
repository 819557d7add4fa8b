"""Named property checks over seeded random inputs.

Each check turns one theorem (or implementation invariant) into a boolean
verdict on one generated case.  The CLI `verify` command and the acceptance
suite both run these same functions; `verify` prints a per-check pass/fail
matrix and serializes the first counterexample it finds.

Case layout (all reproducible from (seed, index)):
  f          the function under test — continuous, except every fourth case
             which carries jump discontinuities and isolated point values
  f_smooth   jump-free twin for grid-oracle comparisons (slope*h error bounds
             need finite slopes)
  f_interior a function whose features sit >= 2*delta_int from the boundary
             (flat strips), for the interior-only pointwise bounds; delta is
             clipped to 2 there so the strips fit in the domain
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field

import numpy as np

from . import discrete as disc
from . import oracle as orc
from .envelopes import dilate, erode
from .monotonicity import (modified_modulus, modulus, modulus_hat, modulus_up)
from .io import plfunction_to_dict
from .plf import PLFunction, leq_excess, pl_add, pl_sub, sup_norm_diff
from .randgen import case_rng, random_plfunction, random_signal
from .smoothers import (SemigroupElement, SmootherConfig, apply, apply_word,
                        delta_absorption_check, coidempotence_residual,
                        lower_smoother, reduce_word, upper_smoother)

TOL_ENV_VAR = "LULU_TOL"


def default_tolerance() -> float:
    raw = os.environ.get(TOL_ENV_VAR)
    if raw is None:
        return 1e-9
    tol = float(raw)
    if tol < 0:
        raise ValueError(f"{TOL_ENV_VAR} must be non-negative, got {raw}")
    return tol


@dataclass
class VerifyContext:
    tol: float = 1e-9
    bound_tol: float = 1e-6
    fault: str | None = None          # named fault for the corrupted-build smoke test
    oracle_erode_cases: int = 50      # leading cases that get the erode/oracle check
    nesting_deltas: tuple = (0.5, 1.0, 2.0)


class VerifyCase:
    """One generated input with lazily cached operator results."""

    def __init__(self, seed: int, index: int, delta_range=(0.1, 3.0),
                 max_breakpoints: int = 30):
        rng = case_rng(seed, index)
        self.seed = seed
        self.index = index
        self.f_smooth = random_plfunction(rng, max_breakpoints=max_breakpoints)
        self.jumpy = index % 4 == 3
        if self.jumpy:
            self.f = random_plfunction(rng, max_breakpoints=max_breakpoints,
                                       jump_prob=0.3)
        else:
            self.f = self.f_smooth
        self.delta = float(rng.uniform(*delta_range))
        self.cfg = SmootherConfig(self.delta)
        self.delta_int = min(self.delta, 2.0)
        self.f_interior = random_plfunction(
            rng, max_breakpoints=12, flat_margin=2 * self.delta_int,
            jump_prob=0.3 if self.jumpy else 0.0)
        self.signal = random_signal(rng, max_len=200)
        self.n = int(rng.integers(1, 21))
        self.fill = float(rng.uniform(-2.0, 2.0))
        # positive random offset for argument-monotonicity pairs
        g = random_plfunction(rng, max_breakpoints=10)
        self.offset = pl_sub(g, PLFunction.constant(g.window_inf(*g.domain) - 1.0,
                                                    *g.domain))
        self._words: dict = {}
        self._mu: dict = {}

    def op(self, word: str) -> PLFunction:
        if word not in self._words:
            apply_word(word, self.f, self.cfg, self._words)
        return self._words[word]

    def mu(self, key: str) -> float:
        if key not in self._mu:
            fn = {"f": self.f, "LU": self.op("LU"), "UL": self.op("UL"),
                  "L": self.op("L"), "U": self.op("U")}[key]
            self._mu[key] = modulus(fn, self.delta)
        return self._mu[key]


# ---- checks: each returns (ok, detail) ---------------------------------------


def check_envelope_semigroup(c: VerifyCase, ctx: VerifyContext):
    r1, r2 = 0.4 * c.delta, 0.6 * c.delta
    de = sup_norm_diff(erode(erode(c.f, r2), r1), erode(c.f, r1 + r2))
    dd = sup_norm_diff(dilate(dilate(c.f, r2), r1), dilate(c.f, r1 + r2))
    return max(de, dd) <= ctx.tol, f"semigroup defect {max(de, dd):.2e}"


def check_envelope_monotone(c: VerifyCase, ctx: VerifyContext):
    g = pl_add(c.f, c.offset)         # g >= f + 1
    r = c.delta / 2
    e1 = leq_excess(erode(c.f, r), erode(g, r))
    e2 = leq_excess(dilate(c.f, r), dilate(g, r))
    return max(e1, e2) <= ctx.tol, f"monotonicity excess {max(e1, e2):.2e}"


def check_envelope_triple(c: VerifyCase, ctx: VerifyContext):
    r = c.delta / 2
    e = erode(c.f, r)
    d = dilate(c.f, r)
    d1 = sup_norm_diff(erode(dilate(e, r), r), e)
    d2 = sup_norm_diff(dilate(erode(d, r), r), d)
    return max(d1, d2) <= ctx.tol, f"triple-composition defect {max(d1, d2):.2e}"


def check_envelope_extensive(c: VerifyCase, ctx: VerifyContext):
    r = c.delta / 2
    e1 = leq_excess(erode(c.f, r), c.f)
    e2 = leq_excess(c.f, dilate(c.f, r))
    return max(e1, e2) <= ctx.tol, f"extensivity excess {max(e1, e2):.2e}"


def check_smoother_bounds(c: VerifyCase, ctx: VerifyContext):
    e1 = leq_excess(c.op("L"), c.f)
    e2 = leq_excess(c.f, c.op("U"))
    ok = max(e1, e2) <= ctx.tol
    if ctx.fault == "negate-bounds":
        ok = not ok
    return ok, f"L<=f<=U excess {max(e1, e2):.2e}"


def check_smoother_nesting(c: VerifyCase, ctx: VerifyContext):
    worst = -np.inf
    prev_l = prev_u = None
    for d in ctx.nesting_deltas:
        cfg = SmootherConfig(d)
        lo = lower_smoother(c.f, cfg)
        up = upper_smoother(c.f, cfg)
        if prev_l is not None:
            worst = max(worst, leq_excess(lo, prev_l), leq_excess(prev_u, up))
        prev_l, prev_u = lo, up
    return worst <= ctx.tol, f"nesting excess {worst:.2e}"


def check_smoother_arg_monotone(c: VerifyCase, ctx: VerifyContext):
    g = pl_add(c.f, c.offset)
    e1 = leq_excess(c.op("L"), lower_smoother(g, c.cfg))
    e2 = leq_excess(c.op("U"), upper_smoother(g, c.cfg))
    return max(e1, e2) <= ctx.tol, f"argument-monotonicity excess {max(e1, e2):.2e}"


def check_absorption(c: VerifyCase, ctx: VerifyContext):
    ok = delta_absorption_check(c.f, 0.5 * c.delta, 1.4 * c.delta, ctx.tol)
    return ok, "absorption L_d1 L_d2 = L_max"


def check_idempotence(c: VerifyCase, ctx: VerifyContext):
    d1 = sup_norm_diff(lower_smoother(c.op("L"), c.cfg), c.op("L"))
    d2 = sup_norm_diff(upper_smoother(c.op("U"), c.cfg), c.op("U"))
    return max(d1, d2) <= ctx.tol, f"idempotence defect {max(d1, d2):.2e}"


def check_coidempotence(c: VerifyCase, ctx: VerifyContext):
    rl, ru = coidempotence_residual(c.f, c.cfg)
    return max(rl, ru) <= ctx.tol, f"co-idempotence residual {max(rl, ru):.2e}"


def check_ordering_chain(c: VerifyCase, ctx: VerifyContext):
    worst = max(leq_excess(c.op("L"), c.op("UL")),
                leq_excess(c.op("UL"), c.op("LU")),
                leq_excess(c.op("LU"), c.op("U")))
    return worst <= ctx.tol, f"chain L<=UL<=LU<=U excess {worst:.2e}"


def check_word_reduction(c: VerifyCase, ctx: VerifyContext):
    worst = 0.0
    worst_word = ""
    for length in range(1, 5):
        for letters in itertools.product("LU", repeat=length):
            word = "".join(letters)
            d = sup_norm_diff(c.op(word), c.op(str(reduce_word(word))))
            if d > worst:
                worst, worst_word = d, word
    return worst <= ctx.tol, f"worst word {worst_word!r} defect {worst:.2e}"


def check_smoother_output_monotone(c: VerifyCase, ctx: VerifyContext):
    # dilation and L are upwards delta-monotone; erosion and U downwards
    d, dl = c.delta, c.delta / 2
    worst = max(modulus_up(dilate(c.f, dl), d),
                modulus_up(c.op("L"), d),
                modulus_up(-erode(c.f, dl), d),
                modulus_up(-c.op("U"), d))
    return worst <= ctx.tol, f"output-monotonicity defect {worst:.2e}"


def check_smoothed_modulus_zero(c: VerifyCase, ctx: VerifyContext):
    worst = max(c.mu("LU"), c.mu("UL"))
    return worst <= ctx.tol, f"mu of LU/UL output {worst:.2e}"


def check_modulus_decrease(c: VerifyCase, ctx: VerifyContext):
    base = c.mu("f")
    worst = max(c.mu("L") - base, c.mu("U") - base)
    return worst <= ctx.tol, f"modulus increase {worst:.2e}"


def check_modulus_ordering(c: VerifyCase, ctx: VerifyContext):
    mu = c.mu("f")
    hat = modulus_hat(c.f, c.delta)
    til = modified_modulus(c.f, c.delta)
    ok = mu <= hat + ctx.tol and hat <= til + ctx.tol
    return ok, f"mu {mu:.3g} mu_hat {hat:.3g} mu_tilde {til:.3g}"


def check_pointwise_bound_interior(c: VerifyCase, ctx: VerifyContext):
    f = c.f_interior
    cfg = SmootherConfig(c.delta_int)
    hat = modulus_hat(f, c.delta_int)
    bound = PLFunction.constant(hat + ctx.bound_tol, *f.domain)
    e1 = leq_excess(pl_sub(f, lower_smoother(f, cfg)), bound)
    e2 = leq_excess(pl_sub(upper_smoother(f, cfg), f), bound)
    return max(e1, e2) <= 0, f"pointwise interior-bound excess {max(e1, e2):.2e}"


def check_supnorm_bound_interior(c: VerifyCase, ctx: VerifyContext):
    f = c.f_interior
    cfg = SmootherConfig(c.delta_int)
    hat = modulus_hat(f, c.delta_int)
    lu = apply(SemigroupElement.LU, f, cfg)
    ul = apply(SemigroupElement.UL, f, cfg)
    worst = max(sup_norm_diff(f, lu), sup_norm_diff(f, ul))
    return worst <= hat + ctx.bound_tol, \
        f"interior sup-norm error {worst:.3g} vs mu_hat {hat:.3g}"


def check_supnorm_bound_tilde(c: VerifyCase, ctx: VerifyContext):
    til = modified_modulus(c.f, c.delta)
    worst = max(sup_norm_diff(c.f, c.op("LU")), sup_norm_diff(c.f, c.op("UL")))
    return worst <= til + ctx.bound_tol, \
        f"sup-norm error {worst:.3g} vs mu_tilde {til:.3g}"


def check_oracle_erode(c: VerifyCase, ctx: VerifyContext):
    if c.index >= ctx.oracle_erode_cases:
        return True, "skipped (leading cases only)"
    f = c.f_smooth
    r = c.delta / 2
    g = orc.GridOracle.from_function(f)
    approx = g.grid_erode(r)
    exact = erode(f, r)._values_on_grid(g.grid)
    hi = float(np.max(approx - exact))      # grid min over a window subset
    lo = float(np.min(approx - exact))
    bound = f.max_abs_slope() * g.h
    ok = lo >= -ctx.tol and hi <= bound + ctx.tol
    return ok, f"erode oracle gap [{lo:.2e}, {hi:.2e}] bound {bound:.2e}"


def check_oracle_modulus(c: VerifyCase, ctx: VerifyContext):
    f = c.f_smooth
    g = orc.GridOracle.from_function(f, h=(f.b - f.a) / 320.0)
    approx = g.grid_modulus(c.delta)
    exact = modulus(f, c.delta)
    bound = 2.0 * f.max_abs_slope() * g.h
    ok = approx <= exact + ctx.tol and exact <= approx + bound + ctx.tol
    return ok, f"modulus exact {exact:.3g} grid {approx:.3g} bound {bound:.2e}"


def check_discrete_vs_brute(c: VerifyCase, ctx: VerifyContext):
    s = c.signal
    for bp in disc.BoundaryPolicy:
        ref_l = orc.brute_discrete_lower(s.samples, c.n, bp.value, c.fill)
        ref_u = orc.brute_discrete_upper(s.samples, c.n, bp.value, c.fill)
        for method in ("blocked", "deque"):
            got_l = disc.discrete_lower(s, c.n, bp, fill=c.fill, method=method)
            got_u = disc.discrete_upper(s, c.n, bp, fill=c.fill, method=method)
            if not (np.array_equal(got_l.samples, ref_l)
                    and np.array_equal(got_u.samples, ref_u)):
                return False, f"mismatch policy={bp.value} method={method}"
    return True, "all policies and methods equal brute force"


def check_discrete_duality_idempotence(c: VerifyCase, ctx: VerifyContext):
    s = c.signal
    dual = -disc.discrete_lower(disc.Signal(-s.samples, s.spacing), c.n).samples
    if not np.array_equal(disc.discrete_upper(s, c.n).samples, dual):
        return False, "duality U = -L(-s) violated"
    l1 = disc.discrete_lower(s, c.n)
    if not np.array_equal(disc.discrete_lower(l1, c.n).samples, l1.samples):
        return False, "L_n not idempotent"
    u1 = disc.discrete_upper(s, c.n)
    if not np.array_equal(disc.discrete_upper(u1, c.n).samples, u1.samples):
        return False, "U_n not idempotent"
    return True, "duality and idempotence hold"


# name -> (function, acceptance criterion group)
CHECKS = {
    "envelope-semigroup": (check_envelope_semigroup, 1),
    "envelope-monotone": (check_envelope_monotone, 1),
    "envelope-triple": (check_envelope_triple, 1),
    "envelope-extensive": (check_envelope_extensive, 1),
    "smoother-bounds": (check_smoother_bounds, 2),
    "smoother-nesting": (check_smoother_nesting, 2),
    "smoother-arg-monotone": (check_smoother_arg_monotone, 2),
    "absorption": (check_absorption, 3),
    "idempotence": (check_idempotence, 3),
    "coidempotence": (check_coidempotence, 3),
    "ordering-chain": (check_ordering_chain, 4),
    "word-reduction": (check_word_reduction, 4),
    "smoother-output-monotone": (check_smoother_output_monotone, 5),
    "smoothed-modulus-zero": (check_smoothed_modulus_zero, 5),
    "modulus-decrease": (check_modulus_decrease, 6),
    "modulus-ordering": (check_modulus_ordering, 6),
    "pointwise-bound-interior": (check_pointwise_bound_interior, 6),
    "supnorm-bound-interior": (check_supnorm_bound_interior, 6),
    "supnorm-bound-tilde": (check_supnorm_bound_tilde, 7),
    "oracle-erode": (check_oracle_erode, 9),
    "oracle-modulus": (check_oracle_modulus, 9),
    "discrete-vs-brute": (check_discrete_vs_brute, 10),
    "discrete-duality-idempotence": (check_discrete_duality_idempotence, 10),
}


@dataclass
class CheckOutcome:
    name: str
    passed: int = 0
    failed: int = 0
    failures: list = field(default_factory=list)   # (case index, detail)


@dataclass
class VerificationOutcome:
    seed: int
    count: int
    checks: dict
    counterexample: dict | None = None

    @property
    def all_passed(self) -> bool:
        return all(o.failed == 0 for o in self.checks.values())

    def matrix_text(self) -> str:
        lines = []
        width = max(len(n) for n in self.checks) + 2
        for name, o in self.checks.items():
            status = "pass" if o.failed == 0 else "FAIL"
            lines.append(f"{name:<{width}} {o.passed:>4}/{o.passed + o.failed:<4} {status}")
        return "\n".join(lines)


def run_verification(seed: int = 42, count: int = 100,
                     delta_range=(0.1, 3.0), max_breakpoints: int = 30,
                     ctx: VerifyContext | None = None,
                     check_names=None, progress=None) -> VerificationOutcome:
    if ctx is None:
        ctx = VerifyContext(tol=default_tolerance())
    names = list(CHECKS) if check_names is None else list(check_names)
    outcome = VerificationOutcome(seed, count, {n: CheckOutcome(n) for n in names})
    for i in range(count):
        case = VerifyCase(seed, i, delta_range, max_breakpoints)
        for name in names:
            fn, _ = CHECKS[name]
            ok, detail = fn(case, ctx)
            rec = outcome.checks[name]
            if ok:
                rec.passed += 1
            else:
                rec.failed += 1
                rec.failures.append((i, detail))
                if outcome.counterexample is None:
                    outcome.counterexample = {
                        "seed": seed,
                        "case_index": i,
                        "check": name,
                        "detail": detail,
                        "delta": case.delta,
                        "function": plfunction_to_dict(case.f),
                    }
        if progress is not None:
            progress(i + 1, count)
    return outcome
