"""Local delta-monotonicity predicates and the exact modulus of nonmonotonicity.

For a window [x1, x2] of width <= delta and a center x1 <= x <= x2, the
three-point defect

    phi = (|f(x1)-f(x)| + |f(x2)-f(x)| - |f(x1)-f(x2)|) / 2
        = max(0, min(f(x1),f(x2)) - f(x), f(x) - max(f(x1),f(x2)))

measures how far the triple is from monotone; the modulus mu(f, delta) is its
supremum.  Splitting phi into its upward part (center above both ends) and the
downward mirror (= upward part of -f) leaves one optimization problem:

    mu_up = sup over admissible pairs of [ sup f over [x1,x2] - max(f1, f2) ].

For a fixed pair the inner sup is realized at a breakpoint of f inside the
window — an attained value, or a one-sided limit with approach room — never in
a piece interior where f is linear.  Grouping pairs by the realizing
breakpoint "event" e at position p with level c_e turns the problem into
finitely many exact subproblems

    mu_up = max(0, max_e [ c_e - M_e ]),
    M_e   = inf { max(f(x1), f(x2)) : x1 in [max(a, p-delta), p],
                                      x2 in [p, min(b, p+delta)],
                                      x2 - x1 <= delta, strictness per kind }

where a right-limit event needs x2 > p and a left-limit event x1 < p.  Each
M_e is computed exactly: the best x1 for a given x2 is the running infimum of
f from the right, G(t) = inf f over [t, p], so M_e is the window infimum of
max(f(x2), G(clamp(x2 - delta))) — piecewise-linear algebra again, whose
min/max crossing insertion automatically finds interior balance points
f(x1) = f(x2) that a breakpoint-only candidate grid would miss.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .plf import PLFunction, compose_shift_clamp, pl_max, pl_min

_KIND_VALUE = "value"
_KIND_RLIM = "right-limit"
_KIND_LLIM = "left-limit"


@dataclass(frozen=True)
class ModulusWitness:
    """Diagnostic location where the modulus is (approached or) attained."""

    x: float                 # event position: center of the worst triple
    kind: str                # value / right-limit / left-limit
    direction: str           # "up" or "down"
    center_level: float      # f-level at the center (c_e)
    pair_level: float        # best achievable max(f(x1), f(x2)) (M_e)
    window: tuple[float, float]   # admissible (x1, x2) hull around x


@dataclass(frozen=True)
class ModulusReport:
    delta: float
    eps: float
    mu: float
    mu_hat: float
    mu_tilde: float
    boundary_overlap: bool
    witness: Optional[ModulusWitness] = None

    def __post_init__(self):
        slack = 1e-9
        if not (self.mu <= self.mu_hat + slack and self.mu_hat <= self.mu_tilde + slack):
            raise AssertionError(
                f"modulus ordering violated: mu={self.mu} mu_hat={self.mu_hat} "
                f"mu_tilde={self.mu_tilde}")

    def to_dict(self) -> dict:
        w = None
        if self.witness is not None:
            w = {
                "x": float(self.witness.x),
                "kind": self.witness.kind,
                "direction": self.witness.direction,
                "center_level": float(self.witness.center_level) + 0.0,
                "pair_level": float(self.witness.pair_level) + 0.0,
                "window": [float(t) for t in self.witness.window],
            }
        return {
            "delta": float(self.delta),
            "eps": float(self.eps),
            "mu": float(self.mu),
            "mu_hat": float(self.mu_hat),
            "mu_tilde": float(self.mu_tilde),
            "boundary_overlap": self.boundary_overlap,
            "witness": w,
        }


def _suffix_inf(fr: PLFunction, cap_last: bool, big: float) -> PLFunction:
    """G(t) = inf f over [t, p] on fr's domain [lo, p]; with cap_last the
    point value at p is excluded (G(p) := big), for strict x1 < p events."""
    xs, vals = fr.xs, fr.values
    rl, ll = fr.right_limits, fr.left_limits
    tail = big if cap_last else float(vals[-1])
    body = np.minimum(vals[:-1], np.minimum(rl, ll))
    srev = np.minimum.accumulate(np.concatenate([[tail], body[::-1]]))
    s = srev[::-1]            # s[k] = inf f over [xs[k], p] (point at p capped?)
    cell = np.minimum(ll, s[1:])
    step_vals = np.append(np.minimum(rl, cell), tail)
    step = PLFunction(xs, step_vals, cell, cell)
    if cap_last:
        fr = PLFunction(xs, np.concatenate([vals[:-1], [big]]), rl, ll)
    return pl_min(fr, step)


def _event_levels(f: PLFunction):
    """(positions, levels, kinds) of all sup-realizing events of f."""
    xs = f.xs
    pos = np.concatenate([xs, xs[:-1], xs[1:]])
    lev = np.concatenate([f.values, f.right_limits, f.left_limits])
    kinds = ([_KIND_VALUE] * len(xs) + [_KIND_RLIM] * (len(xs) - 1)
             + [_KIND_LLIM] * (len(xs) - 1))
    return pos, lev, kinds


def _pair_inf(f: PLFunction, p: float, delta: float, kind: str, big: float) -> float:
    """M_e: least achievable max(f(x1), f(x2)) around the event at p."""
    a, b = f.domain
    lo1 = max(a, p - delta)
    hi2 = min(b, p + delta)
    if p == a:
        # x1 pinned to a
        return max(f(a), f.window_inf(p, hi2, lo_open=(kind == _KIND_RLIM)))
    if p == b:
        return max(f(b), f.window_inf(lo1, p, hi_open=(kind == _KIND_LLIM)))
    g = _suffix_inf(f.restrict(lo1, p), kind == _KIND_LLIM, big)
    v1 = compose_shift_clamp(g, delta, p, hi2)    # x2 -> inf f over [x2-delta, p]
    h = pl_max(f.restrict(p, hi2), v1)
    return h.window_inf(p, hi2, lo_open=(kind == _KIND_RLIM))


def _mu_up(f: PLFunction, delta: float):
    """max(0, sup of [center - best pair]) plus the winning event, exactly."""
    a, b = f.domain
    pos, lev, kinds = _event_levels(f)
    big = f.value_bound() + 1.0

    # prune: M_e >= max of the window infima on either side of p, so an event
    # can't beat `best` unless its level clears that floor by more.
    xs = f.xs
    left_inf = np.array([f.window_inf(max(a, x - delta), x) for x in xs])
    right_inf = np.array([f.window_inf(x, min(b, x + delta)) for x in xs])
    floor = np.maximum(left_inf, right_inf)
    floors = np.concatenate([floor, floor[:-1], floor[1:]])
    gaps = lev - floors

    best = 0.0
    best_ev = None
    for j in np.argsort(-gaps):
        if gaps[j] <= best:
            break
        m_e = _pair_inf(f, float(pos[j]), delta, kinds[j], big)
        val = lev[j] - m_e
        if val > best:
            best = val
            best_ev = (float(pos[j]), kinds[j], float(lev[j]), m_e)
    return best, best_ev


def modulus_up(f: PLFunction, delta: float) -> float:
    """Largest excess of f above both window endpoints (upward defect)."""
    _check_delta(delta)
    return _mu_up(f, delta)[0]


def modulus_down(f: PLFunction, delta: float) -> float:
    return modulus_up(-f, delta)


def modulus(f: PLFunction, delta: float) -> float:
    """mu(f, delta): supremum of the three-point nonmonotonicity defect."""
    _check_delta(delta)
    up, _ = _mu_up(f, delta)
    down, _ = _mu_up(-f, delta)
    return max(up, down)


def modulus_with_witness(f: PLFunction, delta: float):
    _check_delta(delta)
    up, ev_up = _mu_up(f, delta)
    down, ev_down = _mu_up(-f, delta)
    if down > up and ev_down is not None:
        p, kind, c, m = ev_down
        return down, ModulusWitness(p, kind, "down", -c, -m,
                                    (max(f.a, p - delta), min(f.b, p + delta)))
    if ev_up is not None:
        p, kind, c, m = ev_up
        return up, ModulusWitness(p, kind, "up", c, m,
                                  (max(f.a, p - delta), min(f.b, p + delta)))
    return max(up, down), None


def modulus_hat(f: PLFunction, delta: float, eps: float | None = None) -> float:
    """Right-limit envelope of mu(f, .) at delta, approximated from above by
    evaluating at delta + eps (mu is nondecreasing in delta)."""
    _check_delta(delta)
    if eps is None:
        eps = delta * 1e-6
    if not (eps > 0):
        raise ValueError(f"eps must be positive, got {eps}")
    return modulus(f, delta + eps)


def boundary_overlap(f: PLFunction, delta: float) -> bool:
    """Whether the two half-window boundary strips [a, a+delta/2] and
    [b-delta/2, b] overlap (delta exceeds the domain length)."""
    a, b = f.domain
    return a + delta / 2.0 > b - delta / 2.0


def modified_modulus(f: PLFunction, delta: float, eps: float | None = None) -> float:
    """mu-tilde: mu_hat joined with the oscillations of f on the two
    boundary strips of width delta/2 (clipped to the domain)."""
    _check_delta(delta)
    a, b = f.domain
    osc_lo = f.oscillation(a, min(b, a + delta / 2.0))
    osc_hi = f.oscillation(max(a, b - delta / 2.0), b)
    return max(modulus_hat(f, delta, eps), osc_lo, osc_hi)


def analyze_modulus(f: PLFunction, delta: float,
                    eps: float | None = None) -> ModulusReport:
    """All three moduli plus the witness of mu, in one report."""
    _check_delta(delta)
    if eps is None:
        eps = delta * 1e-6
    mu, wit = modulus_with_witness(f, delta)
    hat = modulus_hat(f, delta, eps)
    a, b = f.domain
    tilde = max(hat,
                f.oscillation(a, min(b, a + delta / 2.0)),
                f.oscillation(max(a, b - delta / 2.0), b))
    return ModulusReport(delta=delta, eps=eps, mu=mu,
                         mu_hat=max(hat, mu), mu_tilde=max(tilde, hat, mu),
                         boundary_overlap=boundary_overlap(f, delta),
                         witness=wit)


def is_upwards_monotone(f: PLFunction, delta: float, tol: float = 1e-9) -> bool:
    """No window of width <= delta where f exceeds both endpoint values."""
    return modulus_up(f, delta) <= tol


def is_downwards_monotone(f: PLFunction, delta: float, tol: float = 1e-9) -> bool:
    return modulus_up(-f, delta) <= tol


def is_locally_monotone(f: PLFunction, delta: float, tol: float = 1e-9) -> bool:
    return modulus(f, delta) <= tol


def _check_delta(delta: float):
    if not (delta > 0 and np.isfinite(delta)):
        raise ValueError(f"delta must be positive and finite, got {delta}")
