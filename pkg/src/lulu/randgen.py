"""Seeded random piecewise-linear functions for property tests and `verify`.

Every generated case is reproducible from (seed, index): the generator uses
numpy's spawn-key construction default_rng([seed, index]) so counterexamples
can name the exact case.  Breakpoints keep a minimum gap (slopes stay bounded,
which keeps collinearity merging and oracle error bounds meaningful).
"""

from __future__ import annotations

import numpy as np

from .plf import PLFunction


def case_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, index])


def random_plfunction(rng: np.random.Generator,
                      max_breakpoints: int = 30,
                      domain: tuple[float, float] = (0.0, 10.0),
                      value_range: tuple[float, float] = (-5.0, 5.0),
                      jump_prob: float = 0.0,
                      min_gap: float = 0.05,
                      flat_margin: float = 0.0) -> PLFunction:
    """Random PLFunction; jump_prob > 0 adds jump discontinuities and isolated
    point values; flat_margin > 0 makes f constant on [a, a+margin] and
    [b-margin, b], so its features stay clear of the boundary."""
    a, b = domain
    lo, hi = a, b
    if flat_margin > 0:
        lo, hi = a + flat_margin, b - flat_margin
        if hi - lo < 4 * min_gap:
            raise ValueError("flat_margin leaves no room for interior features")
    m = int(rng.integers(2, max_breakpoints))
    inner = np.sort(rng.uniform(lo + min_gap, hi - min_gap, m))
    xs = [lo]
    for t in inner:
        if t - xs[-1] >= min_gap and hi - t >= min_gap:
            xs.append(float(t))
    xs.append(hi)
    xs = np.asarray(xs)

    vlo, vhi = value_range
    ys = rng.uniform(vlo, vhi, len(xs))
    if jump_prob > 0:
        vals = ys.copy()
        rl = ys[:-1].copy()
        ll = ys[1:].copy()
        for i in range(len(xs)):
            if rng.random() < jump_prob:
                vals[i] = rng.uniform(vlo, vhi)       # isolated point value
            if i < len(xs) - 1 and rng.random() < jump_prob:
                rl[i] = rng.uniform(vlo, vhi)          # jump entering piece i
        f = PLFunction(xs, vals, rl, ll)
    else:
        f = PLFunction.from_points(xs, ys)

    if flat_margin > 0:
        c0 = float(f.values[0])
        c1 = float(f.values[-1])
        xs2 = np.concatenate([[a], f.xs, [b]])
        vals2 = np.concatenate([[c0], f.values, [c1]])
        rl2 = np.concatenate([[c0], f.right_limits, [c1]])
        ll2 = np.concatenate([[c0], f.left_limits, [c1]])
        f = PLFunction(xs2, vals2, rl2, ll2)
    return f


def random_signal(rng: np.random.Generator, max_len: int = 200,
                  value_range: tuple[float, float] = (-5.0, 5.0),
                  spacing: float = 1.0):
    from .discrete import Signal
    n = int(rng.integers(1, max_len + 1))
    return Signal(rng.uniform(*value_range, n), spacing)
