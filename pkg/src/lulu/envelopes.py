"""Exact sliding-window envelopes of piecewise-linear functions.

erode(f, r)(x) is the infimum of f over the window [x-r, x+r] clipped to the
domain [a, b]; dilate is the supremum.  Windows are never padded: near the
ends they simply shrink.  The infimum over a window decomposes exactly into

    min( f(right end), f(left end), interior floor )

where the interior floor accounts for everything the window interior can
contribute at breakpoints of f: attained point values and the one-sided piece
limits.  Between breakpoints f is linear, so window-end values cover the rest.
Each contribution is active on an interval of window centers x; collecting
them as (position, value, activation) events makes the floor a step function
computable on one shared grid.  The result is again piecewise linear with
jumps, exactly — including isolated point values created where a jump's
one-sided limit leaves the window.
"""

from __future__ import annotations

import numpy as np

from .plf import X_SNAP, PLFunction, compose_shift_clamp, pl_min

# event kinds: attained value / right limit / left limit
_KIND_VALUE = 0
_KIND_RLIM = 1
_KIND_LLIM = 2

_POINT_BLOCK = 512


def _interior_floor(f: PLFunction, r: float) -> PLFunction:
    """Step function: min over breakpoint contributions active at each center.

    A point value at p is visible from centers [p-r, p+r].  A right limit at
    a piece start p needs the window to reach strictly past p, so (p-r, p+r];
    a left limit at a piece end p dually needs [p-r, p+r).  Cells where no
    event is active get a cap larger than sup f, which the surrounding min
    with the window-end values removes.
    """
    a, b = f.domain
    xs = f.xs
    pos = np.concatenate([xs, xs[:-1], xs[1:]])
    val = np.concatenate([f.values, f.right_limits, f.left_limits])
    kind = np.concatenate([
        np.full(len(xs), _KIND_VALUE),
        np.full(len(xs) - 1, _KIND_RLIM),
        np.full(len(xs) - 1, _KIND_LLIM),
    ])
    big = f.value_bound() + 1.0

    grid = np.unique(np.clip(np.concatenate([pos - r, pos + r, [a, b]]), a, b))
    lo_act = pos - r
    hi_act = pos + r

    # cells: activation covers the open cell iff it covers both ends;
    # openness of the activation ends cannot matter for an open cell.
    g0, g1 = grid[:-1], grid[1:]
    cell = np.where(
        (lo_act[None, :] <= g0[:, None]) & (hi_act[None, :] >= g1[:, None]),
        val[None, :], big).min(axis=1)

    # grid points: strictness of the activation ends matters here.  Ends are
    # compared with X_SNAP slack: centers produced by different arithmetic
    # paths drift by ulps, and a center within X_SNAP of an activation end is
    # treated as sitting exactly on it (so strict kinds still exclude it).
    pts = np.empty(len(grid))
    for s in range(0, len(grid), _POINT_BLOCK):
        t = grid[s:s + _POINT_BLOCK, None]
        lo_ok = np.where(kind[None, :] == _KIND_RLIM,
                         lo_act + X_SNAP < t, lo_act - X_SNAP <= t)
        hi_ok = np.where(kind[None, :] == _KIND_LLIM,
                         t < hi_act - X_SNAP, t <= hi_act + X_SNAP)
        pts[s:s + _POINT_BLOCK] = np.where(lo_ok & hi_ok, val[None, :], big).min(axis=1)

    return PLFunction(grid, pts, cell, cell)


def erode(f: PLFunction, r: float) -> PLFunction:
    """Sliding infimum with radius r over domain-clipped windows, exact."""
    if not (r > 0 and np.isfinite(r)):
        raise ValueError(f"radius must be positive and finite, got {r}")
    a, b = f.domain
    right_end = compose_shift_clamp(f, -r, a, b)   # x -> f(clamp(x + r))
    left_end = compose_shift_clamp(f, +r, a, b)    # x -> f(clamp(x - r))
    return pl_min(pl_min(right_end, left_end), _interior_floor(f, r))


def dilate(f: PLFunction, r: float) -> PLFunction:
    """Sliding supremum with radius r, exact (dual of erode)."""
    return -erode(-f, r)
