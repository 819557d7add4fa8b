"""Brute-force grid reference for the exact operators.

The oracle evaluates everything by dense sampling and has no shared code with
the exact path: envelopes become plain min/max over index windows, and the
modulus of nonmonotonicity is evaluated literally from its three-point
formula over all admissible grid triples.  Agreement bounds are spelled out
per method; they follow from the max slope of the function and the grid
pitch, since between samples a piecewise-linear function moves at most
slope * h.

Grid construction always includes every breakpoint plus near-breakpoint
probes on both sides, so jumps and isolated point values are sampled even
though the grid cannot represent one-sided limits themselves.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .plf import PLFunction

# modulus cost grows with the triple count; refuse rather than stall
MAX_ERODE_GRID = 20_000
MAX_MODULUS_GRID = 2_000


class OracleCostError(RuntimeError):
    """Requested grid is denser than the brute-force budget allows."""


def _resolve_indices(idx: np.ndarray, n_len: int, policy: str, fill: float,
                     s: np.ndarray) -> np.ndarray:
    """Sample values at (possibly out-of-range) integer indices per policy."""
    if policy == "clamp":
        return s[np.clip(idx, 0, n_len - 1)]
    if policy == "reflect":
        if n_len == 1:
            return np.full(idx.shape, s[0])
        period = 2 * n_len - 2
        t = np.mod(idx, period)
        t = np.where(t >= n_len, period - t, t)
        return s[t]
    if policy == "extend-constant":
        inside = (idx >= 0) & (idx < n_len)
        return np.where(inside, s[np.clip(idx, 0, n_len - 1)], fill)
    raise ValueError(f"unknown boundary policy {policy!r}")


def brute_discrete_lower(samples, n: int, policy: str = "clamp",
                         fill: float = 0.0) -> np.ndarray:
    """Literal evaluation of (L_n s)_i = max_k min(s[i-n+k .. i+k]): the full
    (i, k, j) index cube is materialized and reduced, no sliding reuse."""
    s = np.asarray(samples, dtype=float)
    n_len = len(s)
    i = np.arange(n_len)[:, None, None]
    k = np.arange(n + 1)[None, :, None]
    j = np.arange(n + 1)[None, None, :]
    cube = _resolve_indices(i - n + k + j, n_len, policy, fill, s)
    return cube.min(axis=2).max(axis=1)


def brute_discrete_upper(samples, n: int, policy: str = "clamp",
                         fill: float = 0.0) -> np.ndarray:
    s = np.asarray(samples, dtype=float)
    n_len = len(s)
    i = np.arange(n_len)[:, None, None]
    k = np.arange(n + 1)[None, :, None]
    j = np.arange(n + 1)[None, None, :]
    cube = _resolve_indices(i - n + k + j, n_len, policy, fill, s)
    return cube.max(axis=2).min(axis=1)


@dataclass
class GridOracle:
    """Dense-grid sampling of a function on [a, b]."""

    grid: np.ndarray
    samples: np.ndarray
    h: float   # max gap between consecutive grid points

    @classmethod
    def from_function(cls, f: PLFunction, h: float | None = None,
                      side_frac: float = 0.1) -> "GridOracle":
        """Sample f on a uniform grid enriched with breakpoints and
        side probes at distance side_frac*h around each breakpoint."""
        a, b = f.domain
        if h is None:
            h = float(np.min(np.diff(f.xs))) / 16.0
        n = int(np.ceil((b - a) / h)) + 1
        if n > MAX_ERODE_GRID:
            raise OracleCostError(f"grid of {n} points exceeds {MAX_ERODE_GRID}")
        pts = [np.linspace(a, b, n), f.xs]
        off = side_frac * h
        pts.append(np.clip(f.xs - off, a, b))
        pts.append(np.clip(f.xs + off, a, b))
        grid = np.unique(np.concatenate(pts))
        samples = f._values_on_grid(grid)
        return cls(grid, samples, float(np.max(np.diff(grid))))

    def _window_reduce(self, r: float, reducer) -> np.ndarray:
        lo = np.searchsorted(self.grid, self.grid - r, side="left")
        hi = np.searchsorted(self.grid, self.grid + r, side="right")
        return np.array([reducer(self.samples[i:j]) for i, j in zip(lo, hi)])

    def grid_erode(self, r: float) -> np.ndarray:
        """min over [x-r, x+r] per grid point; matches the exact erosion to
        within max_abs_slope * h (limits at jumps are only approached)."""
        return self._window_reduce(r, np.min)

    def grid_dilate(self, r: float) -> np.ndarray:
        return self._window_reduce(r, np.max)

    def grid_modulus(self, delta: float) -> float:
        """Literal three-point modulus over all grid triples x1 <= x <= x2
        with x2 - x1 <= delta.

        phi(x1, x, x2) = (|f(x1)-f(x)| + |f(x2)-f(x)| - |f(x1)-f(x2)|) / 2,
        which is max(0, min(f1,f2) - fx, fx - max(f1,f2)).  Underestimates
        the true modulus by at most ~2 * max_abs_slope * h.
        """
        g, s = self.grid, self.samples
        n = len(g)
        if n > MAX_MODULUS_GRID:
            raise OracleCostError(f"{n} grid points exceeds {MAX_MODULUS_GRID}")
        best = 0.0
        for i1 in range(n):
            j2 = int(np.searchsorted(g, g[i1] + delta, side="right"))
            f1 = s[i1]
            fx = s[i1:j2]
            f2 = s[i1:j2]
            # triple (i1, k, i2) with i1 <= k <= i2 < j2
            lohi = np.minimum(f1, f2)[None, :]
            uphi = np.maximum(f1, f2)[None, :]
            phi = np.maximum(lohi - fx[:, None], fx[:, None] - uphi)
            tri = np.triu(phi)   # enforce k <= i2
            m = float(np.max(tri)) if tri.size else 0.0
            if m > best:
                best = m
        return best
