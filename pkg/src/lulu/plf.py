"""Exact piecewise-linear functions on a closed interval.

A PLFunction stores strictly increasing breakpoints x_0 < ... < x_m, a point
value at every breakpoint, and one-sided limits for every open piece
(x_i, x_{i+1}).  Point values may disagree with the adjacent limits, so jump
discontinuities and isolated point values are representable exactly.  All
operations in this module are closed over the representation: evaluation,
window infima/suprema (including non-attained one-sided limits), pointwise
arithmetic on merged breakpoint sets, and min/max with crossing insertion.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Absolute tolerance used when merging collinear pieces.  Merging may perturb
# a function by at most ~4x this value, far below the 1e-9 working tolerance.
SIMPLIFY_EPS = 1e-12

# Breakpoints closer than this are identified when grids merge.  Features
# positioned by arithmetically different but mathematically equal expressions
# (e.g. (p - r1) - r2 vs p - (r1 + r2)) drift by ulps; without snapping, an
# isolated point value at the drifted position looks like a huge defect.
# Snapping moves values by at most max-slope * X_SNAP.
X_SNAP = 1e-12


def snap_grid(points, lo: float, hi: float) -> np.ndarray:
    """Sorted unique points, near-duplicates (within X_SNAP) collapsed to the
    first of each run, end points forced to land exactly on lo and hi."""
    g = np.unique(np.asarray(points, dtype=float))
    g = g[(g >= lo) & (g <= hi)]
    if len(g):
        g = g[np.concatenate([[True], np.diff(g) > X_SNAP])]
    if len(g) == 0:
        return np.array([lo, hi])
    if g[0] != lo:
        if g[0] - lo <= X_SNAP:
            g[0] = lo
        else:
            g = np.concatenate([[lo], g])
    if g[-1] != hi:
        if hi - g[-1] <= X_SNAP:
            g[-1] = hi
        else:
            g = np.concatenate([g, [hi]])
    return g


class DomainError(ValueError):
    """A point or window lies outside a function's domain, or domains differ."""


@dataclass(frozen=True)
class Window:
    """A closed subinterval [lo, hi] of some function's domain."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (np.isfinite(self.lo) and np.isfinite(self.hi)):
            raise DomainError("window bounds must be finite")
        if self.lo > self.hi:
            raise DomainError(f"window lo={self.lo} exceeds hi={self.hi}")


def _locked(a) -> np.ndarray:
    arr = np.array(a, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class PLFunction:
    """Piecewise-linear function with jumps on [xs[0], xs[-1]].

    Piece i is the open interval (xs[i], xs[i+1]); on it the function is the
    linear segment from (xs[i], right_limits[i]) to (xs[i+1], left_limits[i]).
    values[i] is the attained value at the breakpoint xs[i] and may differ
    from both adjacent limits.  Instances are immutable.
    """

    xs: np.ndarray
    values: np.ndarray
    right_limits: np.ndarray
    left_limits: np.ndarray

    def __post_init__(self):
        xs = _locked(self.xs)
        vals = _locked(self.values)
        rl = _locked(self.right_limits)
        ll = _locked(self.left_limits)
        if xs.ndim != 1 or len(xs) < 2:
            raise ValueError("need at least two breakpoints (nondegenerate domain)")
        if not (len(vals) == len(xs) and len(rl) == len(xs) - 1 == len(ll)):
            raise ValueError("inconsistent array lengths")
        if not np.all(np.isfinite(xs)) or not np.all(np.isfinite(vals)) \
                or not np.all(np.isfinite(rl)) or not np.all(np.isfinite(ll)):
            raise ValueError("breakpoints, values and limits must be finite")
        if not np.all(np.diff(xs) > 0):
            raise ValueError("breakpoints must be strictly increasing")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "right_limits", rl)
        object.__setattr__(self, "left_limits", ll)

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_points(cls, xs, ys) -> "PLFunction":
        """Continuous interpolant through (xs[i], ys[i])."""
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        return cls(xs, ys, ys[:-1], ys[1:])

    @classmethod
    def constant(cls, c: float, lo: float, hi: float) -> "PLFunction":
        return cls.from_points([lo, hi], [c, c])

    # -- basic queries -----------------------------------------------------

    @property
    def a(self) -> float:
        return float(self.xs[0])

    @property
    def b(self) -> float:
        return float(self.xs[-1])

    @property
    def domain(self) -> tuple[float, float]:
        return (self.a, self.b)

    @property
    def num_pieces(self) -> int:
        return len(self.xs) - 1

    def same_domain(self, other: "PLFunction") -> bool:
        return self.a == other.a and self.b == other.b

    def _piece_index(self, x: float) -> int:
        j = int(np.searchsorted(self.xs, x, side="right")) - 1
        return min(max(j, 0), self.num_pieces - 1)

    def _piece_at(self, j: int, t) -> np.ndarray | float:
        """Value of piece j's linear segment at t (exact at the piece ends)."""
        x0, x1 = self.xs[j], self.xs[j + 1]
        r, l = self.right_limits[j], self.left_limits[j]
        out = r + (l - r) * ((np.asarray(t) - x0) / (x1 - x0))
        out = np.where(np.asarray(t) == x0, r, out)
        out = np.where(np.asarray(t) == x1, l, out)
        return out

    def __call__(self, x: float) -> float:
        if x < self.a or x > self.b:
            raise DomainError(f"x={x} outside domain [{self.a}, {self.b}]")
        i = int(np.searchsorted(self.xs, x))
        if i < len(self.xs) and self.xs[i] == x:
            return float(self.values[i])
        j = self._piece_index(x)
        return float(self._piece_at(j, x))

    def max_abs_slope(self) -> float:
        widths = np.diff(self.xs)
        return float(np.max(np.abs(self.left_limits - self.right_limits) / widths))

    def value_bound(self) -> float:
        """Upper bound on |f| over the domain."""
        return float(max(np.max(np.abs(self.values)),
                         np.max(np.abs(self.right_limits)),
                         np.max(np.abs(self.left_limits))))

    # -- window extrema ----------------------------------------------------

    def _window_extremes(self, lo, hi, lo_open, hi_open, sign):
        # sign=+1 computes the infimum of sign*f scaled back, via min reduction.
        if isinstance(lo, Window):
            lo, hi = lo.lo, lo.hi
        if lo < self.a or hi > self.b or lo > hi:
            raise DomainError(f"window [{lo}, {hi}] not inside [{self.a}, {self.b}]")
        xs, vals = self.xs, self.values
        if lo == hi:
            return self(lo)
        best = np.inf
        # attained breakpoint values inside the window
        i0 = int(np.searchsorted(xs, lo, side="left"))
        i1 = int(np.searchsorted(xs, hi, side="right")) - 1
        if i0 <= i1:
            s, e = i0, i1 + 1
            if lo_open and xs[i0] == lo:
                s += 1
            if hi_open and xs[i1] == hi:
                e -= 1
            if s < e:
                best = min(best, float(np.min(sign * vals[s:e])))
        # one-sided limits of every piece meeting the open interior
        jlo = int(np.searchsorted(xs, lo, side="right")) - 1
        jlo = min(max(jlo, 0), self.num_pieces - 1)
        jhi = int(np.searchsorted(xs, hi, side="left")) - 1
        jhi = min(max(jhi, 0), self.num_pieces - 1)
        if jlo <= jhi:
            js = np.arange(jlo, jhi + 1)
            u = np.maximum(lo, xs[js])
            v = np.minimum(hi, xs[js + 1])
            pu = self._multi_piece_at(js, u)
            pv = self._multi_piece_at(js, v)
            best = min(best, float(np.min(sign * pu)), float(np.min(sign * pv)))
        return sign * best

    def _multi_piece_at(self, js, t):
        x0 = self.xs[js]
        x1 = self.xs[js + 1]
        r = self.right_limits[js]
        l = self.left_limits[js]
        out = r + (l - r) * ((t - x0) / (x1 - x0))
        out = np.where(t == x0, r, out)
        out = np.where(t == x1, l, out)
        return out

    def window_inf(self, lo, hi=None, *, lo_open=False, hi_open=False) -> float:
        """Infimum of the value set over [lo, hi] (one-sided limits included)."""
        if isinstance(lo, Window):
            lo, hi = lo.lo, lo.hi
        return self._window_extremes(lo, hi, lo_open, hi_open, +1.0)

    def window_sup(self, lo, hi=None, *, lo_open=False, hi_open=False) -> float:
        """Supremum of the value set over [lo, hi] (one-sided limits included)."""
        if isinstance(lo, Window):
            lo, hi = lo.lo, lo.hi
        return self._window_extremes(lo, hi, lo_open, hi_open, -1.0)

    def oscillation(self, lo: float, hi: float) -> float:
        return self.window_sup(lo, hi) - self.window_inf(lo, hi)

    # -- structural transforms ----------------------------------------------

    def __neg__(self) -> "PLFunction":
        return PLFunction(self.xs, -self.values, -self.right_limits, -self.left_limits)

    def shift_values(self, c: float) -> "PLFunction":
        return PLFunction(self.xs, self.values + c,
                          self.right_limits + c, self.left_limits + c)

    def restrict(self, lo: float, hi: float) -> "PLFunction":
        """Restriction to [lo, hi] (breakpoint structure preserved exactly)."""
        return compose_shift_clamp(self, 0.0, lo, hi)

    # -- evaluation on merged grids (internal) --------------------------------

    def _values_on_grid(self, grid: np.ndarray) -> np.ndarray:
        # Breakpoint matching is snap-tolerant: a grid point within X_SNAP of a
        # breakpoint takes its point value, so merged grids built from
        # ulp-drifted copies of the same feature still see isolated values.
        idx = np.searchsorted(self.xs, grid)
        lo_n = np.clip(idx - 1, 0, len(self.xs) - 1)
        hi_n = np.clip(idx, 0, len(self.xs) - 1)
        near = np.where(grid - self.xs[lo_n] <= self.xs[hi_n] - grid, lo_n, hi_n)
        hit = np.abs(self.xs[near] - grid) <= X_SNAP
        js = np.minimum(np.maximum(np.searchsorted(self.xs, grid, side="right") - 1, 0),
                        self.num_pieces - 1)
        interp = self._multi_piece_at(js, grid)
        return np.where(hit, self.values[near], interp)

    def _cell_limits_on_grid(self, grid: np.ndarray):
        """Right limits at cell starts and left limits at cell ends.

        Requires grid to contain every breakpoint of self up to X_SNAP (a
        merged grid).  Pieces are identified by cell midpoints, which stay
        correct when a merged-grid point sits an ulp off a true breakpoint.
        """
        cs, ce = grid[:-1], grid[1:]
        mid = 0.5 * (cs + ce)
        js = np.minimum(np.maximum(np.searchsorted(self.xs, mid, side="right") - 1, 0),
                        self.num_pieces - 1)
        return self._multi_piece_at(js, cs), self._multi_piece_at(js, ce)

    # -- simplification ------------------------------------------------------

    def simplified(self, eps: float = SIMPLIFY_EPS) -> "PLFunction":
        """Remove breakpoints where the function is straight within eps."""
        m = self.num_pieces
        if m == 1:
            return self
        if m <= 64:
            return self._simplified_scan(eps)
        return self._simplified_bulk(eps)

    def _simplified_scan(self, eps: float) -> "PLFunction":
        xs, vals, rl, ll = self.xs, self.values, self.right_limits, self.left_limits
        m = self.num_pieces
        keep = [0]
        s = 0
        base = rl[0]
        slope = (ll[0] - rl[0]) / (xs[1] - xs[0])
        for e in range(1, m):
            lt = base + slope * (xs[e] - xs[s])
            lt1 = base + slope * (xs[e + 1] - xs[s])
            ok = (abs(vals[e] - lt) <= eps and abs(ll[e - 1] - lt) <= eps
                  and abs(rl[e] - lt) <= eps and abs(ll[e] - lt1) <= eps)
            if not ok:
                keep.append(e)
                s = e
                base = rl[e]
                slope = (ll[e] - rl[e]) / (xs[e + 1] - xs[e])
        keep.append(m)
        if len(keep) == m + 1:
            return self
        kp = np.asarray(keep)
        return PLFunction(xs[kp], vals[kp], rl[kp[:-1]], ll[kp[1:] - 1])

    def _simplified_bulk(self, eps: float) -> "PLFunction":
        # Vectorized variant: a local collinearity pass selects candidate
        # removals, then every candidate is re-verified against the line of
        # its run anchor.  Runs are never split retroactively, so the merged
        # function deviates from the original by at most ~4*eps.
        xs, vals, rl, ll = self.xs, self.values, self.right_limits, self.left_limits
        m = self.num_pieces
        widths = np.diff(xs)
        slope = (ll - rl) / widths
        lp = ll[:-1]
        ext = rl[:-1] + slope[:-1] * (xs[2:] - xs[:-2])
        removable = ((np.abs(vals[1:-1] - lp) <= eps)
                     & (np.abs(rl[1:] - lp) <= eps)
                     & (np.abs(ll[1:] - ext) <= eps))
        keep_bp = np.ones(m + 1, dtype=bool)
        keep_bp[1:-1] = ~removable
        idx = np.arange(m + 1)
        anc = np.maximum.accumulate(np.where(keep_bp, idx, 0))
        inner = idx[1:-1][removable]
        if len(inner):
            s = anc[inner]
            line = rl[s] + slope[s] * (xs[inner] - xs[s])
            line1 = rl[s] + slope[s] * (xs[inner + 1] - xs[s])
            ok = ((np.abs(vals[inner] - line) <= 2 * eps)
                  & (np.abs(ll[inner - 1] - line) <= 2 * eps)
                  & (np.abs(rl[inner] - line) <= 2 * eps)
                  & (np.abs(ll[inner] - line1) <= 2 * eps))
            keep_bp[inner[~ok]] = True
        kp = idx[keep_bp]
        if len(kp) == m + 1:
            return self
        return PLFunction(xs[kp], vals[kp], rl[kp[:-1]], ll[kp[1:] - 1])


# -- structural reparametrization ---------------------------------------------


def compose_shift_clamp(f: PLFunction, shift: float, lo: float, hi: float) -> PLFunction:
    """Exact construction of h(x) = f(clamp(x - shift, f.a, f.b)) on [lo, hi].

    Breakpoints of f are carried over structurally (at x_i + shift) so point
    values survive the transform bit-exactly; clamping introduces constant
    pieces beyond the shifted domain ends.
    """
    if lo >= hi:
        raise DomainError("target domain is degenerate")
    a, b = f.a, f.b
    xs, vals, rl, ll = f.xs, f.values, f.right_limits, f.left_limits

    # new breakpoints and, in parallel, their exact source coordinates;
    # candidates within X_SNAP of an end or an earlier candidate are dropped
    # (breakpoints are offered first so their exact point values win)
    inner = xs + shift
    cands = [(float(inner[i]), float(xs[i])) for i in range(len(xs))]
    cands += [(float(a + shift), float(a)), (float(b + shift), float(b))]
    pos = [lo, hi]
    src = {lo: min(max(lo - shift, a), b), hi: min(max(hi - shift, a), b)}
    accepted: list = []
    for t, s in cands:
        if t - lo <= X_SNAP or hi - t <= X_SNAP:
            continue
        if any(abs(t - q) <= X_SNAP for q in accepted):
            continue
        accepted.append(t)
        pos.append(t)
        src[t] = s
    grid = np.unique(np.asarray(pos, dtype=float))

    # point values: exact where the source lands on a breakpoint of f
    # (within X_SNAP: equal sources may arrive by different arithmetic paths)
    src_x = np.array([src[float(t)] for t in grid])
    new_vals = np.empty(len(grid))
    for k, sx in enumerate(src_x):
        i = int(np.searchsorted(xs, sx))
        near = i if i < len(xs) and (i == 0 or xs[i] - sx <= sx - xs[i - 1]) else i - 1
        if abs(xs[near] - sx) <= X_SNAP:
            new_vals[k] = vals[near]
        else:
            new_vals[k] = f._piece_at(f._piece_index(sx), sx)

    # piece limits from source spans (piece identified by the span midpoint,
    # which stays correct when a span end drifts an ulp past a breakpoint)
    ncell = len(grid) - 1
    new_rl = np.empty(ncell)
    new_ll = np.empty(ncell)
    for k in range(ncell):
        s0, s1 = src_x[k], src_x[k + 1]
        if s1 <= a:
            new_rl[k] = new_ll[k] = vals[0]
        elif s0 >= b:
            new_rl[k] = new_ll[k] = vals[-1]
        else:
            j = f._piece_index(0.5 * (s0 + s1))
            new_rl[k] = rl[j] if abs(s0 - xs[j]) <= X_SNAP else f._piece_at(j, s0)
            new_ll[k] = ll[j] if abs(s1 - xs[j + 1]) <= X_SNAP else f._piece_at(j, s1)
    return PLFunction(grid, new_vals, new_rl, new_ll)


# -- binary pointwise operations ----------------------------------------------


def _require_same_domain(f: PLFunction, g: PLFunction):
    if not f.same_domain(g):
        raise DomainError(f"domain mismatch: {f.domain} vs {g.domain}")


def _merged_grid(f: PLFunction, g: PLFunction) -> np.ndarray:
    return snap_grid(np.concatenate([f.xs, g.xs]), f.a, f.b)


def pl_sub(f: PLFunction, g: PLFunction) -> PLFunction:
    """Pointwise f - g on the merged breakpoint set (kept unsimplified:
    comparisons and norms read its extremes directly)."""
    _require_same_domain(f, g)
    grid = _merged_grid(f, g)
    fr, fl = f._cell_limits_on_grid(grid)
    gr, gl = g._cell_limits_on_grid(grid)
    vals = f._values_on_grid(grid) - g._values_on_grid(grid)
    return PLFunction(grid, vals, fr - gr, fl - gl)


def pl_add(f: PLFunction, g: PLFunction) -> PLFunction:
    _require_same_domain(f, g)
    grid = _merged_grid(f, g)
    fr, fl = f._cell_limits_on_grid(grid)
    gr, gl = g._cell_limits_on_grid(grid)
    vals = f._values_on_grid(grid) + g._values_on_grid(grid)
    return PLFunction(grid, vals, fr + gr, fl + gl)


def pl_min(f: PLFunction, g: PLFunction) -> PLFunction:
    """Pointwise minimum with exact crossing insertion."""
    _require_same_domain(f, g)
    grid = _merged_grid(f, g)
    fr, fl = f._cell_limits_on_grid(grid)
    gr, gl = g._cell_limits_on_grid(grid)
    d0 = fr - gr
    d1 = fl - gl
    crossing = (d0 * d1) < 0
    if np.any(crossing):
        t0 = grid[:-1][crossing]
        t1 = grid[1:][crossing]
        dd0 = d0[crossing]
        dd1 = d1[crossing]
        xc = t0 + dd0 * (t1 - t0) / (dd0 - dd1)
        xc = xc[(xc - t0 > X_SNAP) & (t1 - xc > X_SNAP)]
        if len(xc):
            grid = snap_grid(np.concatenate([grid, xc]), f.a, f.b)
            fr, fl = f._cell_limits_on_grid(grid)
            gr, gl = g._cell_limits_on_grid(grid)
    vals = np.minimum(f._values_on_grid(grid), g._values_on_grid(grid))
    return PLFunction(grid, vals, np.minimum(fr, gr), np.minimum(fl, gl)).simplified()


def pl_max(f: PLFunction, g: PLFunction) -> PLFunction:
    return -pl_min(-f, -g)


# -- comparisons ---------------------------------------------------------------


def sup_norm(f: PLFunction) -> float:
    return f.value_bound()


def sup_norm_diff(f: PLFunction, g: PLFunction) -> float:
    """sup |f - g| over the shared domain (exact on the merged grid)."""
    return sup_norm(pl_sub(f, g))


def leq_excess(f: PLFunction, g: PLFunction) -> float:
    """max (f - g): nonpositive iff f <= g pointwise."""
    d = pl_sub(f, g)
    return float(max(np.max(d.values), np.max(d.right_limits), np.max(d.left_limits)))


def pointwise_leq(f: PLFunction, g: PLFunction, tol: float = 0.0) -> bool:
    """Whether f <= g + tol everywhere (values and one-sided limits)."""
    return leq_excess(f, g) <= tol
