"""Discrete LULU operators on finite sequences.

(L_n s)_i = max over the n+1 windows [i-n+k, i+k] (k = 0..n) of the window
minimum; (U_n s)_i is the dual.  Finite sequences need a boundary policy for
indices outside [0, N):

  clamp           indices clip to the ends (edge sample repeats) — the
                  discrete mirror of domain-clipped neighborhoods
  reflect         mirror without repeating the edge sample (s[-1] -> s[1])
  extend-constant pad with a constant (default 0.0)

Two interchangeable fast paths both run in O(N) total: a monotone-wedge deque
(pure Python, the textbook structure) and a block prefix/suffix reduction
(vectorized, for throughput).  `naive` evaluates the defining formula
literally and is the reference the fast paths are tested against.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass

import numpy as np

from .plf import PLFunction


class BoundaryPolicy(str, enum.Enum):
    CLAMP = "clamp"
    REFLECT = "reflect"
    EXTEND_CONSTANT = "extend-constant"


@dataclass(frozen=True)
class Signal:
    samples: np.ndarray
    spacing: float = 1.0

    def __post_init__(self):
        arr = np.asarray(self.samples, dtype=float)
        if arr.ndim != 1 or len(arr) < 1:
            raise ValueError("samples must be a nonempty 1-d sequence")
        if not np.all(np.isfinite(arr)):
            raise ValueError("samples must be finite")
        if not (self.spacing > 0):
            raise ValueError("spacing must be positive")
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)

    def __len__(self):
        return len(self.samples)


def _padded(s: np.ndarray, n: int, bp: BoundaryPolicy, fill: float) -> np.ndarray:
    # pad n on each side so every window index is in range; L_n reaches n
    # either way from i, so n suffices for both passes combined (the second
    # pass consumes the first pass's same-length output).
    if bp is BoundaryPolicy.CLAMP:
        return np.pad(s, n, mode="edge")
    if bp is BoundaryPolicy.REFLECT:
        if len(s) == 1:
            return np.pad(s, n, mode="edge")
        return np.pad(s, n, mode="reflect")
    return np.pad(s, n, constant_values=fill)


def _slide_min_blocked(x: np.ndarray, w: int) -> np.ndarray:
    """Minimum over every length-w window of x (len(x)-w+1 outputs), via
    block prefix/suffix minima: one forward and one backward cumulative pass."""
    n = len(x)
    if w == 1:
        return x.copy()
    nblk = -(-n // w)
    pad = np.concatenate([x, np.full(nblk * w - n, np.inf)])
    fwd = np.minimum.accumulate(pad.reshape(nblk, w), axis=1).ravel()
    bwd = np.minimum.accumulate(pad.reshape(nblk, w)[:, ::-1], axis=1)[:, ::-1].ravel()
    return np.minimum(bwd[: n - w + 1], fwd[w - 1: n])


def _slide_min_deque(x: np.ndarray, w: int) -> np.ndarray:
    """Same contract as _slide_min_blocked via a monotone wedge."""
    out = np.empty(len(x) - w + 1)
    q: deque[int] = deque()
    for i, v in enumerate(x):
        while q and x[q[-1]] >= v:
            q.pop()
        q.append(i)
        if q[0] <= i - w:
            q.popleft()
        if i >= w - 1:
            out[i - w + 1] = x[q[0]]
    return out


def _slide_min_naive(x: np.ndarray, w: int) -> np.ndarray:
    return np.array([np.min(x[i:i + w]) for i in range(len(x) - w + 1)])

_SLIDERS = {
    "blocked": _slide_min_blocked,
    "deque": _slide_min_deque,
    "naive": _slide_min_naive,
}


def _lower_values(x: np.ndarray, n: int, bp: BoundaryPolicy, fill: float,
                  method: str) -> np.ndarray:
    slide = _SLIDERS[method]
    ext = _padded(x, n, bp, fill)           # length N + 2n
    mins = slide(ext, n + 1)                # window mins, length N + n
    return -slide(-mins, n + 1)             # max over n+1 covering windows, length N


def discrete_lower(s: Signal, n: int, bp: BoundaryPolicy = BoundaryPolicy.CLAMP,
                   *, fill: float = 0.0, method: str = "blocked") -> Signal:
    """L_n: running min over windows of n+1 samples, then running max over
    the n+1 windows covering each index.  n >= len(s) is allowed; under
    clamp it degenerates toward global min/max combinations."""
    if not (isinstance(n, (int, np.integer)) and n >= 1):
        raise ValueError(f"n must be a positive integer, got {n}")
    if method not in _SLIDERS:
        raise ValueError(f"unknown method {method!r}")
    bp = BoundaryPolicy(bp)
    return Signal(_lower_values(s.samples, int(n), bp, fill, method), s.spacing)


def discrete_upper(s: Signal, n: int, bp: BoundaryPolicy = BoundaryPolicy.CLAMP,
                   *, fill: float = 0.0, method: str = "blocked") -> Signal:
    """U_n = -L_n(-s); with extend-constant the pad constant negates too."""
    if not (isinstance(n, (int, np.integer)) and n >= 1):
        raise ValueError(f"n must be a positive integer, got {n}")
    if method not in _SLIDERS:
        raise ValueError(f"unknown method {method!r}")
    bp = BoundaryPolicy(bp)
    return Signal(-_lower_values(-s.samples, int(n), bp, -fill, method), s.spacing)


def apply_discrete_word(word: str, s: Signal, n: int,
                        bp: BoundaryPolicy = BoundaryPolicy.CLAMP,
                        *, fill: float = 0.0, method: str = "blocked") -> Signal:
    """Apply an {L,U}-word to a sequence, rightmost letter first."""
    if not word or any(ch not in "LU" for ch in word):
        raise ValueError(f"word must be a nonempty string over {{L,U}}, got {word!r}")
    out = s
    for ch in reversed(word):
        op = discrete_lower if ch == "L" else discrete_upper
        out = op(out, n, bp, fill=fill, method=method)
    return out


def embed_as_step(s: Signal) -> PLFunction:
    """Piecewise-constant embedding: value samples[i] on [i, i+1) in spacing
    units, right-continuous, on [0, N * spacing]."""
    vals = s.samples
    n = len(vals)
    xs = np.arange(n + 1) * s.spacing
    point_vals = np.append(vals, vals[-1])
    return PLFunction(xs, point_vals, vals, vals)
