"""Four-panel SVG rendering of a function and its four basic smoothings.

Each panel overlays the input f (dotted) with one of L f, U f, LU f, UL f.
Jumps render honestly: linear pieces are drawn as NaN-separated open
segments, and point values that detach from both adjacent one-sided limits
get explicit markers.

Output is byte-deterministic for identical inputs: fixed hash salt, fixed
fonts, text kept as text (no glyph paths), and no timestamp metadata.
"""

from __future__ import annotations

import numpy as np
import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .plf import PLFunction
from .smoothers import SmootherConfig, apply_word

# rc settings that make repeated renders byte-identical
_DET_RC = {
    "svg.hashsalt": "lulu",
    "svg.fonttype": "none",
    "figure.dpi": 100,
    "savefig.dpi": 100,
    "font.family": "DejaVu Sans",
    "font.size": 9.0,
    "axes.unicode_minus": False,
    "path.simplify": False,
}

_PANEL_WORDS = ("L", "U", "LU", "UL")


def _piece_paths(f: PLFunction):
    """Piece polylines as one NaN-separated path (open segments at jumps)."""
    m = f.num_pieces
    xs = np.full(3 * m, np.nan)
    ys = np.full(3 * m, np.nan)
    xs[0::3] = f.xs[:-1]
    xs[1::3] = f.xs[1:]
    ys[0::3] = f.right_limits
    ys[1::3] = f.left_limits
    return xs, ys


def _detached_points(f: PLFunction, tol: float = 1e-12):
    """Breakpoints whose attained value detaches from every adjacent limit."""
    vals = f.values
    gap_l = np.empty(len(vals), dtype=bool)
    gap_r = np.empty(len(vals), dtype=bool)
    gap_l[0] = True
    gap_l[1:] = np.abs(vals[1:] - f.left_limits) > tol
    gap_r[-1] = True
    gap_r[:-1] = np.abs(vals[:-1] - f.right_limits) > tol
    det = gap_l & gap_r
    return f.xs[det], vals[det]


def _draw(ax, f: PLFunction, style: dict):
    xs, ys = _piece_paths(f)
    ax.plot(xs, ys, **style)
    px, py = _detached_points(f)
    if len(px):
        ax.plot(px, py, linestyle="none", marker="o",
                markersize=3.5, color=style.get("color", "C0"))


def render_four_panel(f: PLFunction, delta: float, path: str,
                      title: str | None = None) -> None:
    """Write a 2x2 SVG: f dotted under L f, U f, LU f, UL f."""
    cfg = SmootherConfig(delta=delta)
    cache: dict = {}
    results = [apply_word(w, f, cfg, cache) for w in _PANEL_WORDS]

    ymin = min(min(g.values.min(), g.right_limits.min(), g.left_limits.min())
               for g in [f, *results])
    ymax = max(max(g.values.max(), g.right_limits.max(), g.left_limits.max())
               for g in [f, *results])
    pad = 0.05 * max(ymax - ymin, 1e-12)

    with matplotlib.rc_context(_DET_RC):
        fig, axes = plt.subplots(2, 2, figsize=(9.0, 6.4), sharex=True, sharey=True)
        for ax, word, res in zip(axes.flat, _PANEL_WORDS, results):
            _draw(ax, f, {"color": "0.45", "linestyle": ":", "linewidth": 1.1})
            _draw(ax, res, {"color": "C0", "linestyle": "-", "linewidth": 1.5})
            ax.set_title(f"{word} f", fontsize=10)
            ax.grid(True, linewidth=0.4, alpha=0.45)
            ax.set_xlim(f.a, f.b)
            ax.set_ylim(ymin - pad, ymax + pad)
        fig.suptitle(title or f"delta = {delta:g}", fontsize=11)
        fig.tight_layout(rect=(0, 0, 1, 0.96))
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
