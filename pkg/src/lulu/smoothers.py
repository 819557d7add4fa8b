"""LULU smoothers on piecewise-linear functions and their four-element algebra.

The lower smoother L removes upward features narrower than delta (erode then
dilate at radius delta/2); the upper smoother U dually removes downward
features.  Compositions of L and U at a fixed delta generate exactly four
distinct operators {L, U, UL, LU}, closed under composition; `compose`
implements that table and `reduce_word` folds an arbitrary {L,U}-word down to
its table element.  Applying the reduced element must agree with applying the
word letter by letter — that equality is a test target, not an assumption.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .envelopes import dilate, erode
from .plf import PLFunction, pl_sub, sup_norm_diff, sup_norm


class SemigroupElement(enum.Enum):
    L = "L"
    U = "U"
    UL = "UL"   # U after L
    LU = "LU"   # L after U

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class SmootherConfig:
    delta: float
    tolerance: float = 1e-9

    def __post_init__(self):
        if not (self.delta > 0):
            raise ValueError(f"delta must be positive, got {self.delta}")
        if self.tolerance < 0:
            raise ValueError("tolerance must be non-negative")


def lower_smoother(f: PLFunction, cfg: SmootherConfig) -> PLFunction:
    """L: dilate(erode(f, delta/2), delta/2); satisfies L(f) <= f."""
    r = cfg.delta / 2.0
    return dilate(erode(f, r), r)


def upper_smoother(f: PLFunction, cfg: SmootherConfig) -> PLFunction:
    """U: erode(dilate(f, delta/2), delta/2); satisfies U(f) >= f."""
    r = cfg.delta / 2.0
    return erode(dilate(f, r), r)


def apply(e: SemigroupElement, f: PLFunction, cfg: SmootherConfig) -> PLFunction:
    if e is SemigroupElement.L:
        return lower_smoother(f, cfg)
    if e is SemigroupElement.U:
        return upper_smoother(f, cfg)
    if e is SemigroupElement.UL:
        return upper_smoother(lower_smoother(f, cfg), cfg)
    return lower_smoother(upper_smoother(f, cfg), cfg)


# e1 composed after e2; rows are e1, columns are e2.
_E = SemigroupElement
_TABLE = {
    (_E.L, _E.L): _E.L,   (_E.L, _E.U): _E.LU,  (_E.L, _E.UL): _E.UL,  (_E.L, _E.LU): _E.LU,
    (_E.U, _E.L): _E.UL,  (_E.U, _E.U): _E.U,   (_E.U, _E.UL): _E.UL,  (_E.U, _E.LU): _E.LU,
    (_E.UL, _E.L): _E.UL, (_E.UL, _E.U): _E.LU, (_E.UL, _E.UL): _E.UL, (_E.UL, _E.LU): _E.LU,
    (_E.LU, _E.L): _E.UL, (_E.LU, _E.U): _E.LU, (_E.LU, _E.UL): _E.UL, (_E.LU, _E.LU): _E.LU,
}


def compose(e1: SemigroupElement, e2: SemigroupElement) -> SemigroupElement:
    """Table entry for e1 ∘ e2 (e2 applied first)."""
    return _TABLE[(e1, e2)]


def reduce_word(word: str) -> SemigroupElement:
    """Fold a left-to-right operator word ("ULU" = U∘L∘U, U applied... last
    letter first) to its semigroup element."""
    if not word or any(ch not in "LU" for ch in word):
        raise ValueError(f"word must be a nonempty string over {{L,U}}, got {word!r}")
    acc = _E[word[-1]]
    for ch in reversed(word[:-1]):
        acc = compose(_E[ch], acc)
    return acc


def apply_word(word: str, f: PLFunction, cfg: SmootherConfig,
               cache: dict | None = None) -> PLFunction:
    """Apply a word letter by letter, rightmost letter first.

    `cache` maps word suffixes to results so families of words sharing
    suffixes (every word of length <= 4, say) cost one smoother application
    each instead of one per letter.
    """
    if not word or any(ch not in "LU" for ch in word):
        raise ValueError(f"word must be a nonempty string over {{L,U}}, got {word!r}")
    if cache is None:
        cache = {}
    out = f
    for k in range(len(word) - 1, -1, -1):
        suffix = word[k:]
        if suffix in cache:
            out = cache[suffix]
            continue
        out = apply(_E[word[k]], out, cfg)
        cache[suffix] = out
    return out


def delta_absorption_check(f: PLFunction, delta1: float, delta2: float,
                           tol: float = 1e-9) -> bool:
    """L_d1(L_d2(f)) == L_max(d1,d2)(f), and dually for U."""
    c1, c2 = SmootherConfig(delta1), SmootherConfig(delta2)
    cm = SmootherConfig(max(delta1, delta2))
    okL = sup_norm_diff(lower_smoother(lower_smoother(f, c2), c1),
                        lower_smoother(f, cm)) <= tol
    okU = sup_norm_diff(upper_smoother(upper_smoother(f, c2), c1),
                        upper_smoother(f, cm)) <= tol
    return okL and okU


def coidempotence_residual(f: PLFunction, cfg: SmootherConfig) -> tuple[float, float]:
    """(||L(f - Lf)||, ||U(f - Uf)||); both vanish when L and U are
    co-idempotent on f."""
    lf = lower_smoother(f, cfg)
    uf = upper_smoother(f, cfg)
    res_l = sup_norm(lower_smoother(pl_sub(f, lf), cfg))
    res_u = sup_norm(upper_smoother(pl_sub(f, uf), cfg))
    return res_l, res_u
