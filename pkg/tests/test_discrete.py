"""Discrete sequence smoothers: methods agree, duality, embedding."""

import numpy as np
import pytest

from lulu.discrete import (BoundaryPolicy, Signal, apply_discrete_word,
                           discrete_lower, discrete_upper, embed_as_step)
from lulu.oracle import brute_discrete_lower, brute_discrete_upper
from lulu.plf import sup_norm_diff
from lulu.randgen import case_rng, random_signal

_POLICIES = [BoundaryPolicy.CLAMP, BoundaryPolicy.REFLECT,
             BoundaryPolicy.EXTEND_CONSTANT]


def test_lower_removes_isolated_spike():
    s = Signal(np.array([0.0, 0.0, 5.0, 0.0, 0.0]))
    out = discrete_lower(s, 1)
    assert np.array_equal(out.samples, np.zeros(5))


def test_upper_keeps_isolated_spike():
    s = Signal(np.array([0.0, 0.0, 5.0, 0.0, 0.0]))
    out = discrete_upper(s, 1)
    assert np.array_equal(out.samples, s.samples)


def test_signal_validation():
    with pytest.raises(ValueError):
        Signal(np.array([]))
    with pytest.raises(ValueError):
        Signal(np.array([1.0]), spacing=0.0)
    with pytest.raises(ValueError):
        Signal(np.array([np.nan, 1.0]))


def test_n_and_method_validation():
    s = Signal(np.arange(5.0))
    with pytest.raises(ValueError):
        discrete_lower(s, 0)
    with pytest.raises(ValueError):
        discrete_lower(s, 1, method="fancy")


@pytest.mark.parametrize("policy", _POLICIES)
def test_methods_agree(policy):
    rng = case_rng(101, 0)
    for i in range(40):
        s = random_signal(rng, max_len=80)
        n = int(rng.integers(1, 12))
        kw = {"fill": float(rng.uniform(-3, 3))}
        outs = [discrete_lower(s, n, policy, method=m, **kw).samples
                for m in ("blocked", "deque", "naive")]
        assert np.array_equal(outs[0], outs[1]), f"case {i}"
        assert np.array_equal(outs[0], outs[2]), f"case {i}"


@pytest.mark.parametrize("policy", _POLICIES)
def test_matches_brute_force(policy):
    rng = case_rng(102, 1)
    for i in range(25):
        s = random_signal(rng, max_len=40)
        n = int(rng.integers(1, 8))
        fill = float(rng.uniform(-3, 3))
        fast = discrete_lower(s, n, policy, fill=fill).samples
        slow = brute_discrete_lower(s.samples, n, policy=policy.value, fill=fill)
        assert np.array_equal(fast, slow), f"case {i}"
        fast_u = discrete_upper(s, n, policy, fill=fill).samples
        slow_u = brute_discrete_upper(s.samples, n, policy=policy.value, fill=fill)
        assert np.array_equal(fast_u, slow_u), f"case {i}"


def test_duality():
    rng = case_rng(103, 2)
    for policy in _POLICIES:
        s = random_signal(rng, max_len=60)
        n = 3
        fill = 1.25
        neg = Signal(-s.samples, s.spacing)
        lhs = discrete_upper(s, n, policy, fill=fill).samples
        rhs = -discrete_lower(neg, n, policy, fill=-fill).samples
        assert np.array_equal(lhs, rhs)


def test_idempotence():
    rng = case_rng(104, 3)
    s = random_signal(rng, max_len=60)
    once = discrete_lower(s, 2)
    twice = discrete_lower(once, 2)
    assert np.array_equal(once.samples, twice.samples)


def test_apply_discrete_word():
    s = Signal(np.array([0.0, 0.0, 5.0, 0.0, 0.0]))
    lu = apply_discrete_word("LU", s, 1)
    explicit = discrete_lower(discrete_upper(s, 1), 1)
    assert np.array_equal(lu.samples, explicit.samples)
    with pytest.raises(ValueError):
        apply_discrete_word("LZ", s, 1)


def test_short_signal_edges():
    s = Signal(np.array([3.0]))
    for policy in _POLICIES:
        out = discrete_lower(s, 2, policy, fill=-1.0)
        assert len(out.samples) == 1


def test_embed_as_step():
    s = Signal(np.array([1.0, 3.0, 2.0]), spacing=0.5)
    f = embed_as_step(s)
    assert (f.a, f.b) == (0.0, 1.5)
    assert f(0.1) == 1.0
    assert f(0.5) == 3.0          # right-continuous at cell boundaries
    assert f(0.4999) == 1.0
    assert f(1.2) == 2.0


def test_embed_interior_correspondence():
    # away from the boundary, discrete L_n on the samples equals the
    # continuous smoother at delta = n*spacing on the step embedding
    # (at the ends index clamping and window clipping genuinely differ)
    from lulu.smoothers import SmootherConfig, lower_smoother
    for i in range(5):
        rng = case_rng(105, i)
        s = Signal(rng.uniform(-5, 5, 24), spacing=0.5)
        n = int(rng.integers(1, 4))
        lhs = embed_as_step(discrete_lower(s, n))
        rhs = lower_smoother(embed_as_step(s), SmootherConfig(n * s.spacing))
        lo = lhs.a + (n + 1) * s.spacing
        hi = lhs.b - (n + 1) * s.spacing
        assert sup_norm_diff(lhs.restrict(lo, hi), rhs.restrict(lo, hi)) == 0.0
