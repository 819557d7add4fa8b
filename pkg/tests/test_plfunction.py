"""Exact piecewise-linear representation: evaluation, limits, lattice ops."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lulu.plf import (PLFunction, compose_shift_clamp, leq_excess, pl_max,
                      pl_min, pl_sub, sup_norm_diff)
from lulu.randgen import case_rng, random_plfunction


def test_breakpoints_must_increase():
    with pytest.raises(ValueError):
        PLFunction(np.array([0.0, 1.0, 1.0]), np.zeros(3), np.zeros(2), np.zeros(2))


def test_limit_arrays_must_match_piece_count():
    with pytest.raises(ValueError):
        PLFunction(np.array([0.0, 1.0, 2.0]), np.zeros(3), np.zeros(1), np.zeros(2))


def test_from_points_is_continuous():
    f = PLFunction.from_points([0, 1, 2], [0, 3, 1])
    assert f(0.5) == 1.5
    assert f(1.0) == 3.0
    # limits coincide with the attained value at interior breakpoints
    assert f.right_limits[1] == 3.0 and f.left_limits[0] == 3.0


def test_constant():
    f = PLFunction.constant(2.5, 0.0, 4.0)
    assert f(0.0) == f(1.7) == f(4.0) == 2.5


def test_point_value_vs_piece_interior(step_jump):
    f = step_jump
    assert f(4.999) == 10.0
    assert f(5.0) == 5.0          # attained value at the jump, not either limit
    assert f(5.001) == 0.0


def test_call_outside_domain_raises(vee):
    with pytest.raises(ValueError):
        vee(-0.1)


def test_window_extremes_closed_window(step_jump):
    f = step_jump
    # closed [4, 5]: the attained value 5 at the right end is included
    assert f.window_inf(4.0, 5.0) == 5.0
    assert f.window_sup(4.0, 5.0) == 10.0


def test_window_extremes_open_right_end(step_jump):
    f = step_jump
    # right end open: the attained value is dropped but the left limit
    # from inside the window (10) remains
    assert f.window_inf(4.0, 5.0, hi_open=True) == 10.0


def test_window_extremes_open_left_end(step_jump):
    f = step_jump
    # left end open at the jump: right limit 0 is seen from inside
    assert f.window_inf(5.0, 6.0, lo_open=True) == 0.0
    assert f.window_sup(5.0, 6.0) == 5.0


def test_oscillation(vee):
    assert vee.oscillation(0.0, 10.0) == 5.0
    assert vee.oscillation(4.0, 6.0) == 1.0


def test_restrict_preserves_values(step_jump):
    g = step_jump.restrict(3.0, 5.0)
    assert g.a == 3.0 and g.b == 5.0
    assert g(5.0) == 5.0          # attained value survives at the new endpoint
    assert g(4.5) == 10.0


def test_shift_values_and_neg(vee):
    g = vee.shift_values(2.0)
    assert g(5.0) == 2.0
    h = -vee
    assert h(0.0) == -5.0
    assert sup_norm_diff(-h, vee) == 0.0


def test_compose_shift_clamp_preserves_jump(step_jump):
    # h(x) = f(clamp(x - shift)): shift +2 moves the graph right by 2
    g = compose_shift_clamp(step_jump, 2.0, 0.0, 10.0)
    assert g(7.0) == 5.0          # the attained jump value moves bitwise
    assert g(6.999) == 10.0
    assert g(7.001) == 0.0
    # left of the shifted source domain the edge value extends
    assert g(1.0) == 10.0


def test_compose_shift_clamp_left_edge(vee):
    g = compose_shift_clamp(vee, 3.0, 0.0, 10.0)   # vee(max(x - 3, 0))
    assert g(2.0) == 5.0          # clamped plateau keeps the edge value
    assert g(0.0) == 5.0
    assert g(8.0) == 0.0
    assert g(10.0) == 2.0


def test_pl_min_inserts_crossing():
    f = PLFunction.from_points([0, 10], [0, 10])
    g = PLFunction.from_points([0, 10], [10, 0])
    m = pl_min(f, g)
    assert 5.0 in m.xs
    assert m(5.0) == 5.0
    assert m(2.0) == 2.0 and m(8.0) == 2.0


def test_pl_max_is_dual_of_pl_min(vee, tent):
    hi = pl_max(vee, tent)
    lo = -pl_min(-vee, -tent)
    assert sup_norm_diff(hi, lo) == 0.0


def test_pl_sub_keeps_isolated_point_difference():
    xs = np.array([0.0, 5.0, 10.0])
    f = PLFunction(xs, np.array([0.0, 3.0, 0.0]), np.zeros(2), np.zeros(2))
    g = PLFunction.constant(0.0, 0.0, 10.0)
    d = pl_sub(f, g)
    # the isolated spike must survive subtraction exactly
    assert d(5.0) == 3.0
    assert sup_norm_diff(f, g) == 3.0


def test_sup_norm_diff_sees_jump_limits(step_jump):
    g = PLFunction.constant(0.0, 0.0, 10.0)
    assert sup_norm_diff(step_jump, g) == 10.0


def test_simplified_merges_collinear():
    f = PLFunction.from_points([0, 1, 2, 3], [0, 1, 2, 3]).simplified()
    assert len(f.xs) == 2
    assert f(1.5) == 1.5


def test_leq_excess(vee):
    shifted = vee.shift_values(1.0)
    assert leq_excess(vee, shifted) == -1.0   # signed: f sits 1 below g
    assert leq_excess(shifted, vee) == 1.0


def test_near_coincident_breakpoints_compare_clean():
    # the same function built along two arithmetic paths: breakpoints may
    # drift by ulps; comparison must not report phantom jumps
    t = 0.1 + 0.2            # 0.30000000000000004
    u = 0.3
    f = PLFunction(np.array([0.0, t, 1.0]), np.array([0.0, 2.0, 0.0]),
                   np.array([0.0, 0.0]), np.array([0.0, 0.0]))
    g = PLFunction(np.array([0.0, u, 1.0]), np.array([0.0, 2.0, 0.0]),
                   np.array([0.0, 0.0]), np.array([0.0, 0.0]))
    assert sup_norm_diff(f, g) < 1e-9


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_pl_min_is_lower_bound(seed):
    rng = case_rng(seed, 0)
    f = random_plfunction(rng, max_breakpoints=12)
    g = random_plfunction(rng, max_breakpoints=12)
    m = pl_min(f, g)
    assert leq_excess(m, f) <= 1e-9
    assert leq_excess(m, g) <= 1e-9
    assert sup_norm_diff(m, -pl_max(-f, -g)) <= 1e-12
