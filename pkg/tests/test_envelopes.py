"""Exact erosion/dilation on piecewise-linear functions."""

import numpy as np
import pytest

from lulu.envelopes import dilate, erode
from lulu.plf import PLFunction, leq_excess, sup_norm_diff
from lulu.randgen import case_rng, random_plfunction


def test_erode_isolated_point(step_jump):
    # min over [x-1, x+1]: the attained value 5 at the jump point is only
    # reachable while the window still contains x=5 as an interior/endpoint
    # with its value included; left of 4 the window sees only the level 10
    e = erode(step_jump, 1.0)
    assert e(3.999) == 10.0
    assert e(4.0) == 5.0           # window [3, 5]: right end closed keeps the value
    assert e(4.001) == 0.0         # window now contains points right of the jump
    assert e(0.0) == 10.0
    assert e(9.0) == 0.0


def test_erode_strict_exclusion_at_window_right_end(step_jump):
    # at x = 4 the window is [3, 5]; the right limit at 5 (value 0) lies
    # outside the window and must NOT be seen
    e = erode(step_jump, 1.0)
    assert e(4.0) == 5.0


def test_erode_vee_exact_shape(vee):
    e = erode(vee, 1.0)
    assert e(5.0) == 0.0
    assert e(4.0) == 0.0 and e(6.0) == 0.0
    assert e(0.0) == 4.0           # window [0, 1] clipped at the boundary
    assert e(10.0) == 4.0
    assert e(2.0) == 2.0


def test_dilate_vee_exact_shape(vee):
    d = dilate(vee, 1.0)
    assert d(0.0) == 5.0
    assert d(1.0) == 5.0           # window [0, 2] still reaches the corner value 5
    assert d(2.0) == 4.0
    assert d(5.0) == 1.0


def test_duality(box_pulse, step_jump):
    for f in (box_pulse, step_jump):
        lhs = dilate(f, 0.7)
        rhs = -erode(-f, 0.7)
        assert sup_norm_diff(lhs, rhs) == 0.0


def test_semigroup_exact(step_jump):
    one = erode(step_jump, 1.0)
    two = erode(erode(step_jump, 0.4), 0.6)
    assert sup_norm_diff(one, two) <= 1e-9


def test_erode_dilate_erode_is_erode(box_pulse, step_jump):
    for f in (box_pulse, step_jump):
        e = erode(f, 0.5)
        back = erode(dilate(e, 0.5), 0.5)
        assert sup_norm_diff(back, e) <= 1e-9


def test_erode_below_dilate_above(tent):
    e = erode(tent, 1.3)
    d = dilate(tent, 1.3)
    assert leq_excess(e, tent) <= 1e-12
    assert leq_excess(tent, d) <= 1e-12


def test_radius_must_be_positive(vee):
    with pytest.raises(ValueError):
        erode(vee, 0.0)
    with pytest.raises(ValueError):
        dilate(vee, -1.0)


def test_erode_monotone_in_radius():
    rng = case_rng(11, 0)
    f = random_plfunction(rng, max_breakpoints=15, jump_prob=0.3)
    small = erode(f, 0.5)
    big = erode(f, 1.5)
    assert leq_excess(big, small) <= 1e-9


def test_pulse_erodes_to_zero(box_pulse):
    # window width 2*0.5 exceeds the pulse width 0.4, so every window
    # reaches the floor
    e = erode(box_pulse, 0.5)
    assert e.value_bound() == 0.0
