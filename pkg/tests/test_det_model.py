from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fbic.det_model import (
    ALL_STATES,
    CHARACTERIZED,
    UNCHARACTERIZED,
    DetParams,
    FeedbackState,
    LengthMismatch,
    Uncharacterized,
    canonical,
    channel_output,
    corner_gain_points,
    det_outer_polytope,
    det_sum_capacity,
)
from fbic.rate_region import contains, is_subset, max_sum_rate
from oracles import matrix_channel


def vset(p):
    return {(v.r1, v.r2) for v in p.vertices}


def planes(p):
    return {(h.a, h.b, h.c) for h in p.planes}


# -- feedback states ------------------------------------------------------------

def test_state_parsing_and_predicates():
    f = FeedbackState.parse("1000")
    assert str(f) == "1000" and f.has_direct and not f.is_cross_only
    assert FeedbackState.parse("0110").is_cross_only
    assert not FeedbackState.parse("0000").any_link
    assert str(FeedbackState.parse("1100").mirror()) == "0011"
    assert FeedbackState.parse(f) is f
    for bad in ("100", "10a0", "11111"):
        with pytest.raises(ValueError):
            FeedbackState.parse(bad)


def test_sixteen_states_split():
    assert len(ALL_STATES) == 16
    assert len(UNCHARACTERIZED) == 4 and len(CHARACTERIZED) == 12


def test_canonical_families():
    assert canonical("0001") == ("single", True)
    assert canonical("1110") == ("one_side", False)
    assert canonical("0111") == ("one_side", True)
    assert canonical("1011") == ("both_direct", False)
    for s in ("0010", "1010", "0100", "0101"):
        with pytest.raises(Uncharacterized, match="uncharacterized feedback state"):
            canonical(s)


# -- channel ----------------------------------------------------------------------

def test_channel_n3_m1_structure():
    x1, x2 = (1, 0, 1), (1, 1, 0)
    y1, y2 = channel_output(x1, x2, DetParams(3, 1))
    assert y1 == (1, 0, 1 ^ 1)
    assert y2 == (1, 1, 0 ^ 1)


def test_channel_without_interference_is_identity():
    x1, x2 = (1, 0, 1, 1), (0, 1, 1, 0)
    assert channel_output(x1, x2, DetParams(4, 0)) == (x1, x2)


def test_channel_length_mismatch():
    with pytest.raises(LengthMismatch):
        channel_output((1, 0), (1, 0, 1), DetParams(3, 1))


def test_params_validation():
    assert DetParams(3, 5).q == 5
    with pytest.raises(ValueError):
        DetParams(-1, 2)
    with pytest.raises(ValueError):
        DetParams(2.5, 1)


bits = st.integers(0, 1)


@st.composite
def channel_case(draw):
    n, m = draw(st.integers(0, 8)), draw(st.integers(0, 8))
    q = max(n, m)
    vec = st.lists(bits, min_size=q, max_size=q).map(tuple)
    return n, m, draw(vec), draw(vec), draw(vec), draw(vec)


@settings(max_examples=300, deadline=None)
@given(channel_case())
def test_channel_matches_matrix_oracle_and_is_linear(case):
    n, m, a1, a2, b1, b2 = case
    p = DetParams(n, m)
    assert channel_output(a1, a2, p) == matrix_channel(a1, a2, n, m)
    xor = lambda u, v: tuple(i ^ j for i, j in zip(u, v))
    ya, yb = channel_output(a1, a2, p), channel_output(b1, b2, p)
    yab = channel_output(xor(a1, b1), xor(a2, b2), p)
    assert yab == (xor(ya[0], yb[0]), xor(ya[1], yb[1]))


def test_channel_random_n5_m3_against_oracle():
    rng = random.Random(5)
    for _ in range(200):
        x1 = tuple(rng.getrandbits(1) for _ in range(5))
        x2 = tuple(rng.getrandbits(1) for _ in range(5))
        assert channel_output(x1, x2, DetParams(5, 3)) == matrix_channel(x1, x2, 5, 3)


# -- regions ----------------------------------------------------------------------

def test_single_link_region_n5_m3():
    p = det_outer_polytope("1000", DetParams(5, 3))
    assert planes(p) == {(1, 0, 5), (0, 1, 5), (1, 1, 7), (2, 1, 10)}
    assert vset(p) == {(0, 0), (0, 5), (2, 5), (3, 4), (5, 0)}


def test_both_direct_without_interference_is_box():
    p = det_outer_polytope("1001", DetParams(5, 0))
    assert vset(p) == {(0, 0), (5, 0), (5, 5), (0, 5)}


def test_no_feedback_n3_m1():
    p = det_outer_polytope("0000", DetParams(3, 1))
    assert not contains(p, (2, 3), 0)
    assert vset(p) == {(0, 0), (3, 0), (3, 1), (1, 3), (0, 3)}
    # the sum bound min(S, 2*max(m, n-m)) = min(5, 4) = 4 is active here
    assert max_sum_rate(p) == 4


def test_no_feedback_excludes_feedback_corner():
    assert not contains(det_outer_polytope("0000", DetParams(5, 3)), (3, 4), 0)


def test_degenerate_zero_levels():
    for f in CHARACTERIZED:
        assert vset(det_outer_polytope(f, DetParams(0, 0))) == {(0, 0)}


def test_uncharacterized_regions_raise():
    for s in ("0010", "1010", "0100", "0101"):
        with pytest.raises(Uncharacterized):
            det_outer_polytope(s, DetParams(5, 3))


def test_sum_capacity_examples():
    assert det_sum_capacity("1000", DetParams(5, 3)) == 7
    assert det_sum_capacity("0110", DetParams(1, 3)) == 2
    assert det_sum_capacity("1111", DetParams(4, 4)) == 4


def test_sum_capacity_known_for_open_regions():
    # cross-only states keep the cross-only formula even where the region is open
    assert det_sum_capacity("0010", DetParams(1, 3)) == 2
    assert det_sum_capacity("1010", DetParams(5, 3)) == 7


def test_corner_gain_examples():
    assert set(corner_gain_points("1000", DetParams(5, 3))) == {(2, 5), (3, 4)}
    assert corner_gain_points("1000", DetParams(4, 0)) == []
    assert (0, 4) in corner_gain_points("1001", DetParams(3, 4))


levels = st.integers(0, 12)


@settings(max_examples=200, deadline=None)
@given(levels, levels)
def test_feedback_ordering_and_identities(n, m):
    p = DetParams(n, m)
    r = {s: det_outer_polytope(s, p) for s in ("0000", "1000", "1100", "1001", "1111")}
    assert is_subset(r["0000"], r["1000"], 0)
    assert is_subset(r["1000"], r["1100"], 0)
    assert is_subset(r["1100"], r["1111"], 0)
    assert vset(r["1001"]) == vset(r["1111"])


@settings(max_examples=200, deadline=None)
@given(levels, levels)
def test_mirror_states_reflect(n, m):
    p = DetParams(n, m)
    for f in CHARACTERIZED:
        a, b = det_outer_polytope(f, p), det_outer_polytope(f.mirror(), p)
        assert vset(b) == {(y, x) for x, y in vset(a)}


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 12), st.integers(1, 12))
def test_single_link_strictness(n, m):
    if 3 * m < 2 * n:
        c1000 = det_outer_polytope("1000", DetParams(n, m))
        assert not contains(c1000, (n, n - m), 0)
