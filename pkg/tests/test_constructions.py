from fractions import Fraction

import pytest
from hypothesis import assume, given, settings

from rctarski import constructions as C
from rctarski.geom import B, Point, collinear3, dist2, orient
from rctarski.primitives import Reason, Undefined
from rctarski.verify import oracle

from conftest import points

O = Point(0, 0)
F = Fraction


def pt(x, y):
    return Point(F(x), F(y))


def test_e_neq_and_e2():
    for x in (O, pt(1, 0), pt("-1/2", 3)):
        assert C.e_neq(x) != x
    e = C.e2(pt(0, 0), pt(1, 0), pt(2, 0))
    assert e not in (pt(0, 0), pt(1, 0), pt(2, 0))


def test_midpoint_iso():
    y, z = pt(-2, 0), pt(2, 0)
    m = C.gupta_midpoint_iso(pt(0, 3), y, z)
    assert m == O and C.post_midpoint_iso(pt(0, 3), y, z, m)


def test_density():
    a, c = pt(0, 0), pt(4, 0)
    b = C.density_point(a, c, pt(1, 2))
    assert C.post_density(a, c, pt(1, 2), b)


def test_pasch_variants():
    a, b, c = pt(0, 0), pt(4, 0), pt(0, 4)
    p, q = pt(0, 2), pt(2, 2)
    x = C.continuous_pasch(a, c, p, b, q)
    assert C.post_continuous_pasch(a, c, p, b, q, x)
    p2 = pt(0, 6)  # beyond c
    x2 = C.outer_pasch(a, c, p2, b, q)
    assert C.post_continuous_pasch(a, c, p2, b, q, x2)


@pytest.mark.parametrize("p,a,b", [
    (pt(1, 3), pt(0, 0), pt(4, 0)),
    (pt(-2, 1), pt(1, 1), pt(3, 2)),
    (pt("1/2", 5), pt(0, -1), pt(1, 3)),
])
def test_feet_agree_with_oracle(p, a, b):
    want = oracle("foot", p, a, b)
    assert C.dropped_perp(p, a, b) == want
    assert C.gupta_perp(a, b, p) == want
    foot, head = C.uniform_perp(p, a, b, p)
    assert foot == want
    assert C.post_uniform_perp(p, a, b, p, foot, head)


def test_uniform_perp_on_line_returns_x():
    a, b, w = pt(0, 0), pt(3, 1), pt(0, 5)
    x = pt(6, 2)
    foot, head = C.uniform_perp(x, a, b, w)
    assert foot == x
    assert C.post_uniform_perp(x, a, b, w, foot, head)


def test_erected_perp_postcondition():
    a, l1, l2, s = pt(1, 0), pt(0, 0), pt(4, 0), pt(2, 3)
    p, r = C.erected_perp(a, l1, l2, s)
    assert C.post_erected_perp(a, l1, l2, s, p, r)
    assert orient(l1, l2, p) == -1
    assert C.perp(a, l2, s) != a and collinear3(l1, l2, C.wit(a, l2, s))


def test_short_erected_perp():
    a, l1, l2, c = pt(1, 0), pt(0, 0), pt(4, 0), pt(2, 1)
    e = C.short_erected_perp(a, l1, l2, c)
    assert C.post_short_erected_perp(a, l1, l2, c, e)
    # c straight above a: the circle is tangent, so the two-step recipe has no b
    assert isinstance(C.short_erected_perp(a, l1, l2, pt(1, 2)), Undefined)


def test_midpoint_exact():
    a, b = pt(0, 0), pt(2, 0)
    assert C.midpoint(a, b, pt(0, 1)) == pt(1, 0)
    assert C.midpoint(a, b, pt(5, -3)) == pt(1, 0)
    assert C.midpoint(a, a, pt(0, 1)) == Undefined(Reason.NullSegment)


def test_reflection_is_involution():
    a, b, s = pt(0, 0), pt(2, 1), pt(0, 4)
    x = pt(1, 3)
    y = C.uniform_reflect(x, a, b, s)
    assert C.post_reflect(x, a, b, s, y)
    assert C.uniform_reflect(y, a, b, s) == x
    on = pt(4, 2)
    assert C.uniform_reflect(on, a, b, s) == on


def test_parallel_and_offline():
    a, b = pt(0, 0), pt(3, 1)
    k = C.parallel_through(pt(1, 4), a, b, pt(0, -2))
    assert C.post_parallel(pt(1, 4), a, b, pt(0, -2), k)
    assert not collinear3(a, b, C.point_off_line(a, b))
    assert C.point_off_line(a, a) == Undefined(Reason.NullSegment)


def test_point_on_k_not_l_and_il_elim():
    a, b, q, r = pt(0, 0), pt(4, 0), pt(1, -1), pt(3, 5)
    e = C.point_on_k_not_l(a, b, q, r)
    assert C.post_point_on_k_not_l(a, b, q, r, e)
    assert C.il_elim(a, b, q, r) == oracle("lineLine", a, b, q, r)
    assert C.point_on_k_not_l(a, b, pt(0, 1), pt(4, 1)).reason is Reason.NoIntersection
    assert C.point_on_k_not_l(a, b, pt(1, 0), pt(2, 0)).reason is Reason.CoincidentLines


def test_circle_circle_matches_oracle():
    s, c_on, t, k_on, r = pt(0, 0), pt(2, 0), pt(2, 0), pt(0, 0), pt(0, 1)
    y, z = C.circle_circle(s, c_on, t, k_on, r)
    assert (y, z) == oracle("circleCircle", s, c_on, t, k_on)
    assert C.post_circle_circle(s, c_on, t, k_on, r, y, z)
    # swapping the circles swaps the oriented pair
    assert C.circle_circle(t, k_on, s, c_on, r) == (z, y)


def test_circle_circle_tangent_and_null():
    y, z = C.circle_circle(pt(0, 0), pt(1, 0), pt(3, 0), pt(1, 0), pt(0, 1))
    assert y == z == pt(1, 0)
    # a null circle lying on the other circle
    y, z = C.circle_circle(pt(0, 0), pt(2, 0), pt(2, 0), pt(2, 0), pt(0, 1))
    assert y == z == pt(2, 0)
    miss = C.circle_circle(pt(0, 0), pt(1, 0), pt(5, 0), pt(4, 0), pt(0, 1))
    assert miss[0].reason is Reason.NoIntersection
    assert C.circle_circle(O, pt(1, 0), O, pt(2, 0), pt(0, 1))[0].reason is Reason.NullSegment


def test_radical_axis():
    s, c_on, t, k_on, r = pt(0, 0), pt(3, 0), pt(4, 0), pt(4, 1), pt(1, 1)
    f, h = C.radical_axis(s, c_on, t, k_on, r)
    assert C.post_radical_axis(s, c_on, t, k_on, r, f, h)
    assert C.radical_axis(s, s, t, t, r)[0].reason is Reason.BadArgument


def test_strict_through_constructions():
    u = Undefined(Reason.Collinear)
    assert C.midpoint(u, O, O) is u
    assert C.uniform_perp(O, u, O, O) == (u, u)
    assert C.circle_circle(O, O, O, O, u) == (u, u)


# properties -----------------------------------------------------------------


@settings(max_examples=15)
@given(points(), points(), points())
def test_midpoint_is_coordinate_midpoint(a, b, s):
    assume(a != b and not collinear3(a, b, s))
    m = C.midpoint(a, b, s)
    assert m == oracle("midpoint", a, b)
    assert C.post_midpoint(a, b, s, m)


@settings(max_examples=15)
@given(points(), points(), points())
def test_dropped_equals_gupta(p, a, b):
    assume(a != b and not collinear3(a, b, p))
    assert C.dropped_perp(p, a, b) == C.gupta_perp(a, b, p) == oracle("foot", p, a, b)


@settings(max_examples=10)
@given(points(), points(), points(), points())
def test_reflection_preserves_betweenness(x, z, a, s):
    b = a + Point(1, 2)
    assume(x != z and not collinear3(a, b, s))
    y = x + (z - x).scale(F(1, 3))
    rx, ry, rz = (C.uniform_reflect(v, a, b, s) for v in (x, y, z))
    assert B(rx, ry, rz)
    assert dist2(rx, rz) == dist2(x, z)
