"""Derived ruler-and-compass constructions built from the primitive operators.

Lines are passed as two determining points, as in the script language.  Every
construction is strict: an undefined argument yields that undefined value,
and an unmet hypothesis yields ``Undefined`` with a reason.
"""

from __future__ import annotations

from .geom import (
    B,
    T,
    Point,
    collinear3,
    cross,
    dist2,
    orient,
    power_of_point,
    right_angle,
    CircleRef,
)
from .primitives import (
    ALPHA,
    BETA,
    Reason,
    Undefined,
    PartialPoint,
    center,
    ext,
    first_undefined,
    il,
    ilc,
    ip,
    strict,
)
from .trace import traced

Pair = tuple


def _bad(reason: Reason = Reason.BadArgument) -> Undefined:
    return Undefined(reason)


def _undef_pair(u: Undefined) -> Pair:
    return (u, u)


# ---------------------------------------------------------------------------
# extension helpers


@traced("e")
@strict()
def e_neq(x: Point) -> PartialPoint:
    """A point different from x: extend alpha-beta by the segment alpha-x."""
    return ext(ALPHA, BETA, ALPHA, x)


@traced("e2")
@strict()
def e2(a: Point, b: Point, c: Point) -> PartialPoint:
    """A point d with |ad| = |bc|, defined even when nothing is known about a."""
    return ext(e_neq(a), a, b, c)


# ---------------------------------------------------------------------------
# midpoints and Pasch variants


@traced("midpointIso")
@strict()
def gupta_midpoint_iso(x: Point, y: Point, z: Point) -> PartialPoint:
    """Midpoint of yz from an apex x with |xy| = |xz|, by two inner Pasch steps."""
    if y == z:
        return _bad(Reason.NullSegment)
    if collinear3(x, y, z):
        return _bad(Reason.Collinear)
    if dist2(x, y) != dist2(x, z):
        return _bad()
    t = ext(x, y, ALPHA, BETA)
    u = ext(x, z, ALPHA, BETA)
    v = ip(u, z, x, t, y)
    return ip(x, y, t, z, v)


@traced("density")
@strict()
def density_point(a: Point, c: Point, p: Point) -> PartialPoint:
    """A point strictly between a and c, using p off their line."""
    if a == c:
        return _bad(Reason.NullSegment)
    if collinear3(a, c, p):
        return _bad(Reason.Collinear)
    r = ext(a, p, a, c)
    s = ext(r, c, a, c)
    return ip(s, c, r, a, p)


def _outer_pasch(a, c, p, b, q) -> PartialPoint:
    # B(a,c,p), B(c,q,b): the line aq leaves the triangle through segment bp
    x = il(a, q, b, p)
    if isinstance(x, Undefined) or not (B(b, x, p) and B(a, q, x)):
        return _bad()
    return x


@traced("cpasch")
@strict()
def continuous_pasch(a: Point, c: Point, p: Point, b: Point, q: Point) -> PartialPoint:
    """Meet of bp with ray aq, whichever side of c the point p lies on."""
    if a == c:
        return _bad(Reason.NullSegment)
    if p == a or not (T(a, p, c) or T(a, c, p)):
        return _bad()
    if collinear3(a, c, b):
        return _bad(Reason.Collinear)
    if not B(c, q, b):
        return _bad()
    d = ext(a, c, a, p)
    r = _outer_pasch(a, c, d, b, q)
    return ip(a, p, d, b, r)


@traced("op")
@strict()
def outer_pasch(a: Point, c: Point, p: Point, b: Point, q: Point) -> PartialPoint:
    """Outer Pasch: the B(a,c,p) branch of continuous Pasch."""
    if not B(a, c, p):
        return _bad()
    return continuous_pasch(a, c, p, b, q)


# ---------------------------------------------------------------------------
# perpendiculars


def _line_check(a: Point, b: Point):
    return _bad(Reason.NullSegment) if a == b else None


@traced("dperp")
@strict()
def dropped_perp(p: Point, a: Point, b: Point) -> PartialPoint:
    """Foot of the perpendicular from p to Line(a,b), via a big circle about p."""
    if a == b:
        return _bad(Reason.NullSegment)
    if collinear3(a, b, p):
        return _bad()
    r = ext(p, a, a, b)
    x, y = ilc(a, b, p, r)
    return gupta_midpoint_iso(p, x, y)


@traced("gperp")
@strict()
def gupta_perp(a: Point, b: Point, c: Point) -> PartialPoint:
    """Circle-free dropped perpendicular from c to Line(a,b)."""
    if a == b:
        return _bad(Reason.NullSegment)
    if collinear3(a, b, c):
        return _bad(Reason.Collinear)
    y = ext(b, a, a, c)
    p = gupta_midpoint_iso(a, c, y)
    q = ext(c, y, a, c)
    z = ext(a, y, p, y)
    q2 = ext(q, z, q, z)
    c2 = ext(q2, y, y, c)
    return gupta_midpoint_iso(y, c, c2)


@traced("eperp")
@strict(pair=True)
def erected_perp(a: Point, l1: Point, l2: Point, s: Point) -> Pair:
    """Erect a perpendicular to L = Line(l1,l2) at a, away from s.

    Returns (p, r): pa is perpendicular to L, and r is on L with B(p, r, s).
    """
    if l1 == l2:
        return _undef_pair(_bad(Reason.NullSegment))
    if not collinear3(l1, l2, a) or collinear3(l1, l2, s):
        return _undef_pair(_bad())
    # starter: b on L with ab = as, c the midpoint of sb (so ca is not perpendicular to L)
    b = ilc(l1, l2, a, s)[1]
    c = gupta_midpoint_iso(a, s, b)
    x = gupta_perp(l1, l2, c)
    d = ext(c, x, c, x)
    e = ext(c, a, c, a)
    p = gupta_midpoint_iso(a, d, e)
    # crossbar in triangle cde gives t on xa with B(c, t, p)
    r1 = ip(d, p, e, c, a)
    t = ip(c, x, d, a, r1)
    # s lies beyond c from b, so the crossing of ps with L comes from outer Pasch
    r = outer_pasch(b, c, s, p, t)
    return p, r


def perp(a: Point, b: Point, s: Point) -> PartialPoint:
    """A point p with pa perpendicular to Line(a,b), on the far side from s."""
    return erected_perp(a, a, b, s)[0]


def wit(a: Point, b: Point, s: Point) -> PartialPoint:
    """The witness on Line(a,b) between perp(a,b,s) and s."""
    return erected_perp(a, a, b, s)[1]


@traced("eperp2")
@strict()
def short_erected_perp(a: Point, l1: Point, l2: Point, c: Point) -> PartialPoint:
    """Two-step erected perpendicular at a: the circle about c through a, then its antipode."""
    if l1 == l2:
        return _bad(Reason.NullSegment)
    if not collinear3(l1, l2, a) or collinear3(l1, l2, c):
        return _bad()
    y, z = ilc(l1, l2, c, a)
    b = z if y == a else y
    if b == a:
        # the circle is tangent to L at a, i.e. ca is perpendicular to L
        return _bad()
    return ilc(b, c, c, a)[1]


@traced("midpoint")
@strict()
def midpoint(a: Point, b: Point, s: Point) -> PartialPoint:
    """Midpoint of ab from erected perpendiculars and two Pasch steps."""
    p = perp(a, b, s)
    # w = Perp(b,a,p) and v = wit(b,a,p) come from one erection
    w, v = erected_perp(b, b, a, p)
    q = ext(b, w, a, p)
    t = outer_pasch(b, w, q, p, v)
    r = ext(ext(w, b, w, b), b, a, p)
    return ip(b, r, q, p, t)


@traced("uperp")
@strict(pair=True)
def uniform_perp(x: Point, a: Point, b: Point, w: Point) -> Pair:
    """Perpendicular to Line(a,b) through x with no case split on x being on the line.

    Returns (foot, head): foot on the line, head off it, Line(foot, head) through x.
    """
    if a == b:
        return _undef_pair(_bad(Reason.NullSegment))
    if collinear3(a, b, w):
        return _undef_pair(_bad())
    c = ext(a, b, a, x)
    r = e2(x, a, c)
    p, q = ilc(a, b, x, r)
    foot = midpoint(p, q, w)
    head = erected_perp(foot, a, b, w)[0]
    return foot, head


def project(x: Point, a: Point, b: Point, w: Point) -> PartialPoint:
    return uniform_perp(x, a, b, w)[0]


@traced("ureflect")
@strict()
def uniform_reflect(x: Point, a: Point, b: Point, s: Point) -> PartialPoint:
    """Reflection of x in Line(a,b): the half-turn of x about its projection."""
    f = project(x, a, b, s)
    if isinstance(f, Undefined):
        return f
    return f + (f - x)


@traced("offline")
@strict()
def point_off_line(a: Point, b: Point) -> PartialPoint:
    """a + rot90(b - a), a point not on Line(a,b)."""
    if a == b:
        return _bad(Reason.NullSegment)
    return a + (b - a).rot90()


@traced("parallel")
@strict()
def parallel_through(p: Point, a: Point, b: Point, s: Point) -> PartialPoint:
    """A second point k of the line through p parallel to Line(a,b)."""
    f, h = uniform_perp(p, a, b, s)
    return erected_perp(p, f, h, point_off_line(f, h))[0]


@traced("onknotl")
@strict()
def point_on_k_not_l(a: Point, b: Point, q: Point, r: Point) -> PartialPoint:
    """A point of K = Line(q,r) not on L = Line(a,b), for meeting distinct lines."""
    if a == b or q == r:
        return _bad(Reason.NullSegment)
    if cross(b - a, r - q).sign() == 0:
        if collinear3(a, b, q):
            return _bad(Reason.CoincidentLines)
        return _bad(Reason.NoIntersection)
    u = erected_perp(q, q, r, point_off_line(q, r))[0]
    v = ext(u, q, u, q)
    c0 = point_off_line(a, b)
    f, h = uniform_perp(u, a, b, c0)
    w = uniform_reflect(u, a, b, c0)
    z = ext(ALPHA, BETA, u, w)
    d = ilc(f, h, u, e2(u, ALPHA, z))[0]
    return center(u, v, d)


def _reflect_off(x: PartialPoint, a: Point, b: Point) -> PartialPoint:
    q = dropped_perp(x, a, b)
    return ext(x, q, x, q)


@traced("ilelim")
@strict()
def il_elim(a: Point, b: Point, p: Point, r: Point) -> PartialPoint:
    """Intersection of Line(a,b) and Line(p,r) as a circumcenter, without il."""
    p1 = point_on_k_not_l(a, b, p, r)
    w = dropped_perp(p1, a, b)
    m = midpoint(p1, w, point_off_line(p1, w))
    j = erected_perp(p1, p, r, point_off_line(p, r))[0]
    x, y = ilc(j, p1, p1, m)
    z = _reflect_off(x, a, b)
    return center(x, y, z)


# ---------------------------------------------------------------------------
# circles


@traced("radaxis")
@strict(pair=True)
def radical_axis(s: Point, c_on: Point, t: Point, k_on: Point, r: Point) -> Pair:
    """Two points of the radical axis of Circle(s, c_on) and Circle(t, k_on).

    r is any point off the line of centers.
    """
    if s == t:
        return _undef_pair(_bad(Reason.NullSegment))
    if collinear3(s, t, r):
        return _undef_pair(_bad())
    hs = erected_perp(s, s, t, r)[0]
    a = ilc(s, hs, s, c_on)[1]
    ht = erected_perp(t, t, s, r)[0]
    b = ilc(t, ht, t, k_on)[1]
    if first_undefined((a, b)) is None and a == b:
        return _undef_pair(_bad())
    m = midpoint(a, b, point_off_line(a, b))
    if first_undefined((m,)) is None and collinear3(s, t, m):
        # both circles null: no usable chord
        return _undef_pair(_bad())
    f1, h1 = uniform_perp(a, s, m, t)
    f2, h2 = uniform_perp(b, t, m, s)
    p = il(f1, h1, f2, h2)
    return uniform_perp(p, s, t, r)


@traced("ccirc")
@strict(pair=True)
def circle_circle(s: Point, c_on: Point, t: Point, k_on: Point, r: Point) -> Pair:
    """Both meets of Circle(s, c_on) and Circle(t, k_on), left of s->t first."""
    if s == t:
        return _undef_pair(_bad(Reason.NullSegment))
    r1, r2, d = dist2(s, c_on), dist2(t, k_on), dist2(s, t)
    # |r1 - r2| <= d <= r1 + r2, squared twice
    gap = r1 + r2 - d
    if (gap * gap - r1 * r2 * 4).sign() > 0:
        return _undef_pair(_bad(Reason.NoIntersection))
    f, h = radical_axis(s, c_on, t, k_on, r)
    y, z = ilc(f, h, s, c_on)
    if first_undefined((y, z)) is None and orient(s, t, y) < 0:
        y, z = z, y
    return y, z


# ---------------------------------------------------------------------------
# postconditions, used by the verification suites


def _foot_ok(p, a, b, x) -> bool:
    return collinear3(a, b, x) and (p == x or right_angle(p, x, a if x != a else b))


def post_midpoint_iso(x, y, z, m) -> bool:
    return B(y, m, z) and dist2(y, m) == dist2(m, z)


def post_density(a, c, p, b) -> bool:
    return B(a, b, c)


def post_continuous_pasch(a, c, p, b, q, x) -> bool:
    if not B(b, x, p):
        return False
    if B(a, p, c) and not B(a, x, q):
        return False
    if B(a, c, p) and not B(a, q, x):
        return False
    return True


def post_dropped_perp(p, a, b, x) -> bool:
    return _foot_ok(p, a, b, x)


def post_erected_perp(a, l1, l2, s, p, r) -> bool:
    other = l1 if l1 != a else l2
    return (
        right_angle(p, a, other)
        and collinear3(l1, l2, r)
        and B(p, r, s)
        and orient(l1, l2, p) == -orient(l1, l2, s)
    )


def post_short_erected_perp(a, l1, l2, c, e) -> bool:
    other = l1 if l1 != a else l2
    return right_angle(e, a, other)


def post_midpoint(a, b, s, m) -> bool:
    return B(a, m, b) and dist2(a, m) == dist2(m, b)


def post_uniform_perp(x, a, b, w, foot, head) -> bool:
    return (
        collinear3(a, b, foot)
        and not collinear3(a, b, head)
        and collinear3(foot, head, x)
        and right_angle(head, foot, a if foot != a else b)
    )


def post_reflect(x, a, b, s, y) -> bool:
    # the line is the perpendicular bisector of x y, or x is fixed on it
    if x == y:
        return collinear3(a, b, x)
    return dist2(a, x) == dist2(a, y) and dist2(b, x) == dist2(b, y)


def post_parallel(p, a, b, s, k) -> bool:
    if k == p:
        return False
    if cross(b - a, k - p).sign() != 0:
        return False
    return True


def post_point_on_k_not_l(a, b, q, r, e) -> bool:
    return collinear3(q, r, e) and not collinear3(a, b, e)


def post_radical_axis(s, c_on, t, k_on, r, f, h) -> bool:
    if f == h:
        return False
    c, k = CircleRef(s, c_on), CircleRef(t, k_on)
    return all(power_of_point(z, c) == power_of_point(z, k) for z in (f, h))


def post_circle_circle(s, c_on, t, k_on, r, y, z) -> bool:
    c, k = CircleRef(s, c_on), CircleRef(t, k_on)
    on_both = all(not power_of_point(v, c) and not power_of_point(v, k) for v in (y, z))
    return on_both and orient(s, t, y) >= 0
