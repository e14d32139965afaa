"""Partial construction operators with strict undefinedness semantics."""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from typing import NamedTuple, Optional, Union

from .field import sqrt_nonneg
from .geom import Point, B, T, collinear3, cross, dist2, dot
from .trace import traced


class Reason(str, enum.Enum):
    NullSegment = "NullSegment"
    Collinear = "Collinear"
    NoIntersection = "NoIntersection"
    CoincidentLines = "CoincidentLines"
    OutsideCircle = "OutsideCircle"
    BadArgument = "BadArgument"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Undefined:
    """An undefined term, with the reason and (once known) the binding that produced it."""

    reason: Reason
    binding: Optional[str] = None

    def at(self, binding: str) -> "Undefined":
        return self if self.binding is not None else Undefined(self.reason, binding)

    def __repr__(self):
        where = f" at {self.binding}" if self.binding else ""
        return f"Undefined({self.reason.value}{where})"


PartialPoint = Union[Point, Undefined]


def is_defined(*values) -> bool:
    return not any(isinstance(v, Undefined) for v in values)


def first_undefined(values) -> Optional[Undefined]:
    for v in values:
        if isinstance(v, Undefined):
            return v
    return None


def strict(pair: bool = False):
    """Propagate the first undefined argument instead of calling the operator."""

    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args):
            u = first_undefined(args)
            if u is not None:
                return (u, u) if pair else u
            return fn(*args)

        return wrapper

    return deco


class BaseTriangle(NamedTuple):
    alpha: Point
    beta: Point
    gamma: Point


ALPHA = Point(0, 0)
BETA = Point(1, 0)
GAMMA = Point(0, 1)


def base_triangle() -> BaseTriangle:
    return BaseTriangle(ALPHA, BETA, GAMMA)


@traced("ext")
@strict()
def ext(q: Point, a: Point, b: Point, c: Point) -> PartialPoint:
    """Extend segment qa beyond a by the length of bc."""
    if q == a:
        return Undefined(Reason.NullSegment)
    if b == c:
        return a
    k = sqrt_nonneg(dist2(b, c) / dist2(q, a))
    return a + (a - q).scale(k)


def _line_meet(a: Point, b: Point, p: Point, q: Point) -> PartialPoint:
    u, v = b - a, q - p
    det = cross(u, v)
    if not det:
        if collinear3(a, b, p):
            return Undefined(Reason.CoincidentLines)
        return Undefined(Reason.NoIntersection)
    t = cross(p - a, v) / det
    return a + u.scale(t)


@traced("il")
@strict()
def il(a: Point, b: Point, p: Point, q: Point) -> PartialPoint:
    """Intersection of Line(a,b) and Line(p,q)."""
    if a == b or p == q:
        return Undefined(Reason.NullSegment)
    return _line_meet(a, b, p, q)


@traced("ip")
@strict()
def ip(a: Point, p: Point, c: Point, b: Point, q: Point) -> PartialPoint:
    """Inner Pasch: the crossing of segments pb and qa in triangle abc."""
    if collinear3(a, b, c):
        return Undefined(Reason.Collinear)
    if not (B(a, p, c) and T(b, q, c)):
        return Undefined(Reason.BadArgument)
    return _line_meet(a, q, b, p)


@traced("center")
@strict()
def center(a: Point, b: Point, c: Point) -> PartialPoint:
    """Circumcenter of a non-degenerate triangle."""
    u, v = b - a, c - a
    det = cross(u, v)
    if not det:
        return Undefined(Reason.Collinear)
    # solve 2u.x = |u|^2, 2v.x = |v|^2 for x relative to a
    uu, vv = dot(u, u), dot(v, v)
    ox = (uu * v.y - vv * u.y) / (det * 2)
    oy = (vv * u.x - uu * v.x) / (det * 2)
    return Point(a.x + ox, a.y + oy)


@traced("ilc")
@strict(pair=True)
def ilc(a: Point, b: Point, c: Point, d: Point) -> tuple[PartialPoint, PartialPoint]:
    """Both meets of Line(a,b) with Circle(c,d), ordered along a -> b."""
    if a == b:
        u = Undefined(Reason.NullSegment)
        return u, u
    u = b - a
    w = a - c
    uu = dot(u, u)
    uw = dot(u, w)
    disc = uw * uw - uu * (dot(w, w) - dist2(c, d))
    if disc.sign() < 0:
        miss = Undefined(Reason.OutsideCircle)
        return miss, miss
    root = sqrt_nonneg(disc)
    t1 = (-uw - root) / uu
    t2 = (-uw + root) / uu
    return a + u.scale(t1), a + u.scale(t2)


def ilc1(a, b, c, d) -> PartialPoint:
    return ilc(a, b, c, d)[0]


def ilc2(a, b, c, d) -> PartialPoint:
    return ilc(a, b, c, d)[1]
