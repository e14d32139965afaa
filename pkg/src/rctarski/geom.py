"""Points and the exact predicates of the points-only language."""

from __future__ import annotations

from dataclasses import dataclass

from .field import ConstructibleNumber, parse_number, format_number

Num = ConstructibleNumber


class NotOnLine(ValueError):
    pass


class Point:
    __slots__ = ("x", "y")
    __hash__ = None

    def __init__(self, x, y):
        self.x = x if isinstance(x, ConstructibleNumber) else ConstructibleNumber(x)
        self.y = y if isinstance(y, ConstructibleNumber) else ConstructibleNumber(y)

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Point":
        return Point(-self.x, -self.y)

    def scale(self, k) -> "Point":
        return Point(self.x * k, self.y * k)

    def rot90(self) -> "Point":
        """Counter-clockwise quarter turn of the vector."""
        return Point(-self.y, self.x)

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __repr__(self):
        return f"Point({format_number(self.x)}, {format_number(self.y)})"

    def to_json(self) -> dict:
        return {"x": format_number(self.x), "y": format_number(self.y)}

    @classmethod
    def from_json(cls, obj) -> "Point":
        if isinstance(obj, dict):
            x, y = obj["x"], obj["y"]
        else:
            x, y = obj
        return cls(_num(x), _num(y))


def _num(v):
    return parse_number(v) if isinstance(v, str) else ConstructibleNumber(v)


@dataclass(frozen=True, eq=False)
class LineRef:
    p: Point
    q: Point

    def __post_init__(self):
        if self.p == self.q:
            raise ValueError("a line needs two distinct points")


@dataclass(frozen=True, eq=False)
class CircleRef:
    center: Point
    through: Point

    @property
    def radius2(self) -> Num:
        return dist2(self.center, self.through)


def dot(u: Point, v: Point) -> Num:
    return u.x * v.x + u.y * v.y


def cross(u: Point, v: Point) -> Num:
    return u.x * v.y - u.y * v.x


def dist2(a: Point, b: Point) -> Num:
    d = a - b
    return dot(d, d)


def orient(a: Point, b: Point, c: Point) -> int:
    """Sign of the signed area of triangle abc."""
    return cross(b - a, c - a).sign()


def collinear3(a: Point, b: Point, c: Point) -> bool:
    return orient(a, b, c) == 0


def between(a: Point, b: Point, c: Point, strict: bool = True) -> bool:
    if strict:
        if a == b or b == c:
            return False
        return collinear3(a, b, c) and dot(a - b, c - b).sign() < 0
    # T(a,b,c): b on the closed segment ac
    return collinear3(a, b, c) and dot(a - b, c - b).sign() <= 0


def B(a: Point, b: Point, c: Point) -> bool:
    return between(a, b, c, True)


def T(a: Point, b: Point, c: Point) -> bool:
    return between(a, b, c, False)


def equidistant(a: Point, b: Point, c: Point, d: Point) -> bool:
    return dist2(a, b) == dist2(c, d)


def on_line(p: Point, line: LineRef) -> bool:
    return collinear3(line.p, line.q, p)


def segment_less(a: Point, b: Point, c: Point, d: Point, strict: bool = True) -> bool:
    s = (dist2(a, b) - dist2(c, d)).sign()
    return s < 0 if strict else s <= 0


def side_of_line(a: Point, b: Point, line: LineRef, mode: str) -> bool:
    sa = orient(line.p, line.q, a)
    sb = orient(line.p, line.q, b)
    if sa == 0 or sb == 0:
        return False
    if mode == "same":
        return sa == sb
    if mode == "opposite":
        return sa != sb
    raise ValueError(f"unknown side mode {mode!r}")


def same_side(a: Point, b: Point, line: LineRef) -> bool:
    return side_of_line(a, b, line, "same")


def opposite_side(a: Point, b: Point, line: LineRef) -> bool:
    return side_of_line(a, b, line, "opposite")


def same_order(a: Point, b: Point, c: Point, d: Point) -> bool:
    """The three-conjunct SameOrder formula, evaluated literally."""
    if a == b:
        raise ValueError("same_order needs a != b")
    if not collinear3(a, b, c) or not collinear3(a, b, d):
        raise NotOnLine("c and d must lie on Line(a, b)")
    if T(c, a, b) and B(d, c, a):
        return False
    if T(a, c, b) and B(d, c, b):
        return False
    if T(a, b, c) and not T(a, c, d):
        return False
    return True


def right_angle(a: Point, b: Point, c: Point) -> bool:
    if a == b or c == b:
        return False
    return dist2(a, c) == dist2(a, b) + dist2(b, c)


_CIRCLE_MODES = {
    "strictInside": lambda s: s < 0,
    "inside": lambda s: s <= 0,
    "on": lambda s: s == 0,
    "outside": lambda s: s >= 0,
    "strictOutside": lambda s: s > 0,
}


def circle_side(p: Point, circle: CircleRef, mode: str) -> bool:
    try:
        test = _CIRCLE_MODES[mode]
    except KeyError:
        raise ValueError(f"unknown circle mode {mode!r}") from None
    return test((dist2(circle.center, p) - circle.radius2).sign())


def power_of_point(b: Point, circle: CircleRef) -> Num:
    return dist2(b, circle.center) - circle.radius2
