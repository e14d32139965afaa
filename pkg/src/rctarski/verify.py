"""Seeded property checks of the geometry against exact analytic oracles.

A suite is a list of propositions.  Each proposition samples a configuration
(or declines one whose hypotheses fail, which counts as skipped) and decides
its conclusion exactly.  Every random choice flows from a per-proposition
``random.Random`` seeded from (suite, proposition, seed), so a report depends
only on its configuration.
"""

from __future__ import annotations

import hashlib
import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import constructions as C
from . import primitives as P
from .field import ConstructibleNumber, approx, sqrt_nonneg
from .geom import (
    B,
    T,
    CircleRef,
    LineRef,
    Point,
    circle_side,
    collinear3,
    cross,
    dist2,
    dot,
    equidistant,
    opposite_side,
    orient,
    power_of_point,
    right_angle,
    same_order,
    same_side,
    segment_less,
    side_of_line,
)
from .primitives import Reason, Undefined
from .script import ScriptAst, evaluate, parse


class UnknownSuite(KeyError):
    pass


class ResampleBudgetExhausted(RuntimeError):
    pass


class NoSolution(ValueError):
    pass


class ProbeUndefined(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# configuration and reports


@dataclass(frozen=True)
class TrialConfig:
    suite: str
    seed: int = 0
    trials: int = 100
    P: int = 12
    Q: int = 6
    budget: int = 100  # resample attempts allowed per requested trial


@dataclass
class TrialReport:
    suite: str
    proposition: str
    trial: int
    verdict: str  # pass, fail
    config: dict
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "proposition": self.proposition,
            "trial": self.trial,
            "verdict": self.verdict,
            "config": _jsonable(self.config),
            "witness": _jsonable(self.witness),
        }


@dataclass
class PropositionSummary:
    passed: int = 0
    failed: int = 0
    skipped: int = 0


@dataclass
class SuiteResult:
    suite: str
    seed: int
    trials: int
    propositions: dict[str, PropositionSummary]
    failures: list[TrialReport]

    @property
    def passed(self) -> int:
        return sum(p.passed for p in self.propositions.values())

    @property
    def skipped(self) -> int:
        return sum(p.skipped for p in self.propositions.values())

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "trials": self.trials,
            "passed": self.passed,
            "skipped": self.skipped,
            "failures": [f.to_json() for f in self.failures],
            "propositions": {
                k: {"passed": v.passed, "failed": v.failed, "skipped": v.skipped}
                for k, v in self.propositions.items()
            },
        }


def _jsonable(v):
    if isinstance(v, Point):
        return v.to_json()
    if isinstance(v, Undefined):
        return {"undefined": v.reason.value}
    if isinstance(v, ConstructibleNumber):
        return str(v)
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, Fraction):
        return str(v)
    return v


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# sampling


class Gen:
    """Random rational points p/q with |p| <= P and 1 <= q <= Q."""

    def __init__(self, rng: random.Random, P: int, Q: int):
        self.rng = rng
        self.P = P
        self.Q = Q
        self.index = 0  # number of accepted trials so far

    def rat(self) -> Fraction:
        return Fraction(self.rng.randint(-self.P, self.P), self.rng.randint(1, self.Q))

    def unit(self, closed: bool = False) -> Fraction:
        """A rational in (0,1), or in [0,1] when closed."""
        d = self.rng.randint(2, 2 * self.Q)
        lo, hi = (0, d) if closed else (1, d - 1)
        return Fraction(self.rng.randint(lo, hi), d)

    def beyond(self) -> Fraction:
        """A rational greater than 1."""
        return 1 + Fraction(self.rng.randint(1, self.P), self.rng.randint(1, self.Q))

    def point(self) -> Point:
        return Point(self.rat(), self.rat())

    def points(self, n: int) -> list[Point]:
        return [self.point() for _ in range(n)]

    def distinct(self, a: Point) -> Point:
        while True:
            b = self.point()
            if b != a:
                return b

    def triangle(self) -> tuple[Point, Point, Point]:
        while True:
            a, b, c = self.points(3)
            if not collinear3(a, b, c):
                return a, b, c

    def between(self, a: Point, c: Point) -> Point:
        return a + (c - a).scale(self.unit())

    def rotation(self):
        """A rational rotation (cos, sin) from a Pythagorean triple."""
        m, n = self.rng.randint(0, 4), self.rng.randint(0, 4)
        if m == n == 0:
            m = 1
        h = m * m + n * n
        return Fraction(m * m - n * n, h), Fraction(2 * m * n, h)

    def isometry(self) -> Callable[[Point], Point]:
        """A random rational isometry of the plane, possibly orientation-reversing."""
        c, s = self.rotation()
        shift = self.point()
        flip = self.rng.random() < 0.5

        def f(p: Point) -> Point:
            y = -p.y if flip else p.y
            return Point(p.x * c - y * s + shift.x, p.x * s + y * c + shift.y)

        return f

    def choice(self, seq):
        return self.rng.choice(seq)


Sample = Optional[dict]
Check = Callable[[dict], object]


@dataclass
class Proposition:
    id: str
    sample: Callable[[Gen], Sample]
    check: Check
    share: Fraction = Fraction(1)  # fraction of the requested trials run for this proposition


# ---------------------------------------------------------------------------
# independent analytic oracles


def _line_coeffs(a: Point, b: Point):
    # A x + B y = C through a and b
    A = b.y - a.y
    Bc = a.x - b.x
    return A, Bc, A * a.x + Bc * a.y


def _solve2(a1, b1, c1, a2, b2, c2):
    det = a1 * b2 - a2 * b1
    if not det:
        raise NoSolution("singular system")
    return Point((c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det)


def oracle_line_line(a: Point, b: Point, p: Point, q: Point) -> Point:
    if a == b or p == q:
        raise NoSolution("a line needs two distinct points")
    return _solve2(*_line_coeffs(a, b), *_line_coeffs(p, q))


def oracle_foot(p: Point, a: Point, b: Point) -> Point:
    if a == b:
        raise NoSolution("a line needs two distinct points")
    d = b - a
    return a + d.scale(dot(p - a, d) / dot(d, d))


def oracle_line_circle(a: Point, b: Point, c: Point, d: Point) -> tuple[Point, Point]:
    """Meets of Line(a,b) with Circle(c,d), the first one nearer a in the a->b order."""
    f = oracle_foot(c, a, b)
    h2 = dist2(c, d) - dist2(c, f)
    if h2.sign() < 0:
        raise NoSolution("line misses circle")
    u = b - a
    k = sqrt_nonneg(h2 / dot(u, u))
    return f - u.scale(k), f + u.scale(k)


def oracle_circle_circle(s: Point, c_on: Point, t: Point, k_on: Point) -> tuple[Point, Point]:
    """Meets of Circle(s,c_on) and Circle(t,k_on), the one left of s->t first."""
    if s == t:
        raise NoSolution("concentric circles")
    r1, r2 = dist2(s, c_on), dist2(t, k_on)
    d = t - s
    dd = dot(d, d)
    # subtracting the circle equations gives the chord line at parameter lam along s->t
    lam = (r1 - r2 + dd) / (dd * 2)
    h2 = r1 / dd - lam * lam
    if h2.sign() < 0:
        raise NoSolution("circles do not meet")
    base = s + d.scale(lam)
    off = d.rot90().scale(sqrt_nonneg(h2))
    return base + off, base - off


def oracle_circumcenter(a: Point, b: Point, c: Point) -> Point:
    # |x-a|^2 = |x-b|^2 = |x-c|^2 is linear in x
    a1, b1 = (b.x - a.x) * 2, (b.y - a.y) * 2
    c1 = dot(b, b) - dot(a, a)
    a2, b2 = (c.x - a.x) * 2, (c.y - a.y) * 2
    c2 = dot(c, c) - dot(a, a)
    return _solve2(a1, b1, c1, a2, b2, c2)


def oracle_midpoint(a: Point, b: Point) -> Point:
    return Point((a.x + b.x) / 2, (a.y + b.y) / 2)


ORACLES = {
    "lineLine": oracle_line_line,
    "lineCircle": oracle_line_circle,
    "circleCircle": oracle_circle_circle,
    "circumcenter": oracle_circumcenter,
    "foot": oracle_foot,
    "midpoint": oracle_midpoint,
}


def oracle(name: str, *points: Point):
    try:
        fn = ORACLES[name]
    except KeyError:
        raise ValueError(f"unknown oracle {name!r}") from None
    return fn(*points)


# ---------------------------------------------------------------------------
# shared generators


def _collinear_points(g: Gen, n: int, grid: bool = True) -> list[Point]:
    """n points on a random line; small integer parameters make coincidences common."""
    o = g.point()
    d = g.distinct(Point(0, 0))
    if grid:
        ts = [g.rng.randint(-3, 3) for _ in range(n)]
    else:
        ts = [g.rat() for _ in range(n)]
    return [o + d.scale(t) for t in ts]


def _ordered_on_line(g: Gen, n: int) -> list[Point]:
    """n distinct points on a line in increasing order, in a random direction."""
    o = g.point()
    d = g.distinct(Point(0, 0))
    ts = sorted(set(g.rat() for _ in range(4 * n)))
    while len(ts) < n:
        ts = sorted(set(ts) | {g.rat()})
    ts = sorted(g.rng.sample(ts, n))
    if g.rng.random() < 0.5:
        ts.reverse()
    return [o + d.scale(t) for t in ts]


def _five_segment(g: Gen, order: str) -> dict:
    """Two congruent figures a,b,c,d and A,B,C,D; D may be the mirror image across AB."""
    a = g.point()
    b = g.distinct(a)
    if order == "outer":  # B(a,b,c)
        c = b + (b - a).scale(g.unit() * 3)
    else:  # c strictly between a and b
        c = g.between(a, b)
    d = g.point()
    f = g.isometry()
    A, B_, C_, D = f(a), f(b), f(c), f(d)
    if g.rng.random() < 0.5:
        D = _mirror(D, A, B_)
    return dict(a=a, b=b, c=c, d=d, A=A, B=B_, C=C_, D=D)


def _mirror(x: Point, a: Point, b: Point) -> Point:
    f = oracle_foot(x, a, b)
    return f + (f - x)


# ---------------------------------------------------------------------------
# axioms


def _a1_sample(g):
    a, b = g.points(2)
    return dict(a=a, b=b)


def _a2_sample(g):
    a, b = g.points(2)
    f1, f2 = g.isometry(), g.isometry()
    return dict(a=a, b=b, p=f1(a), q=f1(b), r=f2(a), s=f2(b))


def _a2_check(c):
    if not (equidistant(c["a"], c["b"], c["p"], c["q"]) and equidistant(c["a"], c["b"], c["r"], c["s"])):
        return None
    return equidistant(c["p"], c["q"], c["r"], c["s"])


def _a3_sample(g):
    a = g.point()
    b = a if g.rng.random() < 0.5 else g.point()
    c = g.point()
    if not equidistant(a, b, c, c):
        return None
    return dict(a=a, b=b, c=c)


def _a4_sample(g):
    q = g.point()
    return dict(q=q, a=g.distinct(q), b=g.point(), c=g.point())


def _a4_check(c):
    x = P.ext(c["q"], c["a"], c["b"], c["c"])
    if isinstance(x, Undefined):
        return False, {"x": x}
    ok = T(c["q"], c["a"], x) and equidistant(c["a"], x, c["b"], c["c"])
    return ok, {"x": x}


def _a5_sample(g):
    cfg = _five_segment(g, "outer")
    return cfg


def _five_check(c, betw):
    a, b, cc, d = c["a"], c["b"], c["c"], c["d"]
    A, B_, C_, D = c["A"], c["B"], c["C"], c["D"]
    hyp = (
        a != b
        and betw(a, b, cc)
        and betw(A, B_, C_)
        and equidistant(a, b, A, B_)
        and equidistant(b, cc, B_, C_)
        and equidistant(a, d, A, D)
        and equidistant(b, d, B_, D)
    )
    if not hyp:
        return None
    return equidistant(cc, d, C_, D)


def _inner_five_check(c):
    a, b, cc, d = c["a"], c["b"], c["c"], c["d"]
    A, B_, C_, D = c["A"], c["B"], c["C"], c["D"]
    hyp = (
        B(a, cc, b)
        and B(A, C_, B_)
        and equidistant(a, b, A, B_)
        and equidistant(a, cc, A, C_)
        and equidistant(a, d, A, D)
        and equidistant(b, d, B_, D)
    )
    if not hyp:
        return None
    return equidistant(cc, d, C_, D)


def _a6_sample(g):
    a = g.point()
    return dict(a=a, b=a if g.rng.random() < 0.3 else g.point())


def _pasch_sample(g, q_mode: str = "interior"):
    a, b, c = g.triangle()
    p = g.between(a, c)
    if q_mode == "interior":
        q = g.between(b, c)
    else:
        q = g.choice([b, c])
    return dict(a=a, p=p, c=c, b=b, q=q)


def _a7_check(c):
    x = P.ip(c["a"], c["p"], c["c"], c["b"], c["q"])
    if isinstance(x, Undefined):
        return False, {"x": x}
    return B(c["p"], x, c["b"]) and B(c["q"], x, c["a"]), {"x": x}


def _a7_endpoint_check(c):
    """At q = b or q = c the crossing sits at a vertex: only the non-strict form holds."""
    x = P.ip(c["a"], c["p"], c["c"], c["b"], c["q"])
    if isinstance(x, Undefined):
        return False, {"x": x}
    ok = T(c["p"], x, c["b"]) and T(c["q"], x, c["a"])
    ok = ok and x == (c["b"] if c["q"] == c["b"] else c["p"])
    # the strict conclusion fails here, by exactly one coincidence
    ok = ok and not (B(c["p"], x, c["b"]) and B(c["q"], x, c["a"]))
    return ok, {"x": x}


def _a8_check(_):
    a, b, g = P.base_triangle()
    return not collinear3(a, b, g)


def _a9_sample(g):
    a = g.point()
    b = g.distinct(a)
    m = oracle_midpoint(a, b)
    n = (b - a).rot90()
    p, q, r = (m + n.scale(g.rat()) for _ in range(3))
    return dict(a=a, b=b, p=p, q=q, r=r)


def _a9_check(c):
    a, b = c["a"], c["b"]
    if not all(equidistant(c[k], a, c[k], b) for k in "pqr"):
        return None
    return collinear3(c["p"], c["q"], c["r"])


def _a10_sample(g):
    a, b, c = g.triangle()
    return dict(a=a, b=b, c=c)


def _a10_check(c):
    x = P.center(c["a"], c["b"], c["c"])
    if isinstance(x, Undefined):
        return False, {"x": x}
    ok = equidistant(c["a"], x, c["b"], x) and equidistant(c["a"], x, c["c"], x)
    return ok and x == oracle_circumcenter(c["a"], c["b"], c["c"]), {"x": x}


def _a14_sample(g):
    a, b, c = _collinear_points(g, 3, grid=False)
    if not B(a, b, c):
        return None
    return dict(a=a, b=b, c=c)


def _a15_sample(g):
    a, b, c, d = _ordered_on_line(g, 4)
    return dict(a=a, b=b, c=c, d=d)


def _a15_check(c):
    if not (B(c["a"], c["b"], c["d"]) and B(c["b"], c["c"], c["d"])):
        return None
    return B(c["a"], c["b"], c["c"])


def _lc_sample(g):
    a = g.point()
    b = g.distinct(a)
    r = g.rng.random()
    lam = Fraction(0) if r < 0.1 else Fraction(1) if r < 0.2 else g.unit()
    p = a + (b - a).scale(lam)
    d = g.distinct(Point(0, 0))
    t1, t2 = g.rat(), g.rat()
    if t1 == t2:
        return None
    return dict(a=a, b=b, p=p, u=p + d.scale(t1), v=p + d.scale(t2))


def _lc_check(c):
    a, b, p, u, v = c["a"], c["b"], c["p"], c["u"], c["v"]
    if not (collinear3(u, v, p) and u != v and T(a, p, b)):
        return None
    y, z = P.ilc(u, v, a, b)
    w = {"y": y, "z": z}
    if isinstance(y, Undefined):
        return False, w
    ok = equidistant(a, z, a, b) and equidistant(a, y, a, b) and T(y, p, z)
    if segment_less(a, p, a, b):
        ok = ok and y != z
    elif p != a:
        # p on the circle: the two meets coincide exactly for the tangent line
        tangent = dot(v - u, p - a).sign() == 0
        ok = ok and ((y == z) == tangent)
    return ok, w


def _tangent_sample(g):
    a = g.point()
    b = g.distinct(a)
    k = g.rat() or Fraction(1)
    return dict(a=a, b=b, p=b, u=b, v=b + (b - a).rot90().scale(k))


def _tangent_check(c):
    """A line tangent at p = b: the literal clause p != a -> y != z does not hold."""
    y, z = P.ilc(c["u"], c["v"], c["a"], c["b"])
    return y == z == c["p"], {"y": y, "z": z}


def _decidable_check(c):
    a, b, cc, d = c["a"], c["b"], c["c"], c["d"]
    values = [
        B(a, b, cc), T(a, b, cc), equidistant(a, b, cc, d), collinear3(a, b, cc),
        a == b, a != b, segment_less(a, b, cc, d), right_angle(a, b, cc),
    ]
    if a != b:
        values.append(side_of_line(cc, d, LineRef(a, b), "same"))
    return all(type(v) is bool for v in values)


def _four(g):
    a, b, c, d = g.points(4)
    return dict(a=a, b=b, c=c, d=d)


AXIOMS = [
    Proposition("A1", _a1_sample, lambda c: equidistant(c["a"], c["b"], c["b"], c["a"])),
    Proposition("A2", _a2_sample, _a2_check),
    Proposition("A3", _a3_sample, lambda c: c["a"] == c["b"]),
    Proposition("A4-i", _a4_sample, _a4_check),
    Proposition("A5", _a5_sample, lambda c: _five_check(c, T)),
    Proposition("A6-i", _a6_sample, lambda c: not B(c["a"], c["b"], c["a"])),
    Proposition("A7-i", _pasch_sample, _a7_check),
    Proposition("A7-i-endpoint", lambda g: _pasch_sample(g, "endpoint"), _a7_endpoint_check),
    Proposition("A8", lambda g: {}, _a8_check),
    Proposition("A9", _a9_sample, _a9_check),
    Proposition("A10-3", _a10_sample, _a10_check),
    Proposition("A14-i", _a14_sample, lambda c: B(c["c"], c["b"], c["a"])),
    Proposition("A15-i", _a15_sample, _a15_check),
    Proposition("line-circle-2pt", _lc_sample, _lc_check),
    Proposition("line-circle-tangent", _tangent_sample, _tangent_check),
    Proposition("stability-by-decidability", _four, _decidable_check),
]


# ---------------------------------------------------------------------------
# betweenness


def _line4(g):
    a, b, c, d = _collinear_points(g, 4)
    return dict(a=a, b=b, c=c, d=d)


def _implies(hyp, concl):
    def check(c):
        if not hyp(c):
            return None
        return concl(c)

    return check


def _satz(id_, hyp, concl):
    return Proposition(id_, _line4, _implies(hyp, concl))


def _ilc_order_sample(g):
    a = g.point()
    b = g.distinct(a)
    return dict(a=a, b=b, c=g.point(), d=g.point())


def _ilc_order_check(c):
    a, b = c["a"], c["b"]
    y, z = P.ilc(a, b, c["c"], c["d"])
    if isinstance(y, Undefined):
        return None
    y2, z2 = P.ilc(b, a, c["c"], c["d"])
    return same_order(a, b, y, z) and (y2, z2) == (z, y), {"y": y, "z": z}


def _trichotomy(c):
    a, b, cc, d = c["a"], c["b"], c["c"], c["d"]
    lt = segment_less(a, b, cc, d)
    gt = segment_less(cc, d, a, b)
    eq = equidistant(a, b, cc, d)
    return [lt, eq, gt].count(True) == 1


def _trichotomy_sample(g):
    a, b, c = g.points(3)
    # sometimes force equal lengths
    d = c + (b - a) if g.rng.random() < 0.3 else g.point()
    return dict(a=a, b=b, c=c, d=d)


def _side_sample(g):
    u = g.point()
    v = g.distinct(u)
    a, b = g.points(2)
    m = u + (v - u).scale(g.rat())
    return dict(u=u, v=v, a=a, b=b, m=m)


def _side_check(c):
    """Same side by signs agrees with the witness form: reflect a through a point m of L."""
    L = LineRef(c["u"], c["v"])
    a, b, m = c["a"], c["b"], c["m"]
    if collinear3(L.p, L.q, a) or collinear3(L.p, L.q, b):
        return None
    w = m + (m - a)
    witness = opposite_side(a, w, L) and opposite_side(b, w, L)
    return same_side(a, b, L) == witness


BETWEENNESS = [
    _satz("Satz3.1", lambda c: True, lambda c: T(c["a"], c["b"], c["b"])),
    _satz("Satz3.2", lambda c: T(c["a"], c["b"], c["c"]), lambda c: T(c["c"], c["b"], c["a"])),
    _satz("Satz3.3", lambda c: True, lambda c: T(c["a"], c["a"], c["b"])),
    _satz("Satz3.4", lambda c: T(c["a"], c["b"], c["c"]) and T(c["b"], c["a"], c["c"]),
          lambda c: c["a"] == c["b"]),
    _satz("Satz3.5a", lambda c: T(c["a"], c["b"], c["d"]) and T(c["b"], c["c"], c["d"]),
          lambda c: T(c["a"], c["b"], c["c"])),
    _satz("Satz3.6a", lambda c: T(c["a"], c["b"], c["c"]) and T(c["a"], c["c"], c["d"]),
          lambda c: T(c["b"], c["c"], c["d"])),
    _satz("Satz3.7a",
          lambda c: T(c["a"], c["b"], c["c"]) and T(c["b"], c["c"], c["d"]) and c["b"] != c["c"],
          lambda c: T(c["a"], c["c"], c["d"])),
    _satz("Satz3.5b", lambda c: T(c["a"], c["b"], c["d"]) and T(c["b"], c["c"], c["d"]),
          lambda c: T(c["a"], c["c"], c["d"])),
    _satz("Satz3.6b", lambda c: T(c["a"], c["b"], c["c"]) and T(c["a"], c["c"], c["d"]),
          lambda c: T(c["a"], c["b"], c["d"])),
    _satz("Satz3.7b",
          lambda c: T(c["a"], c["b"], c["c"]) and T(c["b"], c["c"], c["d"]) and c["b"] != c["c"],
          lambda c: T(c["a"], c["b"], c["d"])),
    Proposition("interior-5-segment", lambda g: _five_segment(g, "inner"), _inner_five_check),
    Proposition("segment-less-trichotomy", _trichotomy_sample, _trichotomy),
    Proposition("same-side-witness", _side_sample, _side_check),
    Proposition("ilc-same-order", _ilc_order_sample, _ilc_order_check),
]


# ---------------------------------------------------------------------------
# Pasch


def _cpasch_sample(g):
    a = g.point()
    c = g.distinct(a)
    lam = g.unit() if g.rng.random() < 0.5 else g.beyond()
    p = a + (c - a).scale(lam)
    b = g.point()
    if collinear3(a, c, b):
        return None
    return dict(a=a, c=c, p=p, b=b, q=g.between(c, b))


def _cpasch_check(c):
    args = (c["a"], c["c"], c["p"], c["b"], c["q"])
    x = C.continuous_pasch(*args)
    if isinstance(x, Undefined):
        return False, {"x": x}
    return C.post_continuous_pasch(*args, x), {"x": x}


def _separation_sample(g):
    u = g.point()
    v = g.distinct(u)
    a, b, c = g.points(3)
    L = LineRef(u, v)
    if not (same_side(a, b, L) and opposite_side(a, c, L)):
        return None
    return dict(u=u, v=v, a=a, b=b, c=c)


PASCH = [
    Proposition("A7-i", _pasch_sample, _a7_check),
    Proposition("continuous-pasch", _cpasch_sample, _cpasch_check),
    Proposition("plane-separation", _separation_sample,
                lambda c: opposite_side(c["b"], c["c"], LineRef(c["u"], c["v"]))),
]


# ---------------------------------------------------------------------------
# perpendiculars


def _off_line_sample(g):
    a = g.point()
    b = g.distinct(a)
    p = g.point()
    if collinear3(a, b, p):
        return None
    w = g.point()
    if collinear3(a, b, w):
        return None
    return dict(p=p, a=a, b=b, w=w)


def _feet_check(c):
    p, a, b, w = c["p"], c["a"], c["b"], c["w"]
    d = C.dropped_perp(p, a, b)
    gp = C.gupta_perp(a, b, p)
    u = C.project(p, a, b, w)
    want = oracle_foot(p, a, b)
    return d == gp == u == want, {"dropped": d, "gupta": gp, "uniform": u}


def _on_line_sample(g):
    a = g.point()
    b = g.distinct(a)
    x = a + (b - a).scale(g.rat())
    w = g.point()
    if collinear3(a, b, w):
        return None
    return dict(x=x, a=a, b=b, w=w)


def _on_line_check(c):
    x, a, b, w = c["x"], c["a"], c["b"], c["w"]
    foot, head = C.uniform_perp(x, a, b, w)
    if isinstance(foot, Undefined) or isinstance(head, Undefined):
        return False, {"foot": foot, "head": head}
    return foot == x and C.post_uniform_perp(x, a, b, w, foot, head), {"foot": foot}


def _erect_sample(g):
    l1 = g.point()
    l2 = g.distinct(l1)
    a = l1 + (l2 - l1).scale(g.rat())
    s = g.point()
    if collinear3(l1, l2, s):
        return None
    return dict(a=a, l1=l1, l2=l2, s=s)


def _erect_check(c):
    a, l1, l2, s = c["a"], c["l1"], c["l2"], c["s"]
    p, r = C.erected_perp(a, l1, l2, s)
    w = {"p": p, "r": r}
    if isinstance(p, Undefined) or isinstance(r, Undefined):
        return False, w
    return C.post_erected_perp(a, l1, l2, s, p, r), w


def _right_angles_sample(g):
    a = g.point()
    b = g.distinct(a)
    c = b + (a - b).rot90().scale(g.rat() or 1)
    f = g.isometry()
    return dict(a=a, b=b, c=c, A=f(a), B=f(b), C=f(c))


def _right_angles_check(c):
    a, b, cc, A, B_, C_ = (c[k] for k in ("a", "b", "c", "A", "B", "C"))
    if not (right_angle(a, b, cc) and right_angle(A, B_, C_)):
        return None
    if not (equidistant(a, b, A, B_) and equidistant(b, cc, B_, C_)):
        return None
    return equidistant(a, cc, A, C_)


def _reflection_form_check(c):
    """Pythagorean right angle agrees with: ac = ac' for c' the point reflection of c in b."""
    a, b, cc = c["a"], c["b"], c["c"]
    c2 = b + (b - cc)
    refl = a != b and cc != b and equidistant(a, cc, a, c2)
    return right_angle(a, b, cc) == refl


def _angle_sample(g):
    a = g.point()
    b = g.distinct(a)
    if g.rng.random() < 0.5:
        c = b + (a - b).rot90().scale(g.rat())
    else:
        c = g.point()
    return dict(a=a, b=b, c=c)


def _length(a, b):
    return sqrt_nonneg(dist2(a, b))


def _triangle_sample(g):
    if g.rng.random() < 0.3:
        a, b, c = _collinear_points(g, 3, grid=False)
    else:
        a, b, c = g.points(3)
    return dict(a=a, b=b, c=c)


def _triangle_check(c):
    a, b, cc = c["a"], c["b"], c["c"]
    lhs = _length(a, cc)
    rhs = _length(a, b) + _length(b, cc)
    if collinear3(a, b, cc):
        return lhs <= rhs and ((lhs == rhs) == T(a, b, cc))
    return lhs < rhs


PERPENDICULAR = [
    Proposition("feet-agree", _off_line_sample, _feet_check),
    Proposition("uniform-perp-on-line", _on_line_sample, _on_line_check),
    Proposition("erected-perp", _erect_sample, _erect_check),
    Proposition("right-angles-congruent", _right_angles_sample, _right_angles_check),
    Proposition("right-angle-reflection-form", _angle_sample, _reflection_form_check),
    Proposition("triangle-inequality", _triangle_sample, _triangle_check),
]


# ---------------------------------------------------------------------------
# midpoints

MIDPOINT_SCRIPT = """\
midpoint(a,b,s){
   p = Perp(a,b,s)
   w = Perp(b,a,p)
   v = wit(b,a,p)
   q = ext(b,w,a,p)
   t = op(b,w,q,p,v)
   r = ext(ext(w,b,w,b),b,a,p)
   m = ip(b,r,q,p,t)
   return m
  }
"""

_midpoint_ast: Optional[ScriptAst] = None


def midpoint_script() -> ScriptAst:
    global _midpoint_ast
    if _midpoint_ast is None:
        _midpoint_ast = parse(MIDPOINT_SCRIPT)
    return _midpoint_ast


def _mid_sample(g):
    a = g.point()
    b = g.distinct(a)
    s, s2 = g.points(2)
    if collinear3(a, b, s) or collinear3(a, b, s2):
        return None
    return dict(a=a, b=b, s=s, s2=s2)


def _mid_script_check(c):
    m = evaluate(midpoint_script(), [c["a"], c["b"], c["s"]]).outputs["m"]
    return m == oracle_midpoint(c["a"], c["b"]), {"m": m}


def _mid_independence_check(c):
    ast = midpoint_script()
    m1 = evaluate(ast, [c["a"], c["b"], c["s"]]).outputs["m"]
    m2 = evaluate(ast, [c["a"], c["b"], c["s2"]]).outputs["m"]
    if isinstance(m1, Undefined):
        return False, {"m1": m1, "m2": m2}
    return m1 == m2 and C.midpoint(c["a"], c["b"], c["s"]) == m1, {"m1": m1, "m2": m2}


def _iso_sample(g):
    x = g.point()
    y = g.distinct(x)
    f = g.isometry()
    # rotate y about x to get z with xz = xy
    z = x + (f(y) - f(x))
    if collinear3(x, y, z):
        return None
    return dict(x=x, y=y, z=z)


def _iso_check(c):
    m = C.gupta_midpoint_iso(c["x"], c["y"], c["z"])
    if isinstance(m, Undefined):
        return False, {"m": m}
    return m == oracle_midpoint(c["y"], c["z"]) and C.post_midpoint_iso(c["x"], c["y"], c["z"], m), {"m": m}


MIDPOINT = [
    Proposition("midpoint-script", _mid_sample, _mid_script_check),
    Proposition("midpoint-s-independence", _mid_sample, _mid_independence_check),
    Proposition("midpoint-isosceles", _iso_sample, _iso_check),
]


# ---------------------------------------------------------------------------
# parallel postulates


def tarski_parallel(a: Point, b: Point, c: Point, d: Point, t: Point):
    """Points x, y for the Tarski parallel conclusion, by parallels through t."""
    k = C.parallel_through(t, b, c, a)
    e = P.ext(d, c, d, c)
    f = P.il(e, t, a, c)  # outer Pasch point of adtec on Line(a,c)
    y = P.il(t, k, a, c)
    g_ = P.ext(d, b, d, b)
    h = P.il(g_, t, a, b)
    x = P.il(t, k, a, b)
    return x, y, {"k": k, "e": e, "f": f, "g": g_, "h": h}


def _tarski_sample(g):
    a, b, c = g.triangle()
    d = g.between(b, c)
    t = a + (d - a).scale(g.beyond())
    return dict(a=a, b=b, c=c, d=d, t=t)


def _tarski_hyp(c):
    a, b, cc, d, t = (c[k] for k in "abcdt")
    return (
        B(a, d, t) and B(b, d, cc) and a != d
        and not B(a, b, cc) and not B(b, cc, a) and not B(cc, a, b) and a != cc
        and not collinear3(a, b, cc)
    )


def _tarski_check(c):
    if not _tarski_hyp(c):
        return None
    a, b, cc, d, t = (c[k] for k in "abcdt")
    x, y, aux = tarski_parallel(a, b, cc, d, t)
    w = {"x": x, "y": y, **aux}
    if isinstance(x, Undefined) or isinstance(y, Undefined):
        return False, w
    ok = B(a, b, x) and B(a, cc, y) and B(x, t, y)
    ok = ok and B(aux["e"], aux["f"], t) and B(aux["g"], aux["h"], t)
    return ok, w


def _euclid5_sample(g):
    p = g.point()
    q = g.distinct(p)
    t = oracle_midpoint(p, q)
    r = g.point()
    if collinear3(p, q, r):
        return None
    s = t + (t - r)
    a = g.between(q, r)
    return dict(p=p, q=q, r=r, s=s, t=t, a=a)


def _euclid5_check(c):
    p, q, r, s, t, a = (c[k] for k in "pqrsta")
    hyp = (
        B(q, a, r) and B(p, t, q)
        and equidistant(p, r, q, s) and equidistant(p, t, q, t) and equidistant(r, t, s, t)
        and not collinear3(s, q, p)
    )
    if not hyp:
        return None
    # u on K beyond p, v the inner Pasch crossing, then x, y from the Tarski parallel step
    u = P.ext(r, p, P.ALPHA, P.BETA)
    v = P.ip(u, p, r, q, a)
    x, y, _ = tarski_parallel(p, u, a, v, q)
    e = P.il(s, q, p, y)
    w = {"u": u, "v": v, "x": x, "y": y, "e": e}
    if isinstance(e, Undefined):
        return False, w
    ok = B(p, v, q) and B(u, v, a) and B(x, q, y) and B(p, u, x) and B(p, a, y)
    return ok and B(p, a, e) and B(s, q, e), w


PARALLEL = [
    Proposition("euclid-5", _euclid5_sample, _euclid5_check),
    Proposition("tarski-parallel", _tarski_sample, _tarski_check),
]


# ---------------------------------------------------------------------------
# equivalent forms of line-circle continuity


def _seg_circle_sample(g):
    a = g.point()
    b = g.distinct(a)
    x = a + (b - a).scale(g.unit(closed=True))
    y = a + (b - a).scale(g.beyond() if g.rng.random() < 0.8 else 1)
    f1, f2 = g.rotation(), g.rotation()
    p = a + _rotate(x - a, f1)
    q = a + _rotate(y - a, f2)
    if p == q:
        return None
    return dict(a=a, b=b, x=x, y=y, p=p, q=q)


def _rotate(v: Point, cs) -> Point:
    c, s = cs
    return Point(v.x * c - v.y * s, v.x * s + v.y * c)


def _seg_circle_check(c):
    """Segment-circle from two-point line-circle: one meet of Line(p,q) lies on segment pq."""
    a, b, x, y, p, q = (c[k] for k in "abxypq")
    hyp = equidistant(a, x, a, p) and T(a, x, b) and T(a, b, y) and equidistant(a, y, a, q)
    if not hyp:
        return None
    zs = P.ilc(p, q, a, b)
    if isinstance(zs[0], Undefined):
        return False, {"z": zs[0]}
    good = [z for z in zs if T(p, z, q) and equidistant(a, z, a, b)]
    return bool(good), {"z1": zs[0], "z2": zs[1]}


def _one_point_sample(g):
    a = g.point()
    b = g.distinct(a)
    lam = g.unit(closed=True)
    p = a + (b - a).scale(lam)
    d = g.distinct(Point(0, 0))
    s = g.point()
    return dict(a=a, b=b, p=p, u=p, v=p + d, s=s)


def _one_point_check(c):
    """Two meets from one: reflect the first meet in the perpendicular from the centre to L."""
    a, b, u, v, s = c["a"], c["b"], c["u"], c["v"], c["s"]
    y = P.ilc1(u, v, a, b)
    if isinstance(y, Undefined):
        return False, {"y": y}
    w = C.point_off_line(u, v)
    foot, head = C.uniform_perp(a, u, v, w)
    z = C.uniform_reflect(y, foot, head, u if not collinear3(foot, head, u) else v)
    want = P.ilc(u, v, a, b)
    ok = not isinstance(z, Undefined) and {_key(y), _key(z)} == {_key(want[0]), _key(want[1])}
    return ok, {"y": y, "z": z}


def _key(p: Point):
    return (str(p.x), str(p.y))


def _thales_sample(g):
    a = g.point()
    x = g.distinct(a)
    b = x + (x - a).rot90().scale(g.rat() or 1)
    return dict(a=a, x=x, b=b)


def _thales_check(c):
    """A right angle axb over the diameter ab puts x on the circle."""
    a, x, b = c["a"], c["x"], c["b"]
    if not right_angle(a, x, b):
        return None
    m = oracle_midpoint(a, b)
    return circle_side(x, CircleRef(m, a), "on")


CONTINUITY = [
    Proposition("two-point-implies-segment-circle", _seg_circle_sample, _seg_circle_check),
    Proposition("one-point-implies-two-point", _one_point_sample, _one_point_check),
    Proposition("segment-circle-thales", _thales_sample, _thales_check),
]


# ---------------------------------------------------------------------------
# circles


def _power_sample(g):
    c = g.point()
    d = g.point()
    b = g.point()
    if g.rng.random() < 0.2:
        b = c
    return dict(b=b, c=c, d=d)


def _power_check(c):
    circle = CircleRef(c["c"], c["d"])
    pw = power_of_point(c["b"], circle)
    s = pw.sign()
    return (
        (s < 0) == circle_side(c["b"], circle, "strictInside")
        and (s == 0) == circle_side(c["b"], circle, "on")
        and (s > 0) == circle_side(c["b"], circle, "strictOutside")
    )


def _chord_sample(g):
    c = g.point()
    d = g.point()
    b = g.point()
    u = g.distinct(Point(0, 0))
    return dict(b=b, c=c, d=d, v=b + u)


def _chord_check(c):
    b, v = c["b"], c["v"]
    circle = CircleRef(c["c"], c["d"])
    y, z = P.ilc(b, v, circle.center, circle.through)
    if isinstance(y, Undefined):
        return None
    # signed product of directed lengths along the line
    prod = dot(y - b, z - b)
    return prod == power_of_point(b, circle), {"y": y, "z": z}


def _two_circles(g, kind: str) -> Sample:
    s = g.point()
    t = g.distinct(s)
    r = g.point()
    if collinear3(s, t, r):
        return None
    if kind == "tangent":
        c_on = s + (t - s).scale(g.rat() or Fraction(1, 2))
        if c_on == t:
            return None
        k_on = t + _rotate(c_on - t, g.rotation())
    elif kind == "null":
        # one circle of radius zero whose centre lies on the other circle
        c_on = g.point()
        if g.rng.random() < 0.5:
            t = s + _rotate(c_on - s, g.rotation())
            if t == s or collinear3(s, t, r):
                return None
            k_on = t
        else:
            s, c_on, t = t, t, s
            t = s + _rotate(g.distinct(s) - s, g.rotation())
            if t == s or collinear3(s, t, r):
                return None
            c_on = s
            k_on = t + _rotate(s - t, g.rotation())
    else:
        c_on, k_on = g.points(2)
    try:
        oracle_circle_circle(s, c_on, t, k_on)
    except NoSolution:
        return None
    return dict(kind=kind, s=s, c_on=c_on, t=t, k_on=k_on, r=r)


def _ccirc_check(c):
    s, c_on, t, k_on, r = c["s"], c["c_on"], c["t"], c["k_on"], c["r"]
    y, z = C.circle_circle(s, c_on, t, k_on, r)
    w = {"y": y, "z": z}
    if isinstance(y, Undefined) or isinstance(z, Undefined):
        return False, w
    want = oracle_circle_circle(s, c_on, t, k_on)
    ok = (y, z) == want
    c1, c2 = CircleRef(s, c_on), CircleRef(t, k_on)
    ok = ok and all(not power_of_point(v, c1) and not power_of_point(v, c2) for v in (y, z))
    if c["kind"] == "tangent" or c["kind"] == "null":
        ok = ok and y == z
    return ok, w


def _ccirc_prop(kind: str, share) -> Proposition:
    return Proposition(f"circle-circle-{kind}", lambda g: _two_circles(g, kind), _ccirc_check, share)


def _radaxis_check(c):
    s, c_on, t, k_on, r = c["s"], c["c_on"], c["t"], c["k_on"], c["r"]
    f, h = C.radical_axis(s, c_on, t, k_on, r)
    if isinstance(f, Undefined) or isinstance(h, Undefined):
        return False, {"f": f, "h": h}
    return C.post_radical_axis(s, c_on, t, k_on, r, f, h), {"f": f, "h": h}


def _radaxis_sample(g):
    s = g.point()
    t = g.distinct(s)
    c_on, k_on, r = g.points(3)
    if collinear3(s, t, r) or (c_on == s and k_on == t):
        return None
    return dict(s=s, c_on=c_on, t=t, k_on=k_on, r=r)


def _iii18_sample(g):
    c = g.point()
    a = g.distinct(c)
    v = a + (a - c).rot90().scale(g.rat() or 1)
    return dict(c=c, a=a, v=v)


def _iii18_check(c):
    """A line meeting the circle about c only at a is perpendicular to ca."""
    cc, a, v = c["c"], c["a"], c["v"]
    y, z = P.ilc(a, v, cc, a)
    if isinstance(y, Undefined) or y != z:
        return None
    return y == a and right_angle(cc, a, v)


CIRCLES = [
    Proposition("power-of-point-sign", _power_sample, _power_check),
    Proposition("power-chord-independence", _chord_sample, _chord_check),
    Proposition("radical-axis", _radaxis_sample, _radaxis_check, Fraction(1, 10)),
    _ccirc_prop("general", Fraction(8, 10)),
    _ccirc_prop("tangent", Fraction(1, 10)),
    _ccirc_prop("null", Fraction(1, 10)),
    Proposition("right-angle-on-diameter", _thales_sample, _thales_check),
    Proposition("euclid-III.18", _iii18_sample, _iii18_check),
]


# ---------------------------------------------------------------------------
# elimination of il


def _meeting_lines_sample(g):
    a = g.point()
    b = g.distinct(a)
    p = g.point()
    r = g.distinct(p)
    if cross(b - a, r - p).sign() == 0:
        return None
    return dict(a=a, b=b, p=p, r=r)


def _ilelim_check(c):
    a, b, p, r = c["a"], c["b"], c["p"], c["r"]
    x = C.il_elim(a, b, p, r)
    want = P.il(a, b, p, r)
    return x == want == oracle_line_line(a, b, p, r), {"x": x, "il": want}


def _ip_il_check(c):
    a, p, cc, b, q = (c[k] for k in ("a", "p", "c", "b", "q"))
    x = P.ip(a, p, cc, b, q)
    y = P.il(a, q, b, p)
    if isinstance(x, Undefined):
        return False, {"ip": x}
    return x == y, {"ip": x, "il": y}


def _ip_sample(g):
    cfg = _pasch_sample(g, "interior")
    if g.rng.random() < 0.2:
        cfg["q"] = g.choice([cfg["b"], cfg["c"]])
    return cfg


IL_ELIM = [
    Proposition("il-elimination", _meeting_lines_sample, _ilelim_check),
    Proposition("ip-equals-il", _ip_sample, _ip_il_check),
]


# ---------------------------------------------------------------------------
# degenerate inputs


def _expect(reason: Reason, value) -> bool:
    return isinstance(value, Undefined) and value.reason == reason


def _deg_ext_sample(g):
    a = g.point()
    return dict(q=a, a=a, b=g.point(), c=g.point())


def _deg_ip_sample(g):
    a, b, c = _collinear_points(g, 3, grid=False)
    return dict(a=a, p=g.point(), c=c, b=b, q=g.point())


def _deg_center_sample(g):
    a, b, c = _collinear_points(g, 3)
    return dict(a=a, b=b, c=c)


def _deg_parallel_sample(g):
    a = g.point()
    b = g.distinct(a)
    p = g.point()
    if collinear3(a, b, p):
        return None
    return dict(a=a, b=b, p=p, q=p + (b - a).scale(g.rat() or 1))


def _deg_coincident_sample(g):
    a, b, p, q = _collinear_points(g, 4, grid=False)
    if a == b or p == q:
        return None
    return dict(a=a, b=b, p=p, q=q)


def _deg_ilc_sample(g):
    a = g.point()
    b = g.distinct(a)
    c, d = g.points(2)
    f = oracle_foot(c, a, b)
    if not dist2(c, f) > dist2(c, d):
        return None
    return dict(a=a, b=b, c=c, d=d)


def _args(*keys):
    return lambda c: tuple(c[k] for k in keys)


DEGENERATE = [
    Proposition("ext-null-segment", _deg_ext_sample,
                lambda c: _expect(Reason.NullSegment, P.ext(*_args("q", "a", "b", "c")(c)))),
    Proposition("ip-collinear", _deg_ip_sample,
                lambda c: _expect(Reason.Collinear, P.ip(*_args("a", "p", "c", "b", "q")(c)))),
    Proposition("center-collinear", _deg_center_sample,
                lambda c: _expect(Reason.Collinear, P.center(*_args("a", "b", "c")(c)))),
    Proposition("il-parallel", _deg_parallel_sample,
                lambda c: _expect(Reason.NoIntersection, P.il(*_args("a", "b", "p", "q")(c)))),
    Proposition("il-coincident", _deg_coincident_sample,
                lambda c: _expect(Reason.CoincidentLines, P.il(*_args("a", "b", "p", "q")(c)))),
    Proposition("ilc-outside", _deg_ilc_sample,
                lambda c: all(_expect(Reason.OutsideCircle, v)
                              for v in P.ilc(*_args("a", "b", "c", "d")(c)))),
]


# ---------------------------------------------------------------------------
# density


def _density_sample(g):
    a = g.point()
    c = g.distinct(a)
    p = g.point()
    if collinear3(a, c, p):
        return None
    return dict(a=a, c=c, p=p)


def _density_check(c):
    b = C.density_point(c["a"], c["c"], c["p"])
    if isinstance(b, Undefined):
        return False, {"b": b}
    return C.post_density(c["a"], c["c"], c["p"], b), {"b": b}


DENSITY = [Proposition("density", _density_sample, _density_check)]


SUITES: dict[str, list[Proposition]] = {
    "axioms": AXIOMS,
    "betweenness": BETWEENNESS,
    "pasch": PASCH,
    "perpendicular": PERPENDICULAR,
    "midpoint": MIDPOINT,
    "parallel-equiv": PARALLEL,
    "continuity-equiv": CONTINUITY,
    "circles": CIRCLES,
    "il-elim": IL_ELIM,
    "degenerate": DEGENERATE,
    "density": DENSITY,
}


# ---------------------------------------------------------------------------
# running


def _seed_for(suite: str, prop: str, seed: int) -> int:
    h = hashlib.sha256(f"{suite}\x00{prop}\x00{seed}".encode()).digest()
    return int.from_bytes(h[:8], "big")


def _verdict(outcome):
    if isinstance(outcome, tuple):
        return outcome[0], outcome[1]
    return outcome, {}


def run_proposition(suite: str, prop: Proposition, cfg: TrialConfig, trials: int):
    g = Gen(random.Random(_seed_for(suite, prop.id, cfg.seed)), cfg.P, cfg.Q)
    summary = PropositionSummary()
    failures: list[TrialReport] = []
    attempts = 0
    limit = max(1, trials) * cfg.budget
    while summary.passed + summary.failed < trials:
        attempts += 1
        if attempts > limit:
            raise ResampleBudgetExhausted(
                f"{suite}/{prop.id}: {summary.skipped} samples skipped before reaching {trials} trials"
            )
        sample = prop.sample(g)
        if sample is None:
            summary.skipped += 1
            continue
        try:
            ok, witness = _verdict(prop.check(sample))
        except Exception as exc:  # a crash is a failure with its message as witness
            ok, witness = False, {"error": f"{type(exc).__name__}: {exc}"}
        if ok is None:
            summary.skipped += 1
            continue
        if ok:
            summary.passed += 1
        else:
            summary.failed += 1
            failures.append(TrialReport(suite, prop.id, g.index, "fail", sample, witness))
        g.index += 1
    return summary, failures


def run_suite(cfg: TrialConfig, only: Optional[list[str]] = None) -> SuiteResult:
    try:
        props = SUITES[cfg.suite]
    except KeyError:
        raise UnknownSuite(cfg.suite) from None
    summaries: dict[str, PropositionSummary] = {}
    failures: list[TrialReport] = []
    for prop in props:
        if only is not None and prop.id not in only:
            continue
        n = math.ceil(cfg.trials * prop.share)
        s, f = run_proposition(cfg.suite, prop, cfg, n)
        summaries[prop.id] = s
        failures.extend(f)
    return SuiteResult(cfg.suite, cfg.seed, cfg.trials, summaries, failures)


def run_all(seed: int, trials: int, **kw) -> dict:
    """Run every suite; the report nests per-suite summaries under "suites"."""
    results = [run_suite(TrialConfig(name, seed, trials, **kw)) for name in SUITES]
    return {
        "suite": "all",
        "seed": seed,
        "trials": trials,
        "passed": sum(r.passed for r in results),
        "skipped": sum(r.skipped for r in results),
        "failures": [f.to_json() for r in results for f in r.failures],
        "suites": {r.suite: r.to_json() for r in results},
    }


def report(suite: str, seed: int, trials: int, **kw) -> dict:
    if suite == "all":
        return run_all(seed, trials, **kw)
    return run_suite(TrialConfig(suite, seed, trials, **kw)).to_json()


# ---------------------------------------------------------------------------
# continuity probes


@dataclass
class ProbeReport:
    probes: int
    max_displacement: Fraction  # upper bound
    ratio: Fraction  # max_displacement / delta

    def to_json(self) -> dict:
        return {"probes": self.probes, "max_displacement": str(self.max_displacement),
                "ratio": str(self.ratio)}


def _outputs(ast: ScriptAst, args) -> list[Point]:
    res = evaluate(ast, args)
    outs = list(res.outputs.values())
    for v in outs:
        if isinstance(v, Undefined):
            raise ProbeUndefined(f"undefined output: {v!r}")
    return outs


def _segment_param(p: Point, u: Point, v: Point) -> Fraction:
    d = v - u
    w = p - u
    t = w.x / d.x if d.x else w.y / d.y
    if u + d.scale(t) != p:
        raise ValueError("pinned point is not on its segment")
    return t.as_fraction()


def continuity_probe(ast: ScriptAst, args: list[Point], delta=Fraction(1, 2 ** 20),
                     bits: int = 40, pinned: Optional[dict] = None) -> ProbeReport:
    """Move each input by +-delta and bound how far the outputs move.

    ``pinned`` maps a parameter to the two parameters whose segment it must
    stay on.  Such a point keeps its position parameter when its endpoints
    move, and is itself probed by sliding that parameter by +-delta.
    """
    delta = Fraction(delta)
    names = list(ast.params)
    pinned = {names.index(k): tuple(names.index(e) for e in ends)
              for k, ends in (pinned or {}).items()}
    params = {i: _segment_param(args[i], args[u], args[v]) for i, (u, v) in pinned.items()}

    def place(moved, slide=(None, 0)):
        j, dt = slide
        for i, (u, v) in pinned.items():
            t = params[i] + (dt if i == j else 0)
            moved[i] = moved[u] + (moved[v] - moved[u]).scale(t)
        return moved

    base = _outputs(ast, args)
    worst = Fraction(0)
    probes = 0
    variants = []
    for i in range(len(args)):
        if i in pinned:
            variants += [place(list(args), (i, d)) for d in (delta, -delta)]
            continue
        for dx, dy in ((delta, 0), (-delta, 0), (0, delta), (0, -delta)):
            moved = list(args)
            moved[i] = Point(args[i].x + dx, args[i].y + dy)
            variants.append(place(moved))
    for moved in variants:
        outs = _outputs(ast, moved)
        probes += 1
        for u, v in zip(base, outs):
            d = sqrt_nonneg(dist2(u, v))
            worst = max(worst, approx(d, bits)[1])
    return ProbeReport(probes, worst, worst / delta)
