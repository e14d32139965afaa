"""Exact arithmetic in towers of real quadratic extensions of Q.

A number is a triple (tower, raw, den) with value raw / den.  The tower is a
tuple of radicands r_1, ..., r_n; level k adjoins the positive square root of
r_k to the field generated by the previous levels.  A raw element is either
an ``int`` or a triple ``(k, a, b)`` meaning ``a + b*sqrt(r_k)``, where ``a``
and ``b`` are raw elements of level < k and ``b`` is never zero.  Radicands are
raw elements too, so every raw element has integer leaves and all the heavy
arithmetic is integer arithmetic (on gmpy2 integers when available).

Every radicand is a non-square at its level, so the representation is unique
once ``den > 0`` and the gcd of ``den`` with all leaves is 1.  Zero is then
exactly ``(0, 1)`` and equality inside a tower is structural.
"""

from __future__ import annotations

import ast
import math
import threading
from fractions import Fraction
from functools import lru_cache
from typing import Union

try:  # leaves grow to hundreds of digits, where GMP multiplies much faster
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover
    _mpz = int

__all__ = [
    "ConstructibleNumber",
    "DivisionByZero",
    "NegativeRadicand",
    "arith",
    "sqrt_nonneg",
    "sign",
    "approx",
    "parse_number",
    "format_number",
]


class DivisionByZero(ZeroDivisionError):
    pass


class NegativeRadicand(ValueError):
    pass


# ---------------------------------------------------------------------------
# raw arithmetic on integer-leaf elements; ``rads`` is the radicand tuple


def _level(x) -> int:
    return x[0] if type(x) is tuple else 0


def _is_zero(x) -> bool:
    return type(x) is not tuple and not x


def _mk(k, a, b):
    if type(b) is not tuple and not b:
        return a
    return (k, a, b)


def _neg(x):
    if type(x) is not tuple:
        return -x
    return (x[0], _neg(x[1]), _neg(x[2]))


def _add(x, y):
    if type(x) is not tuple:
        if type(y) is not tuple:
            return x + y
        return (y[0], _add(x, y[1]), y[2])
    if type(y) is not tuple:
        return (x[0], _add(x[1], y), x[2])
    lx, ly = x[0], y[0]
    if lx == ly:
        b = _add(x[2], y[2])
        if type(b) is not tuple and not b:
            return _add(x[1], y[1])
        return (lx, _add(x[1], y[1]), b)
    if lx > ly:
        return (lx, _add(x[1], y), x[2])
    return (ly, _add(x, y[1]), y[2])


def _sub(x, y):
    if type(x) is not tuple:
        if type(y) is not tuple:
            return x - y
        return (y[0], _sub(x, y[1]), _neg(y[2]))
    if type(y) is not tuple:
        return (x[0], _sub(x[1], y), x[2])
    lx, ly = x[0], y[0]
    if lx == ly:
        b = _sub(x[2], y[2])
        if type(b) is not tuple and not b:
            return _sub(x[1], y[1])
        return (lx, _sub(x[1], y[1]), b)
    if lx > ly:
        return (lx, _sub(x[1], y), x[2])
    return (ly, _sub(x, y[1]), _neg(y[2]))


def _scale(x, q: int):
    if type(x) is not tuple:
        return x * q
    if not q:
        return 0
    return (x[0], _scale(x[1], q), _scale(x[2], q))


def _mul(x, y, rads):
    if type(x) is not tuple:
        if type(y) is not tuple:
            return x * y
        return _scale(y, x)
    if type(y) is not tuple:
        return _scale(x, y)
    lx, ly = x[0], y[0]
    if lx == ly:
        a, b = x[1], x[2]
        c, d = y[1], y[2]
        r = rads[lx - 1]
        if lx == 1:
            im = a * d + b * c
            re = a * c + b * d * r
            return (1, re, im) if im else re
        ac = _mul(a, c, rads)
        bd = _mul(b, d, rads)
        re = _add(ac, _mul(bd, r, rads))
        # Karatsuba: ad + bc = (a + b)(c + d) - ac - bd
        im = _sub(_mul(_add(a, b), _add(c, d), rads), _add(ac, bd))
        return _mk(lx, re, im)
    if lx > ly:
        return (lx, _mul(x[1], y, rads), _mul(x[2], y, rads))
    return (ly, _mul(x, y[1], rads), _mul(x, y[2], rads))


def _content(x, g: int = 0) -> int:
    """gcd of g and every leaf of x."""
    while type(x) is tuple:
        g = _content(x[1], g)
        if g == 1:
            return 1
        x = x[2]
    return math.gcd(g, x)


def _divexact(x, g: int):
    if type(x) is not tuple:
        return x // g
    return (x[0], _divexact(x[1], g), _divexact(x[2], g))


def _reduce(raw, den: int):
    """Canonical fraction raw/den: den > 0 and no common factor with the leaves."""
    if den < 0:
        raw, den = _neg(raw), -den
    g = _content(raw, den)
    if g != 1:
        raw, den = _divexact(raw, g), den // g
    return raw, den


def _inv(x, rads):
    """1/x as a reduced fraction (raw, den)."""
    if type(x) is not tuple:
        if not x:
            raise DivisionByZero("division by zero")
        return (1, x) if x > 0 else (-1, -x)
    k, a, b = x
    norm = _sub(_mul(a, a, rads), _mul(_mul(b, b, rads), rads[k - 1], rads))
    ni, nd = _inv(norm, rads)
    return _reduce((k, _mul(a, ni, rads), _neg(_mul(b, ni, rads))), nd)


# fractions (raw, den) used by the rarer tower operations


def _fadd(p, q):
    (r1, d1), (r2, d2) = p, q
    if d1 == d2:
        return _reduce(_add(r1, r2), d1)
    return _reduce(_add(_scale(r1, d2), _scale(r2, d1)), d1 * d2)


def _fmul(p, q, rads):
    return _reduce(_mul(p[0], q[0], rads), p[1] * q[1])


def _finv(p, rads):
    ir, idn = _inv(p[0], rads)
    return _reduce(_scale(ir, p[1]), idn)


def _sign(x, rads) -> int:
    if type(x) is not tuple:
        return (x > 0) - (x < 0)
    k, a, b = x
    sb = _sign(b, rads)
    sa = _sign(a, rads)
    if sa == 0 or sa == sb:
        return sb
    # a and b*sqrt(r) have opposite signs: compare a^2 with b^2 r
    d = _sub(_mul(a, a, rads), _mul(_mul(b, b, rads), rads[k - 1], rads))
    return sa * _sign(d, rads)


def _isqrt_exact(n: int):
    if n < 0:
        return None
    s = math.isqrt(n)
    return s if s * s == n else None


def _sqrt_in(x, top, rads):
    """A square root of the integral element x inside the first ``top`` levels.

    Returns a fraction (raw, den) or None when x is not a square there.
    """
    if _is_zero(x):
        return (0, 1)
    if top == 0:
        if type(x) is tuple:
            return None
        s = _isqrt_exact(x)
        return None if s is None else (s, 1)
    r = rads[top - 1]
    if _level(x) < top:
        a, b = x, 0
    else:
        a, b = x[1], x[2]
    if _is_zero(b):
        s = _sqrt_in(a, top - 1, rads)
        if s is not None:
            return s
        # a = (t * sqrt(r))^2 with t = sqrt(a * r) / r
        s = _sqrt_in(_mul(a, r, rads), top - 1, rads)
        if s is None:
            return None
        t_raw, t_den = _fmul(s, _inv(r, rads), rads)
        return ((top, 0, t_raw), t_den)
    norm = _sub(_mul(a, a, rads), _mul(_mul(b, b, rads), r, rads))
    n = _sqrt_in(norm, top - 1, rads)
    if n is None:
        return None
    nr, nd = n
    for sgn in (1, -1):
        # u^2 = (a + sgn*n) / 2, scaled by (2 nd)^2 to stay integral
        c = _scale(_add(_scale(a, nd), _scale(nr, sgn)), 2 * nd)
        s = _sqrt_in(c, top - 1, rads)
        if s is None or _is_zero(s[0]):
            continue
        u = _reduce(s[0], s[1] * 2 * nd)
        v = _fmul((b, 1), _finv(_reduce(_scale(u[0], 2), u[1]), rads), rads)
        return _reduce((top, _scale(u[0], v[1]), _scale(v[0], u[1])), u[1] * v[1])
    return None


def _square_factor(n: int) -> int:
    """Some g with g*g dividing n (small primes and a perfect-square cofactor)."""
    g = 1
    p = 2
    while p < 1000 and p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            g *= p
        p += 1 if p == 2 else 2
    s = math.isqrt(n)
    if s * s == n:
        g *= s
    return g


def _new_radicand(raw):
    """Split a positive integral non-square as g^2 * r0 with r0 having smaller content."""
    g = _square_factor(_content(raw))
    if g > 1:
        raw = _divexact(raw, g * g)
    return raw, g


def _levels(x, acc: set) -> None:
    while type(x) is tuple:
        acc.add(x[0])
        _levels(x[1], acc)
        x = x[2]


def _relabel(x, mapping):
    if type(x) is not tuple:
        return x
    return (mapping[x[0]], _relabel(x[1], mapping), _relabel(x[2], mapping))


# ---------------------------------------------------------------------------
# towers


class Tower:
    """Interned radicand tuple; compared by identity."""

    __slots__ = ("rads", "__weakref__")
    _table: dict = {}
    _lock = threading.Lock()

    def __init__(self, rads):
        self.rads = rads

    @classmethod
    def make(cls, rads: tuple) -> "Tower":
        t = cls._table.get(rads)
        if t is None:
            with cls._lock:
                t = cls._table.setdefault(rads, cls(rads))
        return t

    def __len__(self):
        return len(self.rads)

    def __repr__(self):
        return f"Tower(depth={len(self.rads)})"


EMPTY = Tower.make(())


def _embed(x, images, rads):
    if type(x) is not tuple:
        return (x, 1)
    k, a, b = x
    return _fadd(_embed(a, images, rads), _fmul(_embed(b, images, rads), images[k - 1], rads))


@lru_cache(maxsize=8192)
def _union(t1: Tower, t2: Tower):
    """Return (U, images) where U extends t1 and images[j] is sqrt(t2 level j) in U.

    images is None when t2 is a prefix of t1 (identity embedding).
    """
    n2 = len(t2.rads)
    if t1.rads[:n2] == t2.rads:
        return t1, None
    rads = list(t1.rads)
    images: list = []
    for r2 in t2.rads:
        rr, rd = _embed(r2, images, tuple(rads))
        # r2 = rr/rd, so sqrt(r2) = sqrt(rr*rd)/rd
        big = _scale(rr, rd)
        s = _sqrt_in(big, len(rads), tuple(rads))
        if s is None:
            r0, g = _new_radicand(big)
            rads.append(r0)
            images.append(_reduce((len(rads), 0, g), rd))
        else:
            sr, sd = s
            if _sign(sr, tuple(rads)) < 0:
                sr = _neg(sr)
            images.append(_reduce(sr, sd * rd))
    return Tower.make(tuple(rads)), tuple(images)


def _common(x: "ConstructibleNumber", y: "ConstructibleNumber"):
    """A shared tower and both operands as fractions in it."""
    tx, ty = x.tower, y.tower
    if tx is ty or type(y.raw) is not tuple:
        return tx, (x.raw, x.den), (y.raw, y.den)
    if type(x.raw) is not tuple:
        return ty, (x.raw, x.den), (y.raw, y.den)
    if len(ty.rads) > len(tx.rads):
        u, images = _union(ty, tx)
        if images is None:
            return u, (x.raw, x.den), (y.raw, y.den)
        xr, xd = _embed(x.raw, images, u.rads)
        return u, (xr, xd * x.den), (y.raw, y.den)
    u, images = _union(tx, ty)
    if images is None:
        return u, (x.raw, x.den), (y.raw, y.den)
    yr, yd = _embed(y.raw, images, u.rads)
    return u, (x.raw, x.den), (yr, yd * y.den)


@lru_cache(maxsize=8192)
def _restrict(tower: Tower, used: frozenset):
    # closure of used levels under radicand dependencies, then a relabeling
    keep = set(used)
    stack = list(used)
    while stack:
        k = stack.pop()
        dep: set = set()
        _levels(tower.rads[k - 1], dep)
        for d in dep:
            if d not in keep:
                keep.add(d)
                stack.append(d)
    if len(keep) == len(tower.rads):
        return tower, None
    order = sorted(keep)
    mapping = {old: new for new, old in enumerate(order, start=1)}
    rads = tuple(_relabel(tower.rads[k - 1], mapping) for k in order)
    return Tower.make(rads), mapping


def _normalize(tower: Tower, raw, den: int) -> "ConstructibleNumber":
    raw, den = _reduce(raw, den)
    if type(raw) is not tuple:
        return ConstructibleNumber._new(EMPTY, raw, den)
    used: set = set()
    _levels(raw, used)
    if len(used) == len(tower.rads):
        return ConstructibleNumber._new(tower, raw, den)
    sub, mapping = _restrict(tower, frozenset(used))
    if mapping is None:
        return ConstructibleNumber._new(tower, raw, den)
    return ConstructibleNumber._new(sub, _relabel(raw, mapping), den)


# ---------------------------------------------------------------------------
# public number type

NumberLike = Union["ConstructibleNumber", int, Fraction, str]


def _rational_pair(v):
    if isinstance(v, bool):
        raise TypeError("bool is not a number")
    if isinstance(v, int):
        return int(v), 1
    if isinstance(v, Fraction):
        return v.numerator, v.denominator
    return None


class ConstructibleNumber:
    """An exact real number built from rationals by field operations and square roots."""

    __slots__ = ("tower", "raw", "den")
    __hash__ = None  # equality crosses towers, so no consistent hash

    def __init__(self, value=0):
        if isinstance(value, ConstructibleNumber):
            self.tower, self.raw, self.den = value.tower, value.raw, value.den
            return
        if isinstance(value, str):
            v = parse_number(value)
            self.tower, self.raw, self.den = v.tower, v.raw, v.den
            return
        pair = _rational_pair(value)
        if pair is None:
            raise TypeError(f"cannot make a constructible number from {value!r}")
        self.tower = EMPTY
        self.raw, self.den = _reduce(_mpz(pair[0]), _mpz(pair[1]))

    @classmethod
    def _new(cls, tower, raw, den=1):
        obj = object.__new__(cls)
        obj.tower = tower
        obj.raw = raw
        obj.den = den
        return obj

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        u, (a, da), (b, db) = _common(self, other)
        if da == db:
            return _normalize(u, _add(a, b), da)
        g = math.gcd(da, db)
        return _normalize(u, _add(_scale(a, db // g), _scale(b, da // g)), da // g * db)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        u, (a, da), (b, db) = _common(self, other)
        return _normalize(u, _mul(a, b, u.rads), da * db)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        u, (a, da), (b, db) = _common(self, other)
        ir, idn = _inv(b, u.rads)
        return _normalize(u, _scale(_mul(a, ir, u.rads), db), da * idn)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __neg__(self):
        return ConstructibleNumber._new(self.tower, _neg(self.raw), self.den)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def inverse(self) -> "ConstructibleNumber":
        ir, idn = _inv(self.raw, self.tower.rads)
        return _normalize(self.tower, _scale(ir, self.den), idn)

    def sqrt(self) -> "ConstructibleNumber":
        return sqrt_nonneg(self)

    def sign(self) -> int:
        return _sign(self.raw, self.tower.rads)

    # comparisons ----------------------------------------------------------

    def _cmp(self, other) -> int:
        if type(self.raw) is not tuple and type(other.raw) is not tuple:
            lhs, rhs = self.raw * other.den, other.raw * self.den
            return (lhs > rhs) - (lhs < rhs)
        return (self - other).sign()

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.tower is other.tower or (type(self.raw) is not tuple and type(other.raw) is not tuple):
            return self.den == other.den and self.raw == other.raw
        return _is_zero((self - other).raw)

    def __lt__(self, other):
        other = _coerce(other)
        return NotImplemented if other is NotImplemented else self._cmp(other) < 0

    def __le__(self, other):
        other = _coerce(other)
        return NotImplemented if other is NotImplemented else self._cmp(other) <= 0

    def __gt__(self, other):
        other = _coerce(other)
        return NotImplemented if other is NotImplemented else self._cmp(other) > 0

    def __ge__(self, other):
        other = _coerce(other)
        return NotImplemented if other is NotImplemented else self._cmp(other) >= 0

    def __bool__(self):
        return not _is_zero(self.raw)

    # inspection -----------------------------------------------------------

    @property
    def depth(self) -> int:
        return len(self.tower.rads)

    def is_rational(self) -> bool:
        return type(self.raw) is not tuple

    def as_fraction(self) -> Fraction:
        if type(self.raw) is tuple:
            raise ValueError(f"{self} is irrational")
        return Fraction(self.raw, self.den)

    def parts(self):
        """Split as (a, b, r) with value a + b*sqrt(r), or None when rational."""
        if type(self.raw) is not tuple:
            return None
        k, a, b = self.raw
        t = self.tower
        return (_normalize(t, a, self.den), _normalize(t, b, self.den),
                _normalize(t, t.rads[k - 1], 1))

    def __float__(self):
        lo, hi = approx(self, 60)
        return float((lo + hi) / 2)

    def __str__(self):
        return format_number(self)

    def __repr__(self):
        return f"ConstructibleNumber('{format_number(self)}')"


def _coerce(v):
    if isinstance(v, ConstructibleNumber):
        return v
    try:
        pair = _rational_pair(v)
    except TypeError:
        return NotImplemented
    if pair is None:
        return NotImplemented
    return ConstructibleNumber._new(EMPTY, *_reduce(*pair))


# ---------------------------------------------------------------------------
# module-level operations


def arith(op: str, x: NumberLike, y: NumberLike) -> ConstructibleNumber:
    x, y = ConstructibleNumber(x), ConstructibleNumber(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def sqrt_nonneg(x: NumberLike) -> ConstructibleNumber:
    x = ConstructibleNumber(x)
    s = x.sign()
    if s < 0:
        raise NegativeRadicand(f"square root of negative number {x}")
    if s == 0:
        return ConstructibleNumber(0)
    rads = x.tower.rads
    # sqrt(raw/den) = sqrt(raw*den)/den
    big = _scale(x.raw, x.den)
    root = _sqrt_in(big, len(rads), rads)
    if root is not None:
        rr, rd = root
        if _sign(rr, rads) < 0:
            rr = _neg(rr)
        return _normalize(x.tower, rr, rd * x.den)
    r0, g = _new_radicand(big)
    tower = Tower.make(rads + (r0,))
    return _normalize(tower, (len(rads) + 1, 0, g), x.den)


def sign(x: NumberLike) -> int:
    return ConstructibleNumber(x).sign()


# ---------------------------------------------------------------------------
# rigorous rational enclosures


def _enclose(x, rads, p, memo):
    """Integers (lo, hi) with lo/2^p <= x <= hi/2^p."""
    if type(x) is not tuple:
        v = x << p
        return v, v
    k, a, b = x
    la, ha = _enclose(a, rads, p, memo)
    lb, hb = _enclose(b, rads, p, memo)
    root = memo.get(k)
    if root is None:
        lr, hr = _enclose(rads[k - 1], rads, p, memo)
        lr = max(lr, 0)
        hr = max(hr, 0)
        root = memo[k] = (math.isqrt(lr << p), math.isqrt(hr << p) + 1)
    p1, p2, p3, p4 = lb * root[0], lb * root[1], hb * root[0], hb * root[1]
    lo = la + (min(p1, p2, p3, p4) >> p)
    hi = ha - ((-max(p1, p2, p3, p4)) >> p)
    return lo, hi


def approx(x: NumberLike, bits: int) -> tuple[Fraction, Fraction]:
    """Rational interval [lo, hi] containing x with hi - lo <= 2**-bits."""
    if bits < 1:
        raise ValueError("bits must be positive")
    x = ConstructibleNumber(x)
    if type(x.raw) is not tuple:
        f = x.as_fraction()
        return f, f
    p = bits + 16 + x.den.bit_length()
    while True:
        lo, hi = _enclose(x.raw, x.tower.rads, p, {})
        scale = x.den << p
        if (hi - lo) << bits <= scale:
            return Fraction(lo, scale), Fraction(hi, scale)
        p *= 2


# ---------------------------------------------------------------------------
# literal grammar: integers, p/q, sqrt(...), + - * / and parentheses


def _eval_literal(node) -> ConstructibleNumber:
    if isinstance(node, ast.Expression):
        return _eval_literal(node.body)
    if isinstance(node, ast.Constant) and type(node.value) is int:
        return ConstructibleNumber(node.value)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_literal(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        left, right = _eval_literal(node.left), _eval_literal(node.right)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            return left / right
    if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
            and node.func.id == "sqrt" and len(node.args) == 1 and not node.keywords):
        return sqrt_nonneg(_eval_literal(node.args[0]))
    raise ValueError("unsupported number literal")


def parse_number(text: str) -> ConstructibleNumber:
    """Parse a number literal such as ``3``, ``-2/5`` or ``1 + sqrt(2)/3``."""
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"bad number literal {text!r}") from exc
    try:
        return _eval_literal(tree)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad number literal {text!r}: {exc}") from None


def _fmt(raw, den: int, rads) -> str:
    raw, den = _reduce(raw, den)
    if type(raw) is not tuple:
        return str(raw) if den == 1 else f"{raw}/{den}"
    k, a, b = raw
    root = f"sqrt({_fmt(rads[k - 1], 1, rads)})"
    b, bd = _reduce(b, den)
    if bd == 1 and b == 1:
        term = root
    elif bd == 1 and b == -1:
        term = "-" + root
    elif type(b) is not tuple:
        term = f"{_fmt(b, bd, rads)}*{root}"
    else:
        term = f"({_fmt(b, bd, rads)})*{root}"
    if _is_zero(a):
        return term
    head = _fmt(a, den, rads)
    if term.startswith("-"):
        return f"{head} - {term[1:]}"
    return f"{head} + {term}"


def format_number(x: NumberLike) -> str:
    x = ConstructibleNumber(x)
    return _fmt(x.raw, x.den, x.tower.rads)
