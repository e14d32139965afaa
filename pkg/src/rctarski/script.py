"""A small straight-line language for construction scripts.

A script looks like::

    midpoint(a,b,s){
       p = Perp(a,b,s)
       m = ip(b,ext(p,a,a,b),s,a,p)   # nested applications are allowed
       return m
    }

Each binding names the result of one builtin operator; applications may be
nested in argument position.  Evaluation is strict: once a binding is
undefined, everything that depends on it is undefined with the same reason.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Union

from . import constructions as C
from . import primitives as P
from .field import approx
from .geom import Point
from .primitives import PartialPoint, Undefined
from .trace import Step, recording


class ScriptError(Exception):
    """Base class for static script errors."""


class ScriptSyntaxError(ScriptError, SyntaxError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} at line {line}, column {col}")
        self.msg = message
        self.lineno = line
        self.offset = col

    def __str__(self):
        return f"{self.msg} at line {self.lineno}, column {self.offset}"


class ArityError(ScriptError):
    pass


class UnboundIdentifier(ScriptError):
    pass


class Rebinding(ScriptError):
    pass


class ArgumentCountMismatch(ScriptError):
    pass


class UndefinedResult(ScriptError):
    pass


# ---------------------------------------------------------------------------
# builtins


@dataclass(frozen=True)
class Builtin:
    name: str
    arity: int
    outputs: int
    fn: Callable


def _pair(fn):
    return lambda *args: tuple(fn(*args))


BUILTINS: dict[str, Builtin] = {
    b.name: b
    for b in [
        Builtin("ext", 4, 1, P.ext),
        Builtin("ip", 5, 1, P.ip),
        Builtin("center", 3, 1, P.center),
        Builtin("ilc1", 4, 1, P.ilc1),
        Builtin("ilc2", 4, 1, P.ilc2),
        Builtin("il", 4, 1, P.il),
        Builtin("e", 1, 1, C.e_neq),
        Builtin("e2", 3, 1, C.e2),
        Builtin("midpointIso", 3, 1, C.gupta_midpoint_iso),
        Builtin("density", 3, 1, C.density_point),
        Builtin("cpasch", 5, 1, C.continuous_pasch),
        Builtin("op", 5, 1, C.outer_pasch),
        Builtin("dperp", 3, 1, C.dropped_perp),
        Builtin("gperp", 3, 1, C.gupta_perp),
        Builtin("eperp", 4, 2, _pair(C.erected_perp)),
        Builtin("Perp", 3, 1, C.perp),
        Builtin("wit", 3, 1, C.wit),
        Builtin("eperp2", 4, 1, C.short_erected_perp),
        Builtin("midpoint", 3, 1, C.midpoint),
        Builtin("uperp", 4, 2, _pair(C.uniform_perp)),
        Builtin("ureflect", 4, 1, C.uniform_reflect),
        Builtin("offline", 2, 1, C.point_off_line),
        Builtin("parallel", 4, 1, C.parallel_through),
        Builtin("onknotl", 4, 1, C.point_on_k_not_l),
        Builtin("ilelim", 4, 1, C.il_elim),
        Builtin("radaxis", 5, 2, _pair(C.radical_axis)),
        Builtin("ccirc", 5, 2, _pair(C.circle_circle)),
    ]
}

CONSTANTS: dict[str, Point] = {"alpha": P.ALPHA, "beta": P.BETA, "gamma": P.GAMMA}


# ---------------------------------------------------------------------------
# syntax tree


@dataclass(frozen=True)
class Apply:
    op: str
    args: tuple  # of str | Apply
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


Arg = Union[str, Apply]


@dataclass(frozen=True)
class Binding:
    targets: tuple[str, ...]
    expr: Apply
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ScriptAst:
    name: str
    params: tuple[str, ...]
    bindings: tuple[Binding, ...]
    returns: tuple[str, ...]

    def __post_init__(self):
        check(self)


# ---------------------------------------------------------------------------
# tokenizer

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<nl>\n)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[(){},=])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # ident, punct, nl, eof
    text: str
    line: int
    col: int


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    line, line_start, pos = 1, 0, 0
    while pos < len(source):
        m = _TOKEN.match(source, pos)
        col = pos - line_start + 1
        if m is None:
            raise ScriptSyntaxError(f"unexpected character {source[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "nl":
            tokens.append(Token("nl", "\n", line, col))
            line += 1
            line_start = m.end()
        elif kind in ("ident", "punct"):
            tokens.append(Token(kind, m.group(), line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


# ---------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def fail(self, message: str, tok: Optional[Token] = None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ScriptSyntaxError(f"{message}, found {found}", tok.line, tok.col)

    def expect(self, text: str) -> Token:
        tok = self.tok
        if tok.kind != "punct" or tok.text != text:
            self.fail(f"expected {text!r}")
        self.i += 1
        return tok

    def ident(self) -> Token:
        tok = self.tok
        if tok.kind != "ident":
            self.fail("expected an identifier")
        self.i += 1
        return tok

    def at(self, text: str) -> bool:
        return self.tok.kind == "punct" and self.tok.text == text

    def skip_newlines(self):
        while self.tok.kind == "nl":
            self.i += 1

    def ident_list(self) -> list[Token]:
        out = [self.ident()]
        while self.at(","):
            self.i += 1
            out.append(self.ident())
        return out

    def script(self) -> tuple:
        self.skip_newlines()
        name = self.ident().text
        self.expect("(")
        params = [] if self.at(")") else self.ident_list()
        self.expect(")")
        self.expect("{")
        bindings = []
        while True:
            self.skip_newlines()
            tok = self.tok
            if tok.kind == "ident" and tok.text == "return":
                self.i += 1
                returns = self.ident_list()
                break
            if tok.kind != "ident":
                self.fail("expected a binding or 'return'")
            bindings.append(self.binding())
            if self.tok.kind != "nl":
                self.fail("expected a line break after a binding")
        self.skip_newlines()
        self.expect("}")
        self.skip_newlines()
        if self.tok.kind != "eof":
            self.fail("expected end of input after '}'")
        return name, params, bindings, returns

    def binding(self) -> tuple:
        targets = self.ident_list()
        self.expect("=")
        expr = self.application()
        return targets, expr

    def application(self) -> Apply:
        head = self.ident()
        self.expect("(")
        args: list[Arg] = []
        if not self.at(")"):
            args.append(self.argument())
            while self.at(","):
                self.i += 1
                args.append(self.argument())
        self.expect(")")
        return Apply(head.text, tuple(args), head.line, head.col)

    def argument(self) -> Arg:
        tok = self.ident()
        if self.at("("):
            self.i -= 1
            return self.application()
        return tok.text


def _where(tok: Token) -> str:
    return f" (line {tok.line}, column {tok.col})"


def parse(source: str) -> ScriptAst:
    """Parse and statically check a script."""
    name, params, raw_bindings, returns = _Parser(tokenize(source)).script()
    # static checks run with source positions for better messages
    bound: set[str] = set(CONSTANTS)
    for tok in params:
        _bind(tok.text, bound, _where(tok))
    bindings = []
    for targets, expr in raw_bindings:
        _check_apply(expr, bound, top_outputs=len(targets))
        for tok in targets:
            _bind(tok.text, bound, _where(tok))
        bindings.append(Binding(tuple(t.text for t in targets), expr, targets[0].line))
    for tok in returns:
        if tok.text not in bound:
            raise UnboundIdentifier(f"unbound identifier {tok.text!r}{_where(tok)}")
    return ScriptAst(
        name,
        tuple(t.text for t in params),
        tuple(bindings),
        tuple(t.text for t in returns),
    )


def _bind(name: str, bound: set, where: str = ""):
    if name in bound:
        raise Rebinding(f"identifier {name!r} is already bound{where}")
    bound.add(name)


def _check_apply(expr: Apply, bound: set, top_outputs: Optional[int]):
    where = f" (line {expr.line}, column {expr.col})" if expr.line else ""
    b = BUILTINS.get(expr.op)
    if b is None:
        raise UnboundIdentifier(f"unknown operator {expr.op!r}{where}")
    if len(expr.args) != b.arity:
        raise ArityError(f"{expr.op} takes {b.arity} arguments, got {len(expr.args)}{where}")
    if top_outputs is None:
        if b.outputs != 1:
            raise ArityError(f"{expr.op} returns {b.outputs} points and cannot be nested{where}")
    elif top_outputs != b.outputs:
        raise ArityError(f"{expr.op} returns {b.outputs} point(s), bound to {top_outputs}{where}")
    for a in expr.args:
        if isinstance(a, Apply):
            _check_apply(a, bound, None)
        elif a not in bound:
            raise UnboundIdentifier(f"unbound identifier {a!r}{where}")


def check(ast: ScriptAst) -> None:
    """Enforce single assignment, scoping and arities on a syntax tree."""
    if not ast.returns:
        raise ScriptSyntaxError("a script must return at least one identifier", 0, 0)
    bound: set[str] = set(CONSTANTS)
    for p in ast.params:
        _bind(p, bound)
    for b in ast.bindings:
        _check_apply(b.expr, bound, top_outputs=len(b.targets))
        for t in b.targets:
            _bind(t, bound)
    for r in ast.returns:
        if r not in bound:
            raise UnboundIdentifier(f"unbound identifier {r!r}")


# ---------------------------------------------------------------------------
# printing and desugaring


def _print_apply(expr: Apply) -> str:
    args = ",".join(a if isinstance(a, str) else _print_apply(a) for a in expr.args)
    return f"{expr.op}({args})"


def print_script(ast: ScriptAst, indent: str = "   ") -> str:
    lines = [f"{ast.name}({','.join(ast.params)}){{"]
    for b in ast.bindings:
        lines.append(f"{indent}{', '.join(b.targets)} = {_print_apply(b.expr)}")
    lines.append(f"{indent}return {', '.join(ast.returns)}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def desugar(ast: ScriptAst) -> tuple[ScriptAst, dict[str, str]]:
    """Flatten nested applications into fresh bindings.

    Returns the flat script and a map from each fresh name to the binding it
    was lifted out of.
    """
    taken = set(ast.params) | set(CONSTANTS)
    for b in ast.bindings:
        taken.update(b.targets)
    origin: dict[str, str] = {}
    counter = 0

    def fresh() -> str:
        nonlocal counter
        while True:
            counter += 1
            name = f"_t{counter}"
            if name not in taken:
                taken.add(name)
                return name

    out: list[Binding] = []

    def lift(expr: Apply, owner: str) -> Apply:
        args = []
        for a in expr.args:
            if isinstance(a, Apply):
                name = fresh()
                out.append(Binding((name,), lift(a, owner)))
                origin[name] = owner
                args.append(name)
            else:
                args.append(a)
        return Apply(expr.op, tuple(args))

    for b in ast.bindings:
        flat = lift(b.expr, b.targets[0])
        out.append(Binding(b.targets, flat))
    return ScriptAst(ast.name, ast.params, tuple(out), ast.returns), origin


# ---------------------------------------------------------------------------
# evaluation


@dataclass
class TraceEntry:
    binding: str
    op: str
    args: tuple
    result: tuple  # one PartialPoint per output
    steps: list = field(default_factory=list)  # internal operator steps


@dataclass
class ConstructionResult:
    outputs: dict[str, PartialPoint]
    env: dict[str, PartialPoint]
    trace: list[TraceEntry]
    undefined: Optional[Undefined] = None

    @property
    def defined(self) -> bool:
        return self.undefined is None or all(
            not isinstance(v, Undefined) for v in self.outputs.values()
        )


def _apply(expr: Apply, env: dict, owner: str, trace: list, record: bool) -> tuple:
    args = tuple(env[a] if isinstance(a, str) else _apply(a, env, owner, trace, record)[0]
                 for a in expr.args)
    b = BUILTINS[expr.op]
    if record:
        with recording() as steps:
            value = b.fn(*args)
    else:
        steps = []
        value = b.fn(*args)
    result = value if b.outputs > 1 else (value,)
    result = tuple(v.at(owner) if isinstance(v, Undefined) else v for v in result)
    trace.append(TraceEntry(owner, expr.op, args, result, steps))
    return result


def evaluate(ast: ScriptAst, args, record_steps: bool = False) -> ConstructionResult:
    """Run a script on points (Undefined arguments propagate as usual)."""
    args = list(args)
    if len(args) != len(ast.params):
        raise ArgumentCountMismatch(
            f"{ast.name} takes {len(ast.params)} points, got {len(args)}"
        )
    env: dict[str, PartialPoint] = dict(CONSTANTS)
    env.update(zip(ast.params, args))
    trace: list[TraceEntry] = []
    first: Optional[Undefined] = None
    for b in ast.bindings:
        values = _apply(b.expr, env, b.targets[0], trace, record_steps)
        for name, v in zip(b.targets, values):
            if isinstance(v, Undefined):
                v = v.at(name)
                if first is None:
                    first = v
            env[name] = v
    outputs = {r: env[r] for r in ast.returns}
    bindings_env = {k: v for k, v in env.items() if k not in CONSTANTS}
    return ConstructionResult(outputs, bindings_env, trace, first)


def replay(result: ConstructionResult) -> bool:
    """Re-run every traced application and compare exact results."""
    for entry in result.trace:
        b = BUILTINS[entry.op]
        value = b.fn(*entry.args)
        value = value if b.outputs > 1 else (value,)
        for got, want in zip(value, entry.result):
            if isinstance(got, Undefined) or isinstance(want, Undefined):
                if not (isinstance(got, Undefined) and isinstance(want, Undefined)
                        and got.reason == want.reason):
                    return False
            elif got != want:
                return False
    return True


# ---------------------------------------------------------------------------
# SVG output


def _mid(lo: Fraction, hi: Fraction) -> Fraction:
    return (lo + hi) / 2


class _Canvas:
    def __init__(self, viewbox, bits: int):
        self.x0, self.y0, self.x1, self.y1 = (Fraction(v) for v in viewbox)
        if self.x1 <= self.x0 or self.y1 <= self.y0:
            raise ValueError("viewbox needs x0 < x1 and y0 < y1")
        self.bits = bits
        self.w = self.x1 - self.x0
        self.h = self.y1 - self.y0
        self.unit = max(self.w, self.h) / 200
        self.items: list[str] = []

    def num(self, v: Fraction) -> str:
        return f"{float(v):.6g}"

    def xy(self, p: Point) -> tuple[str, str]:
        x = _mid(*approx(p.x, self.bits))
        y = _mid(*approx(p.y, self.bits))
        # flip so that y grows upwards
        return self.num(x), self.num(self.y0 + self.y1 - y)

    def segment(self, p: Point, q: Point, cls: str):
        (x1, y1), (x2, y2) = self.xy(p), self.xy(q)
        self.items.append(f'<line class="{cls}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>')

    def circle(self, c: Point, through: Point):
        cx, cy = self.xy(c)
        lo, hi = approx(_d2(c, through), self.bits)
        r = float(_mid(lo, hi)) ** 0.5
        self.items.append(f'<circle class="circle" cx="{cx}" cy="{cy}" r="{r:.6g}"/>')

    def point(self, p: Point, label: Optional[str], cls: str = "point"):
        x, y = self.xy(p)
        s = self.num(self.unit)
        # a small diamond marker; circles are reserved for actual circles
        self.items.append(
            f'<path class="{cls}" d="M {x} {y} m 0 -{s} l {s} {s} l -{s} {s} l -{s} -{s} z"/>'
        )
        if label:
            dx = self.num(Fraction(x) + self.unit * 2)
            self.items.append(f'<text class="label" x="{dx}" y="{y}">{label}</text>')

    def render(self) -> str:
        vb = " ".join(self.num(v) for v in (self.x0, self.y0, self.w, self.h))
        sw = self.num(self.unit / 3)
        fs = self.num(self.unit * 5)
        style = (
            f"line{{stroke:#555;stroke-width:{sw}}}"
            f" .radical-axis{{stroke:#c33}}"
            f" .circle{{fill:none;stroke:#36c;stroke-width:{sw}}}"
            f" .point{{fill:#000}} .input{{fill:#080}}"
            f" .label{{font-size:{fs}px;font-family:sans-serif}}"
        )
        body = "\n  ".join(self.items)
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{vb}">\n'
            f"  <style>{style}</style>\n  {body}\n</svg>\n"
        )


def _d2(p: Point, q: Point):
    d = p - q
    return d.x * d.x + d.y * d.y


def _points(values) -> list[Point]:
    return [v for v in values if isinstance(v, Point)]


def _draw_entry(canvas: _Canvas, entry: TraceEntry):
    a, res = entry.args, entry.result
    if not all(isinstance(v, Point) for v in a + res):
        return
    op = entry.op
    out = res[0]
    if op == "ext":
        canvas.segment(a[0], out, "segment")
    elif op in ("il", "ilelim"):
        canvas.segment(a[0], out, "segment")
        canvas.segment(a[2], out, "segment")
    elif op in ("ip", "op", "cpasch"):
        canvas.segment(a[1], a[3], "segment")
        canvas.segment(a[0], a[4], "segment")
    elif op in ("ilc1", "ilc2"):
        canvas.segment(a[0], out, "segment")
        canvas.circle(a[2], a[3])
    elif op in ("Perp", "wit", "eperp", "eperp2", "uperp", "dperp", "gperp"):
        base = a[0] if op != "gperp" else a[2]
        canvas.segment(base, out, "segment")
    elif op == "midpoint":
        canvas.segment(a[0], a[1], "segment")
    elif op in ("ccirc", "radaxis"):
        canvas.circle(a[0], a[1])
        canvas.circle(a[2], a[3])
        y, z = res
        if y == z:
            # tangent or null circles: fall back to the axis points from the trace
            axis = _radical_axis_points(entry)
            if axis:
                y, z = axis
        if y != z:
            canvas.segment(y, z, "radical-axis")


def _radical_axis_points(entry: TraceEntry):
    for step in _walk(entry.steps):
        if step.op == "radaxis" and all(isinstance(v, Point) for v in step.result):
            return step.result
    return None


def _walk(steps: list[Step]):
    for s in steps:
        yield s
        yield from _walk(s.children)


def emit_svg(result: ConstructionResult, viewbox=(-5, -5, 5, 5), bits: int = 20,
             params: tuple[str, ...] = ()) -> str:
    """Render the evaluated construction as an SVG document."""
    bad = [k for k, v in result.outputs.items() if isinstance(v, Undefined)]
    if bad:
        raise UndefinedResult(f"output(s) {', '.join(bad)} undefined: {result.outputs[bad[0]]!r}")
    canvas = _Canvas(viewbox, bits)
    for entry in result.trace:
        _draw_entry(canvas, entry)
    labelled: set[str] = set()
    for name, v in result.env.items():
        if isinstance(v, Point):
            canvas.point(v, name, "point input" if name in params else "point")
            labelled.add(name)
    # unnamed intermediate points from nested applications
    for entry in result.trace:
        for v in entry.result:
            if isinstance(v, Point) and not any(
                isinstance(w, Point) and w == v for w in result.env.values()
            ):
                canvas.point(v, None)
    return canvas.render()
