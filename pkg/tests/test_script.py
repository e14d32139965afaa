from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from rctarski.geom import Point
from rctarski.primitives import Reason, Undefined
from rctarski.script import (
    BUILTINS, Apply, ArgumentCountMismatch, ArityError, Binding, Rebinding, ScriptAst,
    ScriptSyntaxError, UnboundIdentifier, UndefinedResult, desugar, emit_svg, evaluate,
    parse, print_script, replay, tokenize,
)
from rctarski.verify import MIDPOINT_SCRIPT

from conftest import points

# verbatim block, apart from indentation
VERBATIM_MIDPOINT = """
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

A, B_, S = Point(0, 0), Point(2, 0), Point(0, 1)


def test_midpoint_script_parses_unchanged():
    ast = parse(VERBATIM_MIDPOINT)
    assert ast.name == "midpoint" and ast.params == ("a", "b", "s")
    assert [b.targets[0] for b in ast.bindings] == list("pwvqtrm")
    assert ast == parse(MIDPOINT_SCRIPT)
    nested = ast.bindings[5].expr.args[0]
    assert isinstance(nested, Apply) and nested.op == "ext"


def test_midpoint_script_runs():
    res = evaluate(parse(VERBATIM_MIDPOINT), [A, B_, S])
    assert res.outputs == {"m": Point(1, 0)}
    assert res.defined and replay(res)


def test_whitespace_and_comments_ignored():
    src = "# header\nf( a , b ){\n\n  x = e( a )   # note\n  return x , b\n}\n"
    ast = parse(src)
    assert ast.returns == ("x", "b")
    assert parse(print_script(ast)) == ast


def test_multi_output_binding():
    ast = parse("f(x,a,b,w){\n foot, head = uperp(x,a,b,w)\n return foot, head\n}")
    res = evaluate(ast, [Point(1, 3), A, B_, S])
    assert res.outputs["foot"] == Point(1, 0)


def test_constants_are_bound():
    res = evaluate(parse("g(){\n c = center(alpha,beta,gamma)\n return c\n}"), [])
    assert res.outputs["c"] == Point(Fraction(1, 2), Fraction(1, 2))


@pytest.mark.parametrize("src,exc", [
    ("f(a){\n x = ext(a)\n return x\n}", ArityError),
    ("f(a){\n x = nosuch(a)\n return x\n}", UnboundIdentifier),
    ("f(a){\n x = e(y)\n return x\n}", UnboundIdentifier),
    ("f(a){\n x = e(a)\n x = e(a)\n return x\n}", Rebinding),
    ("f(a){\n a = e(a)\n return a\n}", Rebinding),
    ("f(a,b,c,d){\n x = e(eperp(a,b,c,d))\n return x\n}", ArityError),
    ("f(a,b,c,d){\n x = eperp(a,b,c,d)\n return x\n}", ArityError),
    ("f(a){\n x = e(a)\n return y\n}", UnboundIdentifier),
    ("f(a){\n x = e(a)\n}", ScriptSyntaxError),
    ("f(a){\n x = e(a) return x\n}", ScriptSyntaxError),
    ("f(a){\n x = e(a\n return x\n}", ScriptSyntaxError),
    ("f(a){\n x = e(a) $\n return x\n}", ScriptSyntaxError),
])
def test_static_errors(src, exc):
    with pytest.raises(exc):
        parse(src)


def test_syntax_error_position():
    with pytest.raises(ScriptSyntaxError) as info:
        parse("f(a){\n x = e(a))\n return x\n}")
    assert (info.value.lineno, info.value.offset) == (2, 10)
    assert "line 2, column 10" in str(info.value)


def test_tokens_carry_positions():
    toks = tokenize("f(a){\n  x = e(a)")
    x = [t for t in toks if t.text == "x"][0]
    assert (x.line, x.col) == (2, 3)


def test_argument_count():
    with pytest.raises(ArgumentCountMismatch):
        evaluate(parse(VERBATIM_MIDPOINT), [A, B_])


def test_undefined_reports_origin():
    res = evaluate(parse(VERBATIM_MIDPOINT), [A, A, S])
    m = res.outputs["m"]
    assert isinstance(m, Undefined)
    assert m.reason is Reason.NullSegment and m.binding == "p"
    assert res.undefined == m


def test_desugar_lifts_nested_calls():
    flat, origin = desugar(parse(VERBATIM_MIDPOINT))
    assert len(flat.bindings) == 8
    assert all(isinstance(a, str) for b in flat.bindings for a in b.expr.args)
    assert list(origin.values()) == ["r"]
    assert evaluate(flat, [A, B_, S]).outputs == {"m": Point(1, 0)}


def test_svg_output():
    res = evaluate(parse(VERBATIM_MIDPOINT), [A, B_, S], record_steps=True)
    svg = emit_svg(res, (-1, -2, 3, 2), 20, ("a", "b", "s"))
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    assert svg.count('class="point"') >= 4
    assert ">m</text>" in svg


def test_svg_circles_for_ccirc():
    ast = parse("f(s,c,t,k,r){\n y, z = ccirc(s,c,t,k,r)\n return y, z\n}")
    pts = [Point(0, 0), Point(2, 0), Point(3, 0), Point(1, 0), Point(0, 1)]
    svg = emit_svg(evaluate(ast, pts, record_steps=True))
    assert svg.count("<circle") == 2
    assert svg.count('class="radical-axis"') == 1


def test_svg_refuses_undefined():
    res = evaluate(parse(VERBATIM_MIDPOINT), [A, A, S], record_steps=True)
    with pytest.raises(UndefinedResult):
        emit_svg(res)


# generated scripts ---------------------------------------------------------

CHEAP = ["ext", "il", "center", "ilc1", "ilc2", "offline", "e"]


@st.composite
def scripts(draw, nested=True):
    params = ("a", "b", "c")
    bound = list(params) + ["alpha"]
    bindings = []

    def arg(depth):
        if nested and depth < 1 and draw(st.integers(0, 4)) == 0:
            return application(depth + 1)
        return draw(st.sampled_from(bound))

    def application(depth):
        op = draw(st.sampled_from(CHEAP))
        return Apply(op, tuple(arg(depth) for _ in range(BUILTINS[op].arity)))

    for i in range(draw(st.integers(1, 5))):
        bindings.append(Binding((f"x{i}",), application(0)))
        bound.append(f"x{i}")
    returns = tuple(draw(st.lists(st.sampled_from(bound[4:]), min_size=1, max_size=2,
                                  unique=True)))
    return ScriptAst("gen", params, tuple(bindings), returns)


@given(scripts())
def test_print_parse_round_trip(ast):
    assert parse(print_script(ast)) == ast


@settings(max_examples=25)
@given(scripts(), points(), points(), points())
def test_evaluation_deterministic_and_replayable(ast, a, b, c):
    r1 = evaluate(ast, [a, b, c])
    r2 = evaluate(ast, [a, b, c])
    assert r1.outputs == r2.outputs
    assert replay(r1)
    flat, origin = desugar(ast)
    for k, v in evaluate(flat, [a, b, c]).outputs.items():
        if isinstance(v, Undefined):
            v = Undefined(v.reason, origin.get(v.binding, v.binding))
        assert v == r1.outputs[k]


@settings(max_examples=25)
@given(scripts(nested=False), points(), points())
def test_undefined_argument_propagates(ast, b, c):
    u = Undefined(Reason.Collinear, "a")
    res = evaluate(ast, [u, b, c])
    deps = {"a"}
    for bd in ast.bindings:
        if any(x in deps for x in bd.expr.args):
            deps.add(bd.targets[0])
            assert isinstance(res.env[bd.targets[0]], Undefined)
    for name in ast.returns:
        if name in deps:
            assert isinstance(res.outputs[name], Undefined)
    if ast.bindings[0].expr.args[0] == "a":
        assert res.env["x0"] == u
