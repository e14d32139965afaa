"""Command line: run and parse construction scripts, and run verification suites.

Exit codes: 0 success, 1 usage or parse error, 2 undefined output (``run``)
or failed propositions (``check``).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .geom import Point
from .primitives import Undefined
from .script import ScriptError, emit_svg, evaluate, parse, print_script
from . import verify


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _load_args(path: str, params) -> list:
    data = json.loads(_read(path))
    if isinstance(data, dict) and not {"x", "y"} <= set(data):
        missing = [p for p in params if p not in data]
        if missing:
            raise ValueError(f"missing points for {', '.join(missing)}")
        data = [data[p] for p in params]
    elif isinstance(data, dict):
        data = [data]
    return [Point.from_json(p) for p in data]


def _viewbox(text: str):
    parts = [Fraction(p) for p in text.split(",")]
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("viewbox needs x0,y0,x1,y1")
    return tuple(parts)


def _point_json(v):
    if isinstance(v, Undefined):
        return {"undefined": v.reason.value, "binding": v.binding}
    return v.to_json()


def cmd_run(ns) -> int:
    ast = parse(_read(ns.script))
    args = _load_args(ns.args, ast.params) if ns.args else []
    result = evaluate(ast, args, record_steps=bool(ns.svg))
    bad = [v for v in result.outputs.values() if isinstance(v, Undefined)]
    if bad:
        u = bad[0]
        print(json.dumps({"binding": u.binding, "reason": u.reason.value}, sort_keys=True))
        return 2
    out = {"outputs": {k: _point_json(v) for k, v in result.outputs.items()}}
    if ns.trace:
        out["trace"] = [
            {
                "binding": e.binding,
                "op": e.op,
                "args": [_point_json(a) for a in e.args],
                "result": [_point_json(r) for r in e.result],
            }
            for e in result.trace
        ]
    print(json.dumps(out, sort_keys=True, indent=2))
    if ns.svg:
        Path(ns.svg).write_text(emit_svg(result, ns.viewbox, ns.bits, ast.params))
    return 0


def cmd_parse(ns) -> int:
    sys.stdout.write(print_script(parse(_read(ns.script))))
    return 0


def _summary_rows(report: dict):
    suites = report["suites"] if report["suite"] == "all" else {report["suite"]: report}
    for name, rep in suites.items():
        for prop, counts in rep["propositions"].items():
            yield name, prop, counts["passed"], counts["skipped"], counts["failed"]


def write_figure(report: dict, path: Path) -> None:
    """Bar chart of passed and skipped samples per proposition."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    rows = list(_summary_rows(report))
    labels = [f"{s}/{p}" for s, p, *_ in rows]
    passed = [r[2] for r in rows]
    skipped = [r[3] for r in rows]
    failed = [r[4] for r in rows]
    height = max(2.5, 0.22 * len(rows) + 1)
    fig, ax = plt.subplots(figsize=(8, height))
    ys = range(len(rows))
    ax.barh(ys, passed, color="#4a7", label="passed")
    ax.barh(ys, failed, left=passed, color="#c33", label="failed")
    ax.barh(ys, skipped, left=[p + f for p, f in zip(passed, failed)], color="#bbb",
            label="skipped (hypothesis)")
    ax.set_yticks(list(ys))
    ax.set_yticklabels(labels, fontsize=7)
    ax.invert_yaxis()
    ax.set_xlabel("samples")
    ax.set_title(f"suite {report['suite']}, seed {report['seed']}, {report['trials']} trials")
    ax.legend(loc="lower right", fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=100, metadata={"Software": None})
    plt.close(fig)


def cmd_check(ns) -> int:
    report = verify.report(ns.suite, ns.seed, ns.trials)
    for suite, prop, passed, skipped, failed in _summary_rows(report):
        print(f"{suite}\t{prop}\tpassed={passed}\tskipped={skipped}\tfailed={failed}")
    nfail = len(report["failures"])
    print(f"TOTAL\t{ns.suite}\tpassed={report['passed']}\tskipped={report['skipped']}\tfailed={nfail}")
    if ns.json:
        path = Path(ns.json)
        path.write_text(verify.dumps(report))
        write_figure(report, path.with_suffix(".png"))
    return 0 if nfail == 0 else 2


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rctarski", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="evaluate a construction script")
    run.add_argument("script")
    run.add_argument("--args", help="JSON list of points, or an object keyed by parameter")
    run.add_argument("--trace", action="store_true", help="include every operator application")
    run.add_argument("--svg", help="write a diagram of the construction")
    run.add_argument("--bits", type=int, default=20, help="precision of SVG coordinates")
    run.add_argument("--viewbox", type=_viewbox, default=(-5, -5, 5, 5), help="x0,y0,x1,y1")
    run.set_defaults(fn=cmd_run)

    p = sub.add_parser("parse", help="check a script and print its normal form")
    p.add_argument("script")
    p.set_defaults(fn=cmd_parse)

    chk = sub.add_parser("check", help="run a verification suite")
    chk.add_argument("--suite", default="all", choices=["all", *verify.SUITES])
    chk.add_argument("--seed", type=int, default=0)
    chk.add_argument("--trials", type=int, default=100)
    chk.add_argument("--json", help="write the JSON report here, and a PNG chart beside it")
    chk.set_defaults(fn=cmd_check)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        return ns.fn(ns)
    except (ScriptError, ValueError, OSError, KeyError, verify.ResampleBudgetExhausted) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
