import json
import subprocess
import sys

import pytest

from rctarski.cli import main
from rctarski.verify import MIDPOINT_SCRIPT


@pytest.fixture
def script(tmp_path):
    path = tmp_path / "mid.tgs"
    path.write_text(MIDPOINT_SCRIPT)
    return path


def _args(tmp_path, obj):
    path = tmp_path / "pts.json"
    path.write_text(json.dumps(obj))
    return str(path)


def test_run_outputs_json(script, tmp_path, capsys):
    pts = _args(tmp_path, [{"x": "0", "y": "0"}, {"x": "2", "y": "0"}, {"x": "0", "y": "1"}])
    assert main(["run", str(script), "--args", pts]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out == {"outputs": {"m": {"x": "1", "y": "0"}}}


def test_run_named_args_trace_svg(script, tmp_path, capsys):
    pts = _args(tmp_path, {"a": ["0", "0"], "b": ["2", "2"], "s": ["0", "1"]})
    svg = tmp_path / "m.svg"
    rc = main(["run", str(script), "--args", pts, "--trace", "--svg", str(svg),
               "--viewbox=-1,-1,3,3"])
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    assert out["outputs"]["m"] == {"x": "1", "y": "1"}
    assert [t["binding"] for t in out["trace"]][-1] == "m"
    assert svg.read_text().startswith("<svg")


def test_run_undefined_exit_2(script, tmp_path, capsys):
    pts = _args(tmp_path, {"a": ["1", "1"], "b": ["1", "1"], "s": ["0", "1"]})
    assert main(["run", str(script), "--args", pts]) == 2
    assert json.loads(capsys.readouterr().out) == {"binding": "p", "reason": "NullSegment"}


def test_run_missing_param(script, tmp_path, capsys):
    pts = _args(tmp_path, {"a": ["1", "1"]})
    assert main(["run", str(script), "--args", pts]) == 1
    assert "missing points for b, s" in capsys.readouterr().err


def test_parse_normalizes(tmp_path, capsys):
    src = tmp_path / "f.tgs"
    src.write_text("f( a ){\n  x=e(a)  # c\n return x\n}\n")
    assert main(["parse", str(src)]) == 0
    assert capsys.readouterr().out == "f(a){\n   x = e(a)\n   return x\n}\n"


def test_parse_error_exit_1(tmp_path, capsys):
    src = tmp_path / "bad.tgs"
    src.write_text("f(a){\n x = ext(a)\n return x\n}\n")
    assert main(["parse", str(src)]) == 1
    assert "line 2" in capsys.readouterr().err


def test_usage_errors():
    assert main([]) == 1
    assert main(["check", "--suite", "nosuch"]) == 1
    assert main(["--help"]) == 0


def test_check_writes_json_and_figure(tmp_path, capsys):
    report = tmp_path / "r.json"
    assert main(["check", "--suite", "degenerate", "--seed", "4", "--trials", "10",
                 "--json", str(report)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[-1].startswith("TOTAL\tdegenerate\tpassed=60\t")
    assert all(len(line.split("\t")) == 5 for line in lines)
    data = json.loads(report.read_text())
    assert data["suite"] == "degenerate" and data["failures"] == []
    png = report.with_suffix(".png")
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_module_entry_point(script):
    proc = subprocess.run([sys.executable, "-m", "rctarski", "parse", str(script)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("midpoint(a,b,s){")
