import subprocess
import sys

import pytest

from agw.cli import main, run

from conftest import DATA


def d(name):
    return str(DATA / name)


def test_lang_gline():
    res = run(["lang", "--grammar", d("gline.agw"), "--mode", "t", "--max-cells", "8"])
    lines = res.out.splitlines()
    assert res.code == 0
    assert lines[:10][-1] == "L E S! E R" and len([l for l in lines if l.startswith("L ")]) == 10
    assert "complete: true" in lines


def test_lang_step_zero_on_a_halting_axiom(tmp_path):
    g = tmp_path / "empty.agw"
    g.write_text("format: agw/1\nterminals: a\naxiom: a\n")
    assert run(["lang", "--grammar", str(g), "--max-steps", "0"]).out.splitlines()[0] == "a"
    g.write_text("format: agw/1\nterminals: a\naxiom: a\nrule ins sel{0=a} put{1=a}\n")
    out = run(["lang", "--grammar", str(g), "--max-steps", "0"]).out
    assert out.splitlines()[0] == "complete: false"


def test_lang_on_a_psystem(tmp_path):
    out = tmp_path / "ab.aps"
    assert run(["compile", "pcp", "--in", d("ab.pcp"), "--out", str(out)]).code == 0
    res = run(["lang", "--ps", str(out), "--mode", "t", "--max-cells", "10"])
    assert res.out.splitlines()[0] == "L L' a a' a a' b b' R R'"
    rps = run(["run-ps", "--ps", str(out), "--max-cells", "10"])
    assert rps.out.startswith("results: 1\n  L L' a a' a a' b b' R R'\n")


@pytest.mark.parametrize("kind, src, expect", [
    ("arba2ps", "s2a.agw", ["max_norm: 1", "tree_height: 2", "simple: true"]),
    ("tm2g", "write_a.tm", ["max_norm: 2"]),
    ("pcp", "ab.pcp", ["insertion_only: true", "tree_height: 1"]),
])
def test_compile_audit(tmp_path, kind, src, expect):
    out = tmp_path / "out.txt"
    res = run(["compile", kind, "--in", d(src), "--out", str(out)])
    assert res.code == 0
    for line in expect:
        assert line in res.out.splitlines()
    again = tmp_path / "again.txt"
    run(["compile", kind, "--in", d(src), "--out", str(again)])
    assert out.read_bytes() == again.read_bytes()


def test_verify_examples(tmp_path):
    tm = tmp_path / "wa.agw"
    run(["compile", "tm2g", "--in", d("write_a.tm"), "--out", str(tm)])
    res = run(["verify", "--left", str(tm), "--right", "oracle:tm:" + d("write_a.tm"), "--max-cells", "5"])
    assert res.code == 0 and res.out.startswith("verdict: EQUAL")
    nosol = tmp_path / "nosol.aps"
    run(["compile", "pcp", "--in", d("nosol.pcp"), "--out", str(nosol)])
    res = run(["verify", "--left", str(nosol), "--right", "empty", "--max-cells", "8"])
    assert res.code == 0 and res.out.startswith("verdict: EQUAL")
    res = run(["verify", "--left", d("ba.agw"), "--right", "oracle:arba:" + d("ab.agw"),
               "--mode", "star", "--max-cells", "3"])
    assert res.code == 2 and res.out.startswith("verdict: DIFFER")


def test_verify_inconclusive_and_strict():
    args = ["verify", "--left", d("gline.agw"), "--right", "empty", "--mode", "star",
            "--max-cells", "5", "--max-steps", "1"]
    assert run(args).code == 0
    res = run(args + ["--strict"])
    assert res.code == 3 and res.out.startswith("verdict: INCONCLUSIVE")


def test_render():
    res = run(["render", "--array", "@-2 a @-1 a @3 a @5 a", "--shape"])
    assert res.out == "a a # # # a # a\t size=4 extent=7\n"


@pytest.mark.parametrize("args", [
    ["lang", "--grammar", "/nonexistent.agw"],
    ["lang"],
    ["render", "--array", "a$"],
    ["compile", "arba2ps", "--in", str(DATA / "gline.agw")],
    ["verify", "--left", "oracle:xx:" + str(DATA / "s2a.agw"), "--right", "empty", "--max-cells", "3"],
    ["verify", "--left", "empty", "--right", "empty"],
])
def test_input_errors_exit_1(args):
    res = run(args)
    assert res.code == 1 and res.err.startswith("agw: ")


def test_parse_error_reports_line(tmp_path):
    g = tmp_path / "bad.agw"
    g.write_text("format: agw/1\nterminals: a\naxiom: a\nrule ins sel{0=a} put{0=a}\n")
    res = run(["lang", "--grammar", str(g)])
    assert res.code == 1 and "line 4" in res.err


def test_main_and_module_entry_point(capsys):
    assert main(["render", "--array", "# a #"]) == 0
    assert capsys.readouterr().out == "a\n"
    proc = subprocess.run([sys.executable, "-m", "agw.cli", "render", "--array", "b"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "b\n"
