from importlib import resources

import pytest

from realaut.cli import main


def fixture(name):
    return str(resources.files("realaut.fixtures") / f"{name}.aut")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_build_and_extract_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "build", "--set", "(1/3,2] U {3}", "--base", "2")
    assert code == 0 and out.startswith("base 2")
    path = tmp_path / "a.aut"
    path.write_text(out)
    code, out, _ = run(capsys, "extract", str(path))
    assert (code, out.strip()) == (0, "(1/3,2] U {3}")


def test_build_fractional(capsys):
    code, out, _ = run(capsys, "build", "--set", "[0,1/2]", "--kind", "fractional")
    assert code == 0 and "kind fractional" in out


def test_minimize_prints_morphism(capsys):
    code, out, _ = run(capsys, "minimize", fixture("fig1"))
    assert code == 0
    head, morph = out.split("# morphism\n")
    assert head.startswith("base 2")
    assert all(line.startswith("# ") and " -> " in line for line in morph.splitlines())


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", fixture("fig2"))
    assert code == 0
    assert [line.split(":")[0] for line in out.splitlines()] == ["Q_empty", "Q_01", "Q_inf", "Q_nat", "Q_fra"]


def test_decide_simple(capsys):
    assert run(capsys, "decide-simple", fixture("fig2"))[:2] == (0, "yes\n")
    code, out, _ = run(capsys, "decide-simple", fixture("fig6"))
    assert code == 2 and out.strip() == "no (false negative possible: input not saturated)"


def test_extract_fig5(capsys):
    assert run(capsys, "extract", fixture("fig5"))[1].strip() == "[1/4,1/3) U {11/24} U {2/3}"


@pytest.mark.parametrize("fmt", ["infix", "prefix"])
def test_formula_and_eval(capsys, tmp_path, fmt):
    code, out, err = run(capsys, "formula", fixture("fig2"), "--format", fmt, "--length")
    assert code == 0 and err.startswith("# length ")
    path = tmp_path / "f.txt"
    path.write_text(out)
    assert run(capsys, "eval", str(path), "--x", "5/3")[:2] == (0, "true\n")
    assert run(capsys, "eval", str(path), "--x", "1/3")[:2] == (2, "false\n")


def test_eval_automaton(capsys):
    args = ["eval", fixture("fig2"), "--automaton", "--shape", "exists-forall"]
    assert run(capsys, *args, "--x", "4")[0] == 0
    assert run(capsys, *args, "--x", "8/3")[0] == 2


def test_accepts(capsys):
    assert run(capsys, "accepts", fixture("fig2"), "--u", ".", "--v", "1")[:2] == (0, "true\n")
    assert run(capsys, "accepts", fixture("fig2"), "--u", "011.", "--v", "10")[:2] == (2, "false\n")


def test_check_saturated(capsys):
    assert run(capsys, "check-saturated", fixture("fig2"))[:2] == (0, "saturated\n")
    code, out, _ = run(capsys, "check-saturated", fixture("fig6"))
    assert code == 2 and out.startswith("not saturated:")
    assert "accepted 01.(0)" in out and "rejected 1.(0)" in out


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0 and "FAIL" not in out


def test_bench(capsys):
    code, out, _ = run(capsys, "bench", "--sizes", "10,20", "--repeat", "1")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "n,micros" and len(lines) == 3
    assert [int(line.split(",")[0]) for line in lines[1:]] == [14, 24]


def test_errors_exit_1(capsys, tmp_path):
    bad = tmp_path / "bad.aut"
    bad.write_text("base 2\nkind real\n")
    code, _, err = run(capsys, "classify", str(bad))
    assert code == 1 and err.startswith("error:")
    assert run(capsys, "classify", str(tmp_path / "missing.aut"))[0] == 1
    assert run(capsys, "build", "--set", "(1,")[0] == 1
