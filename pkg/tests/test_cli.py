import csv
import io
import subprocess
import sys
from fractions import Fraction as F

import pytest

from qstar.cli import main
from qstar.gfun import FunctionSpec, eval_at
from qstar.specfile import dump_spec


def write_spec(tmp_path, name, f):
    p = tmp_path / f"{name}.json"
    p.write_text(dump_spec(f), encoding="utf-8")
    return str(p)


@pytest.fixture
def specs(tmp_path):
    return {
        "identity": write_spec(tmp_path, "identity", FunctionSpec.uniform(0)),
        "cantor": write_spec(tmp_path, "cantor", FunctionSpec.uniform(F(1, 2))),
        "flip": write_spec(tmp_path, "flip", FunctionSpec.uniform(1)),
    }


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_classify(specs):
    code, text = run("classify", "--spec", specs["flip"])
    assert code == 0
    assert text.splitlines()[0] == "regime: NowhereMonotone"


def test_eval_rational(specs):
    assert run("eval", "--spec", specs["cantor"], "--x", "1/4") == (0, "1/3\n")


def test_eval_decimal_is_exact(specs):
    # "0.1" is read as 1/10, not its binary float
    code, text = run("eval", "--spec", specs["identity"], "--x", "0.1")
    assert (code, text) == (0, "1/10\n")


def test_eval_seq(specs):
    assert run("eval", "--spec", specs["flip"], "--seq", "(1)") == (0, "1/2\n")


def test_eval_tol(specs):
    code, text = run("eval", "--spec", specs["cantor"], "--x", "0.25", "--tol", "1e-12")
    assert code == 0 and abs(float(text) - 1 / 3) <= 1e-12


def test_encode(specs):
    code, text = run("encode", "--spec", specs["identity"], "--x", "1/2", "--depth", "4")
    assert code == 0
    assert "word:  1111" in text and "full:  (1)" in text


def test_increment_and_range(specs):
    assert run("increment", "--spec", specs["flip"], "--word", "11") == (0, "1/9\n")
    code, text = run("range", "--spec", specs["flip"], "--word", "1")
    assert code == 0
    assert "min: 1/3 at right" in text.lower() and "max: 2/3 at left" in text.lower()


def test_levelset(specs):
    code, text = run("levelset", "--spec", specs["cantor"], "--y", "1/2", "--depth", "4")
    assert code == 0
    assert "regions:" in text and "root count lower bound:" in text


def test_graph_csv_exact(specs, tmp_path):
    out = tmp_path / "g.csv"
    code, _ = run("graph", "--spec", specs["flip"], "--rank", "2", "--exact", "--out", str(out))
    assert code == 0
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["x", "y"]
    assert len(rows) == 1 + 3**2 + 1
    f = FunctionSpec.uniform(1)
    for x, y in rows[1:]:
        assert eval_at(f, F(x)) == F(y)


def test_graph_csv_digits(specs):
    code, text = run("graph", "--spec", specs["identity"], "--rank", "1", "--digits", "4")
    assert code == 0
    assert text.splitlines() == ["x,y", "0,0", "0.3333,0.3333", "0.6667,0.6667", "1,1"]


def test_ifs(specs):
    code, text = run("ifs", "--spec", specs["flip"])
    assert code == 0 and "phi_1: x' = 1/3*x + 1/3,  y' = -1/3*y + 2/3" in text
    assert run("ifs", "--spec", specs["cantor"])[0] == 2


def test_dimension(specs):
    code, text = run("dimension", "--spec", specs["identity"], "--scales", "27,81")
    assert code == 0
    assert "boxes=27" in text and "estimate: 1.000000" in text


def test_verify_passes(specs):
    code, text = run("verify", "--spec", specs["flip"], "--rank", "3")
    assert code == 0
    assert text.rstrip().endswith("0 failure(s)")


def test_verify_failure_exit_code(specs, monkeypatch):
    from qstar import verify

    bad = verify.CheckResult("broken", False, "forced")
    monkeypatch.setattr(verify, "run_checks", lambda f, rank, seed: [bad])
    code, text = run("verify", "--spec", specs["identity"])
    assert code == 1 and "FAIL  broken" in text


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["nonsense"],
        ["classify"],
        ["eval", "--spec", "{identity}", "--x", "abc"],
        ["eval", "--spec", "{identity}", "--x", "3/2"],
        ["eval", "--spec", "{identity}"],
        ["increment", "--spec", "{identity}", "--word", "13"],
        ["graph", "--spec", "{identity}", "--rank", "0"],
        ["dimension", "--spec", "{identity}", "--scales", "1"],
        ["classify", "--spec", "/nonexistent/spec.json"],
    ],
)
def test_usage_errors(specs, argv, capsys):
    argv = [a.format(**specs) for a in argv]
    assert run(*argv)[0] == 2


def test_bad_spec_file(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text('{"matrix": {"period": [["1/2","1/2","1/2"]]}, "epsilon": {"period": ["0"]}}')
    assert run("classify", "--spec", str(p))[0] == 2
    assert "column does not sum to 1" in capsys.readouterr().err


def test_deterministic(specs):
    a = run("levelset", "--spec", specs["flip"], "--y", "1/2", "--depth", "6")
    b = run("levelset", "--spec", specs["flip"], "--y", "1/2", "--depth", "6")
    assert a == b


def test_module_entry_point(specs):
    proc = subprocess.run(
        [sys.executable, "-m", "qstar", "eval", "--spec", specs["cantor"], "--x", "1/4"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout == "1/3\n"
