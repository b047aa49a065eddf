import csv
import io
import json
import subprocess
import sys

from denjoy.cli import main
from denjoy.enclosure import parse_rational


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_build():
    code, text = run("build", "--rank", "w+1", "--interval", "0", "1", "--r", "1")
    assert code == 0
    d = json.loads(text)
    assert d["rank"] == "w+1" and d["interval"] == ["0", "1"] and d["r"] == "1"


def test_build_base_amplitude():
    code, text = run("build", "--rank", "0", "--interval", "0", "2", "--r", "3/2")
    d = json.loads(text)
    # A = 3 pi / 4
    assert code == 0 and d["kind"] == "Base" and d["amplitude_over_pi"] == "3/4"


def test_build_rejects_bad_ordinal(capsys):
    code, _ = run("build", "--rank", "e0")
    assert code == 3
    assert "error" in capsys.readouterr().err


def test_build_to_file_and_reuse(tmp_path):
    path = tmp_path / "f.json"
    assert run("build", "--rank", "1", "--out", str(path))[0] == 0
    code, text = run("sample", "--descriptor", str(path), "--grid", "3")
    assert code == 0 and len(text.strip().splitlines()) == 5


def test_sample_base():
    code, text = run("sample", "--rank", "0", "--grid", "4")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert code == 0 and len(rows) == 5
    mid = rows[2]
    assert mid["x"] == "1/2" and mid["F_lo"] == mid["F_hi"] == "1"
    for r in (rows[0], rows[-1]):
        assert r["F_lo"] == r["F_hi"] == "0"


def test_sample_rank1_has_tail_rows():
    code, text = run("--depth", "1", "sample", "--rank", "1", "--grid", "81")
    rows = list(csv.DictReader(io.StringIO(text)))
    widths = [parse_rational(r["F_hi"]) - parse_rational(r["F_lo"]) for r in rows]
    assert any(w > 0 for w in widths)
    assert widths[0] == widths[-1] == 0


def test_sample_json():
    code, text = run("sample", "--rank", "0", "--grid", "2", "--format", "json")
    rows = json.loads(text)
    assert [r["x"] for r in rows] == ["0", "1/2", "1"]


def test_verify_step_and_improper():
    code, text = run("verify", "--which", "step", "--rank", "1", "--depth", "3")
    assert code == 0 and json.loads(text)["pass"] is True
    code, text = run("verify", "--which", "improper", "--rank", "w", "--N", "8")
    assert code == 0 and len(json.loads(text)["checks"]) == 32


def test_verify_rank():
    code, text = run("verify", "--which", "rank", "--rank", "2")
    assert code == 0 and json.loads(text)["vanish_level"] == "3"


def test_verify_ftc():
    code, text = run("--seed", "3", "verify", "--which", "ftc", "--rank", "1", "--samples", "10")
    assert code == 0 and json.loads(text)["pass"] is True


def test_verify_kind_mismatch():
    assert run("verify", "--which", "step", "--rank", "w")[0] == 3
    assert run("verify", "--which", "improper", "--rank", "1")[0] == 3


def test_classify():
    assert run("classify", "--p", "X", "--q", "X^3") == (0, "XPower(2)\n")
    assert run("classify", "--p", "X^2+3*X+2") == (0, "Zero\n")
    assert run("classify", "--p", "X^")[0] == 3


def test_decide():
    assert run("decide", "A x . E y . x = X*y") == (1, "false\n")
    assert run("decide", "--sentence", "A x . x + 0 = x") == (0, "true\n")
    assert run("decide", "A x . x = ")[0] == 3


def test_decide_identical_across_modules():
    for s in ["A x . E y . x = X*y", "Inv(x = x, E y . x = X^2*y) > 5", "E x . A y . E z . y = X*z + x"]:
        outs = {run("decide", s, "--module", m) for m in ("C", "L1", "Den")}
        assert len(outs) == 1


def test_decide_budget_exit():
    s = "A a b c d e f . " + " & ".join(f"({v} = 0 | ~ {v} = X*{v})" for v in "abcdef")
    assert run("--budget", "4", "decide", s)[0] == 2


def test_gaps():
    code, text = run("gaps", "--rank", "1", "--set", "cantor", "--depth", "1")
    assert json.loads(text)["gaps"] == [["1/3", "2/3"]]
    code, text = run("gaps", "--rank", "1", "--depth", "2", "--format", "csv")
    assert code == 0 and text.startswith("lo,hi\n")
    code, text = run("gaps", "--rank", "1", "--depth", "2")
    assert {a["point"] for a in json.loads(text)["annotations"]} == {"0", "1"}


def test_usage_errors():
    assert run()[0] == 3
    assert run("nonsense")[0] == 3
    assert run("--depth", "99", "sample", "--rank", "0")[0] == 3
    assert run("sample")[0] == 3


def test_deterministic():
    a = run("verify", "--which", "ftc", "--rank", "w", "--samples", "20")
    b = run("verify", "--which", "ftc", "--rank", "w", "--samples", "20")
    assert a == b


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "denjoy.cli", "decide", "A x . X*x = X*x"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout == "true\n"
    proc = subprocess.run([sys.executable, "-m", "denjoy.cli", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0 and "decide" in proc.stdout
