import json
import re
import subprocess
import sys

import jsonschema

from curvzeta import cli
from curvzeta.report import load_schema
from curvzeta.ring import L
from curvzeta.zeta import HilbTable

SCHEMA = load_schema()


def run(capsys, *argv):
    status = cli.main(list(argv))
    out = capsys.readouterr()
    return status, out.out, out.err


def run_json(capsys, *argv):
    status, out, _ = run(capsys, *argv, "--json")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    return status, doc


def test_schema_is_valid():
    jsonschema.Draft202012Validator.check_schema(SCHEMA)


class TestCommands:
    def test_resolve(self, capsys):
        status, out, _ = run(capsys, "resolve", "y^2 - x^3")
        assert status == 0
        assert "edges: E1-E3, E2-E3" in out
        assert "strict transform meets: E3" in out
        status, doc = run_json(capsys, "resolve", "y^2 - x^3")
        triples = [(d["N"], d["nu"], d["m"]) for d in doc["resolution"]["divisors"]]
        assert triples == [(2, 1, 1), (3, 2, 1), (6, 4, 2)]

    def test_resolve_write_then_read(self, capsys, tmp_path):
        path = tmp_path / "cusp.res"
        assert run(capsys, "resolve", "y^2 - x^3", "--write", str(path))[0] == 0
        status, out, _ = run(capsys, "hilb", "--resolution", str(path), "--max-k", "5")
        assert status == 0
        assert "threshold: 3" in out

    def test_hilb(self, capsys):
        status, out, _ = run(capsys, "hilb", "y^2 - x^3", "--max-k", "5")
        assert status == 0
        rows = dict(re.findall(r"^(\d+)\s+(.+?)\s*$", out, re.M))
        assert rows == {"2": "L + 1", "3": "L", "4": "0", "5": "0"}
        assert out.strip().endswith("threshold: 3")

    def test_hilb_text_and_json_agree(self, capsys):
        for mode in ("euler", "weight", "q=3"):
            _, out, _ = run(capsys, "hilb", "(y^2 - x^3)*x", "--max-k", "6", "--specialize", mode)
            _, doc = run_json(capsys, "hilb", "(y^2 - x^3)*x", "--max-k", "6", "--specialize", mode)
            for row in doc["hilb"]["classes"]:
                line = next(l for l in out.splitlines() if l.split()[:1] == [str(row["k"])])
                assert row["class"] in line
                assert line.rstrip().endswith(str(row["specialized"]))

    def test_zeta_line(self, capsys):
        from curvzeta.parsing import parse_rational
        from curvzeta.ring import rat_eq

        status, out, _ = run(capsys, "zeta", "x")
        assert status == 0
        assert rat_eq(parse_rational(out.strip()), parse_rational("(L-1)*T*(L^2-T) / (L^4*(L-T))"))
        _, doc = run_json(capsys, "zeta", "x")
        assert parse_rational(doc["zeta"]["text"]) == parse_rational(out.strip())

    def test_qseries(self, capsys):
        status, out, _ = run(capsys, "qseries", "x", "--order", "4")
        assert status == 0
        assert out.startswith("Q(T) = T^2 / (1 - T)")
        _, doc = run_json(capsys, "qseries", "x", "--order", "4")
        assert [c["class"] for c in doc["qseries"]["coefficients"]] == ["0", "0", "1", "1", "1"]

    def test_qseries_verbatim(self, capsys):
        _, normal, _ = run(capsys, "qseries", "x")
        _, verbatim, _ = run(capsys, "qseries", "x", "--verbatim-constant")
        assert normal != verbatim

    def test_verify(self, capsys):
        status, out, _ = run(capsys, "verify", "y^2 - x^3", "--primes", "3,5", "--max-k", "5")
        assert status == 0
        assert "8/8 rows match" in out
        status, doc = run_json(capsys, "verify", "y^2 - x^3", "--primes", "3,5", "--max-k", "5")
        assert doc["verify"]["all_match"] and len(doc["verify"]["reports"]) == 8


class TestExitCodes:
    def test_usage_errors(self, capsys):
        for argv in (
            ["hilb", "x"],
            ["hilb", "x", "--max-k", "1"],
            ["verify", "x", "--primes", "4", "--max-k", "3"],
            ["hilb", "x", "--max-k", "3", "--specialize", "q=two"],
            ["zeta"],
            ["frobnicate"],
        ):
            assert run(capsys, *argv)[0] == 2, argv

    def test_syntax_error_json(self, capsys):
        status, doc = run_json(capsys, "zeta", "x + ")
        assert status == 2
        assert doc["ok"] is False and doc["error"]["code"] == "syntax_error"

    def test_zero_constant(self, capsys):
        status, _, err = run(capsys, "resolve", "x + 1")
        assert status == 2
        assert "zero_constant_violation" in err

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "zeta", "--resolution", str(tmp_path / "nope"))[0] == 2

    def test_curve_and_file(self, capsys, tmp_path):
        assert run(capsys, "zeta", "x", "--resolution", str(tmp_path / "f"))[0] == 2

    def test_computation_errors(self, capsys):
        status, doc = run_json(capsys, "resolve", "(y^2 - 2*x^2)^2 + x^5")
        assert status == 1 and doc["error"]["code"] == "irrational_center"
        status, doc = run_json(capsys, "verify", "1/3*x + y", "--primes", "3", "--max-k", "3")
        assert status == 1 and doc["error"]["code"] == "bad_reduction"
        assert run(capsys, "resolve", "x^2*y")[0] == 1

    def test_mismatch(self, capsys, monkeypatch):
        monkeypatch.setattr(cli, "hilb_recursion", lambda res, k: HilbTable((L + 1, L**2), k))
        status, doc = run_json(capsys, "verify", "y^2 - x^3", "--primes", "3", "--max-k", "3")
        assert status == 3
        assert doc["ok"] is False and not doc["verify"]["all_match"]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "curvzeta", "hilb", "x", "--max-k", "3", "--json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["hilb"]["classes"][0]["class"] == "1"
