import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from lefschetz_lab.cli import main

ROOT = Path(__file__).resolve().parents[1]
MODELS = ROOT / "models"
DATA = ROOT / "tests" / "data"
GOLDEN = ROOT / "tests" / "golden"


def run(*argv, env=None, monkeypatch=None):
    out = io.StringIO()
    code = main([str(a) for a in argv], out=out)
    return code, out.getvalue()


@pytest.fixture(autouse=True)
def no_color(monkeypatch):
    monkeypatch.setenv("LEFSCHETZ_LAB_COLOR", "never")


class TestValidate:
    @pytest.mark.parametrize("name", ["heisenberg", "sol", "kt", "abelian"])
    def test_catalog_files(self, name):
        code, out = run("validate", MODELS / f"{name}.json")
        assert code == 0 and out.strip().endswith("valid")

    def test_jacobi_violation(self):
        code, out = run("validate", DATA / "jacobi_violation.json")
        assert code == 1
        assert "triple (1,2,3)" in out

    def test_zero_denominator(self, capsys):
        code, _ = run("validate", DATA / "bad_rational.json")
        assert code == 2
        assert "1/0" in capsys.readouterr().err

    def test_malformed(self):
        assert run("validate", DATA / "malformed.json")[0] == 2

    def test_missing_file(self, tmp_path):
        assert run("validate", tmp_path / "nope.json")[0] == 2

    def test_bad_arguments(self):
        assert run("frobnicate")[0] == 2
        assert run("report", MODELS / "sol.json", "--format", "xml")[0] == 2


class TestReport:
    def test_heisenberg_text(self):
        code, out = run("report", MODELS / "heisenberg.json")
        assert code == 0
        assert "H_B             (1, 2, 1)" in out
        assert "taut            true" in out
        assert "equivalent                                 true" in out

    def test_sol_json(self):
        code, out = run("report", MODELS / "sol.json", "--format", "json")
        data = json.loads(out)
        assert code == 0
        assert data["H_B"] == [1, 1, 0] and data["H_kappa"] == [0, 0, 0] and data["taut"] is False
        assert data["kappa"] == {"e1*": "1"}

    def test_kt_text(self):
        code, out = run("report", MODELS / "kt.json")
        assert code == 0
        assert "r=1: H^1 (3) -> H^3 (3), rank 2, NOT surjective" in out
        assert "NONE for class #2" in out

    @pytest.mark.parametrize("name", ["heisenberg", "sol", "kt", "abelian"])
    def test_golden(self, name):
        code, out = run("report", MODELS / f"{name}.json", "--format", "json")
        assert code == 0
        assert out == (GOLDEN / f"{name}.json").read_text()

    @pytest.mark.parametrize("name", ["heisenberg", "sol", "kt", "abelian"])
    def test_json_has_only_strings_ints_bools(self, name):
        def walk(x):
            assert not isinstance(x, float)
            if isinstance(x, dict):
                for v in x.values():
                    walk(v)
            elif isinstance(x, list):
                for v in x:
                    walk(v)
        walk(json.loads((GOLDEN / f"{name}.json").read_text()))

    def test_non_isoparametric(self):
        code, out = run("report", DATA / "non_isoparametric.json", "--format", "json")
        data = json.loads(out)
        assert code == 0
        assert data["isoparametric"] is False and data["H_kappa"] is None
        assert "not isoparametric" in data["hard_lefschetz"]["skipped"]

    def test_invalid_model(self):
        code, out = run("report", DATA / "jacobi_violation.json", "--format", "json")
        assert code == 1 and json.loads(out)["validation"]["ok"] is False


class TestIdentities:
    def test_sol_all_pass(self):
        code, out = run("identities", MODELS / "sol.json", "--seed", 7, "--count", 100)
        assert code == 0
        assert "FAIL" not in out and "0 fail" in out

    def test_non_isoparametric_skips(self):
        code, out = run("identities", DATA / "non_isoparametric.json", "--count", 5)
        assert code == 0
        assert "skipped: not isoparametric" in out
        line = next(l for l in out.splitlines() if l.startswith("laplacian_kappa"))
        assert "skipped: not isoparametric" in line

    def test_count_zero(self):
        code, out = run("identities", MODELS / "kt.json", "--count", 0)
        assert code == 0 and "0 fail" in out

    def test_byte_identical(self):
        a = run("identities", MODELS / "kt.json", "--seed", 11, "--count", 10, "--format", "json")
        b = run("identities", MODELS / "kt.json", "--seed", 11, "--count", 10, "--format", "json")
        assert a == b

    def test_negative_count(self):
        assert run("identities", MODELS / "kt.json", "--count", -1)[0] == 2


class TestHarmonic:
    def test_heisenberg(self):
        code, out = run("harmonic", MODELS / "heisenberg.json", "--degree", 1)
        assert code == 0
        assert out.splitlines() == ["class #1 [e1*]: e1*", "class #2 [e2*]: e2*"]

    def test_sol(self):
        code, out = run("harmonic", MODELS / "sol.json", "--degree", 1)
        assert code == 0 and out.strip() == "H_kappa^1 = 0, nothing to represent"

    def test_kt_degree3_none(self):
        code, out = run("harmonic", MODELS / "kt.json", "--degree", 3)
        assert code == 0 and out.count("NONE") == 1

    def test_kt_degree1_all_represented(self):
        code, out = run("harmonic", MODELS / "kt.json", "--degree", 1)
        assert code == 0 and "NONE" not in out

    def test_precondition_named(self, capsys):
        code, _ = run("harmonic", DATA / "non_isoparametric.json", "--degree", 1)
        assert code == 1
        assert "not isoparametric" in capsys.readouterr().err

    def test_degree_range(self):
        assert run("harmonic", MODELS / "sol.json", "--degree", 3)[0] == 2


class TestExportAndColor:
    @pytest.mark.parametrize("name,file", [("heisenberg_contact", "heisenberg"), ("sol_hyperbolic", "sol"),
                                           ("kt_product", "kt"), ("abelian_cosymplectic", "abelian")])
    def test_export_matches_shipped(self, name, file):
        code, out = run("export", name)
        assert code == 0 and out == (MODELS / f"{file}.json").read_text()

    def test_export_unknown(self):
        assert run("export", "nope")[0] == 2

    def test_color_always(self, monkeypatch):
        monkeypatch.setenv("LEFSCHETZ_LAB_COLOR", "always")
        _, out = run("validate", MODELS / "sol.json")
        assert "\033[32m" in out

    def test_color_never(self):
        _, out = run("validate", MODELS / "sol.json")
        assert "\033[" not in out


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lefschetz_lab.cli", "validate", str(DATA / "bad_rational.json")],
                          capture_output=True, text=True)
    assert proc.returncode == 2
