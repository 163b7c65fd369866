import json
import subprocess
import sys

import pytest

from novikov.cli import EXIT_FAILS, EXIT_INVALID, EXIT_IO, EXIT_OK, main
from novikov.serialize import complex_from_json


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out) if out else None, err


def fx(fixtures, name):
    return str(fixtures / name)


class TestBetti:
    def test_circle_at_one(self, capsys, fixtures):
        code, out, _ = run(capsys, "betti", "--input", fx(fixtures, "circle.json"), "--at", "u=1")
        assert code == EXIT_OK and "(1, 1)" in out

    def test_circle_generic(self, capsys, fixtures):
        code, rep, _ = run_json(capsys, "betti", "--input", fx(fixtures, "circle.json"))
        assert code == EXIT_OK and rep["results"]["betti"] == [0, 0]
        assert rep["exact_arithmetic"] is True and rep["schema"] == "report/v1"

    def test_torus_generic(self, capsys, fixtures):
        code, rep, _ = run_json(capsys, "generic", "--input", fx(fixtures, "torus.json"))
        assert rep["results"]["betti"] == [0, 0, 0] and rep["results"]["euler"] == 0

    def test_rational_point(self, capsys, fixtures):
        code, rep, _ = run_json(capsys, "betti", "--input", fx(fixtures, "circle_rho2.json"), "--at", "1/2")
        assert rep["results"] == {"at": "1/2", "betti": [1, 1], "generic": False}

    def test_zero_point(self, capsys, fixtures):
        code, _, err = run(capsys, "betti", "--input", fx(fixtures, "circle.json"), "--at", "u=0")
        assert code == EXIT_INVALID and "ZeroSpecialization" in err


class TestJumps:
    def test_circle(self, capsys, fixtures):
        code, rep, _ = run_json(capsys, "jumps", "--input", fx(fixtures, "circle_rho2.json"))
        (root,) = rep["results"]["roots"]
        assert root["exact"] == "1/2" and root["betti"] == [1, 1] and root["confirmed"]
        assert "approx_non_authoritative" not in root

    def test_float_is_labelled(self, capsys, tmp_path):
        code, out, _ = run(capsys, "corpus", "mapping_torus", "--A", "[[2,1],[1,1]]")
        path = tmp_path / "anosov.json"
        path.write_text(out)
        code, rep, _ = run_json(capsys, "jumps", "--input", str(path), "--float")
        assert rep["float_rendering"] is True
        approx = [r["approx_non_authoritative"] for r in rep["results"]["roots"]]
        assert approx[0].startswith("0.38196601125") and approx[-1].startswith("2.6180339887")


class TestVerify:
    def test_bott_sphere(self, capsys, fixtures):
        code, out, _ = run(capsys, "verify", "--complex", fx(fixtures, "sphere.json"),
                           "--critical", fx(fixtures, "bott_sphere.critical.json"))
        assert code == EXIT_OK
        assert "Q(λ) = λ" in out and "verdict: Holds" in out

    def test_not_divisible_exits_three(self, capsys, fixtures):
        code, rep, _ = run_json(capsys, "verify", "--complex", fx(fixtures, "circle_flat.json"),
                                "--critical", fx(fixtures, "one_point.critical.json"))
        assert code == EXIT_FAILS
        assert rep["results"]["verdict"] == "Fails(NotDivisible)" and rep["results"]["Q"] is None

    def test_empty_critical_set(self, capsys, fixtures):
        for cx in ("circle.json", "torus.json"):
            code, rep, _ = run_json(capsys, "verify", "--complex", fx(fixtures, cx),
                                    "--critical", fx(fixtures, "empty.critical.json"))
            assert code == EXIT_OK and rep["results"]["Q"]["coeffs"] == []
            assert rep["results"]["euler_corollary"] is True

    def test_l2_mode(self, capsys, fixtures):
        code, rep, _ = run_json(capsys, "verify", "--complex", fx(fixtures, "circle.json"),
                                "--critical", fx(fixtures, "critical_circle.critical.json"), "--mode", "l2",
                                "--tower", fx(fixtures, "circle.tower.json"))
        assert code == EXIT_OK and rep["results"]["Q"]["coeffs"] == ["1/2"]
        code, rep, _ = run_json(capsys, "verify", "--complex", fx(fixtures, "circle.json"),
                                "--critical", fx(fixtures, "empty.critical.json"), "--mode", "l2")
        assert code == EXIT_OK and rep["results"]["Q"]["text"] == "0"

    def test_rational_data_fails_integer_mode(self, capsys, fixtures):
        code, rep, _ = run_json(capsys, "verify", "--complex", fx(fixtures, "circle.json"),
                                "--critical", fx(fixtures, "critical_circle.critical.json"))
        assert code == EXIT_FAILS and rep["results"]["verdict"] == "Fails(NonIntegralCoefficient(0))"

    def test_strong_inequalities_reported(self, capsys, fixtures):
        code, rep, _ = run_json(capsys, "verify", "--complex", fx(fixtures, "torus_flat.json"),
                                "--critical", fx(fixtures, "height_torus.critical.json"))
        assert rep["results"]["strong_inequalities"] == [True, True, True]


class TestLuck:
    def test_torus(self, capsys, fixtures):
        code, rep, _ = run_json(capsys, "luck", "--input", fx(fixtures, "torus_flat.json"),
                                "--tower", fx(fixtures, "torus.tower.json"))
        res = rep["results"]
        assert code == EXIT_OK and res["limit"] == [0, 0, 0] and res["rate_constant"] == [1, 2, 1]
        assert all(lv["oracle_agrees"] and lv["within_rate"] for lv in res["levels"])
        assert res["levels"][-1]["normalized"] == ["1/12", "1/6", "1/12"]

    def test_z2(self, capsys, fixtures):
        code, rep, _ = run_json(capsys, "luck", "--input", fx(fixtures, "torus_flat.json"),
                                "--tower", fx(fixtures, "torus_z2.tower.json"))
        assert code == EXIT_OK and rep["results"]["rate_constant"] is None

    def test_bad_tower(self, capsys, fixtures):
        code, _, err = run(capsys, "luck", "--input", fx(fixtures, "circle.json"),
                           "--tower", fx(fixtures, "bad_nesting.tower.json"))
        assert code == EXIT_INVALID and "nested" in err


class TestErrors:
    @pytest.mark.parametrize("name,fragment", [
        ("bad_flatness.json", "FlatnessViolation"),
        ("bad_boundary.json", "missing 1-cell 5"),
        ("bad_edge.json", "[1-cell 'e']"),
        ("bad_cocycle.json", "[2-cell 'r_t']"),
        ("bad_syntax.json", "not valid JSON"),
    ])
    def test_invalid_inputs(self, capsys, fixtures, name, fragment):
        code, out, err = run(capsys, "validate", "--input", fx(fixtures, name))
        assert code == EXIT_INVALID and out == ""
        assert fragment in err and name in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "generic", "--input", str(tmp_path / "absent.json"))
        assert code == EXIT_IO and "absent.json" in err

    def test_unknown_corpus(self, capsys):
        code, _, err = run(capsys, "corpus", "klein_bottle")
        assert code == EXIT_INVALID

    def test_bad_corpus_parameter(self, capsys):
        code, _, err = run(capsys, "corpus", "circle", "--colour", "2")
        assert code == EXIT_INVALID

    def test_non_invertible_mapping_torus(self, capsys):
        code, _, err = run(capsys, "corpus", "mapping_torus", "--A", "[[2]]")
        assert code == EXIT_INVALID and "invertible" in err


class TestCorpus:
    def test_circle_weight(self, capsys):
        code, out, _ = run(capsys, "corpus", "circle", "--weight", "1")
        data = json.loads(out)
        assert code == EXIT_OK and data["schema"] == "complex/v1"
        complex_from_json(data).novikov()

    def test_list(self, capsys):
        code, out, _ = run(capsys, "corpus", "list")
        assert "mapping_torus" in out and "trefoil_sum" in out

    def test_field_parameter(self, capsys):
        code, out, _ = run(capsys, "corpus", "trefoil_sum", "--eta", "z", "--field", "Q(zeta_6)")
        data = json.loads(out)
        assert data["bundle"]["field"] == "Q(zeta_6)"


def test_reports_are_deterministic(capsys, fixtures):
    argv = ["verify", "--complex", fx(fixtures, "sphere.json"), "--critical",
            fx(fixtures, "bott_sphere.critical.json"), "--json"]
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second
    assert json.loads(first)["inputs"][fx(fixtures, "sphere.json")]


def test_module_entry_point(fixtures):
    proc = subprocess.run([sys.executable, "-m", "novikov", "generic", "--input", fx(fixtures, "torus.json")],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "(0, 0, 0)" in proc.stdout
