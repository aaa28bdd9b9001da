import json
import subprocess
import sys
from fractions import Fraction

import pytest

from gdet import io
from gdet.cli import main
from gdet.exact_algebra import DenseMatrix
from gdet.fields import GF, QQ
from gdet.mat_operator import LinearOperator, MonomialSpec, from_monomial, identity_operator
from gdet.permutations import PermutationSpec
from gdet.stab_engine import sample_member


def write(path, doc):
    path.write_text(io.dumps(doc))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def m22(tmp_path):
    return write(tmp_path / "a.json", io.matrix_to_json(DenseMatrix([[1, 2], [3, 4]])))


class TestIO:
    def test_matrix_round_trip(self, field, rng):
        A = DenseMatrix.random(3, 4, rng, field)
        assert io.matrix_from_json(json.loads(io.dumps(io.matrix_to_json(A)))) == A

    def test_rational_strings(self):
        doc = io.matrix_to_json(DenseMatrix([[Fraction(1, 2), -3]]))
        assert doc == {"field": "Q", "rows": 1, "cols": 2, "entries": [["1/2", "-3"]]}

    @pytest.mark.parametrize("bad", [0.5, "2/4", "1/-2", "x", 3])
    def test_rejects_non_exact(self, bad):
        with pytest.raises(ValueError):
            io.matrix_from_json({"field": "Q", "rows": 1, "cols": 1, "entries": [[bad]]})

    def test_prime_field_entries(self):
        A = io.matrix_from_json({"field": {"p": 7}, "rows": 1, "cols": 2, "entries": [[3, 6]]})
        assert A.field == GF(7)
        with pytest.raises(Exception):
            io.matrix_from_json({"field": {"p": 7}, "rows": 1, "cols": 1, "entries": [[7]]})

    def test_shape_checked(self):
        with pytest.raises(ValueError):
            io.matrix_from_json({"field": "Q", "rows": 2, "cols": 1, "entries": [["1"]]})

    def test_operator_and_spec_round_trip(self, field):
        T, elem = sample_member(4, field, seed=5)
        assert io.operator_from_json(json.loads(io.dumps(io.operator_to_json(T)))) == T
        spec = io.spec_from_json(json.loads(io.dumps(io.spec_to_json(elem.spec))), field)
        assert spec == elem.spec

    def test_dumps_is_stable(self):
        assert io.dumps({"b": 1, "a": [1]}) == '{\n  "a": [\n    1\n  ],\n  "b": 1\n}\n'


class TestEval:
    def test_examples(self, capsys, m22, tmp_path):
        assert run(capsys, "eval", "--matrix", m22, "--alpha", "1", "--beta", "-1")[:2] == (0, "-2\n")
        assert run(capsys, "eval", "--matrix", m22, "--alpha", "1", "--beta", "1")[:2] == (0, "10\n")
        i3 = write(tmp_path / "i3.json", io.matrix_to_json(DenseMatrix.identity(3)))
        assert run(capsys, "eval", "--matrix", i3, "--alpha", "1", "--beta", "0")[:2] == (0, "1\n")

    def test_specializations(self, capsys, m22):
        assert run(capsys, "eval", "--matrix", m22, "--det")[1] == "-2\n"
        assert run(capsys, "eval", "--matrix", m22, "--perm")[1] == "10\n"
        assert run(capsys, "eval", "--matrix", m22, "--even")[1] == "4\n"
        assert run(capsys, "eval", "--matrix", m22, "--odd")[1] == "6\n"

    def test_rational_params_json(self, capsys, m22):
        code, out, _ = run(capsys, "eval", "--json", "--matrix", m22, "--alpha", "1/2", "--beta", "-3/4")
        assert code == 0
        assert json.loads(out) == {"value": "-5/2", "field": "Q"}

    def test_usage_errors(self, capsys, m22, tmp_path):
        assert run(capsys, "eval", "--matrix", m22)[0] == 2
        assert run(capsys, "eval", "--matrix", m22, "--alpha", "0.5", "--beta", "1")[0] == 2
        assert run(capsys, "eval", "--matrix", str(tmp_path / "missing.json"), "--det")[0] == 2
        bad = tmp_path / "bad.json"
        bad.write_text('{"field": "Q", "rows": 1, "cols": 1, "entries": [[0.5]]}')
        code, out, err = run(capsys, "eval", "--json", "--matrix", str(bad), "--det")
        assert code == 2 and out == "" and err
        assert run(capsys, "bogus")[0] == 2

    def test_computation_error(self, capsys, tmp_path):
        rect = write(tmp_path / "r.json", io.matrix_to_json(DenseMatrix([[1, 2, 3]])))
        code, out, err = run(capsys, "eval", "--json", "--matrix", rect, "--det")
        assert code == 1 and out == "" and "NonSquare" in err


class TestPoly:
    def test_examples(self, capsys):
        assert run(capsys, "poly", "--n", "2", "--alpha", "1", "--beta", "1")[1] == "x[1,1]*x[2,2] + x[1,2]*x[2,1]\n"
        code, out, _ = run(capsys, "poly", "--json", "--n", "3", "--alpha", "1", "--beta", "0")
        assert json.loads(out)["terms"] == 3
        assert run(capsys, "poly", "--n", "3", "--alpha", "0", "--beta", "0")[1] == "0\n"

    def test_prime_field(self, capsys):
        out = run(capsys, "poly", "--n", "2", "--det", "--p", "7")[1]
        assert out == "x[1,1]*x[2,2] + 6*x[1,2]*x[2,1]\n"

    def test_cap_and_bad_field(self, capsys):
        assert run(capsys, "poly", "--n", "7", "--det")[0] == 1
        assert run(capsys, "poly", "--n", "2", "--det", "--p", "9")[0] == 2
        assert run(capsys, "poly", "--n", "2", "--det", "--field", "GF(2)")[0] == 2


def test_minors(capsys, tmp_path):
    A = write(tmp_path / "a.json", io.matrix_to_json(DenseMatrix([[1, 2, 3], [4, 5, 6], [7, 8, 10]])))
    code, out, _ = run(capsys, "minors", "--json", "--matrix", A, "--r", "2", "--det")
    M = io.matrix_from_json(json.loads(out))
    assert code == 0 and M.shape == (3, 3)
    assert M[0, 0] == 1 * 5 - 2 * 4


class TestStab:
    def test_check_identity(self, capsys, tmp_path):
        path = write(tmp_path / "id.json", io.operator_to_json(identity_operator(3)))
        code, out, _ = run(capsys, "stab", "check", "--json", "--transform", path, "--alpha", "1", "--beta", "2")
        doc = json.loads(out)
        assert code == 0 and doc["member"] is True and doc["evidence"] == "symbolic"
        assert doc["witness"] is None and doc["canonical"]["transpose"] is False

    def test_sample_extract_byte_identical(self, capsys, tmp_path):
        prefix = str(tmp_path / "s")
        assert run(capsys, "stab", "sample", "--n", "5", "--seed", "4", "--out", prefix)[0] == 0
        code, out, _ = run(capsys, "stab", "extract", "--transform", prefix + ".operator.json",
                           "--alpha", "2", "--beta", "7")
        assert code == 0
        assert out == open(prefix + ".spec.json").read()

    def test_sample_stdout_is_deterministic(self, capsys):
        a = run(capsys, "stab", "sample", "--n", "4", "--seed", "1", "--p", "10007")[1]
        b = run(capsys, "stab", "sample", "--n", "4", "--seed", "1", "--p", "10007")[1]
        assert a == b and json.loads(a)["operator"]["matrix"]["field"] == {"p": 10007}

    def test_random_check_non_member(self, capsys, tmp_path):
        e = PermutationSpec.identity(5)
        T = from_monomial(MonomialSpec(False, PermutationSpec.transposition(5, 0, 1), e, [1] * 5, [1] * 5))
        path = write(tmp_path / "t.json", io.operator_to_json(T))
        code, out, _ = run(capsys, "stab", "check", "--json", "--transform", path, "--alpha", "1", "--beta", "2",
                           "--mode", "random", "--trials", "20", "--p", "10007")
        doc = json.loads(out)
        assert code == 0 and doc["member"] is False
        assert doc["evidence"] == {"randomized": {"trials": 1, "error_bound": "(5/10007)^1"}}
        assert doc["witness"]["field"] == {"p": 10007}
        assert doc["canonical"]["violation"] == "ParityViolation"

    def test_extract_violation_exit_1(self, capsys, tmp_path):
        T = LinearOperator(3, DenseMatrix.identity(9).scale(2))
        path = write(tmp_path / "t.json", io.operator_to_json(T))
        code, out, _ = run(capsys, "stab", "extract", "--json", "--transform", path, "--alpha", "1", "--beta", "2")
        assert code == 1 and json.loads(out)["violation"] == "ProductNotOne"
        code, out, err = run(capsys, "stab", "extract", "--transform", path, "--alpha", "1", "--beta", "1")
        assert code == 1 and "DegenerateParams" in err


class TestLab:
    def test_rank1(self, capsys):
        code, out, _ = run(capsys, "lab", "rank1", "--json", "--p", "3", "--n", "3")
        doc = json.loads(out)
        assert code == 0 and doc["checked"] == 19683 and doc["passed"]

    def test_n4_signs(self, capsys):
        code, out, _ = run(capsys, "lab", "n4-signs", "--mode", "even")
        assert code == 0 and out.startswith("PASS")

    def test_derivative(self, capsys):
        assert run(capsys, "lab", "derivative", "--n", "4", "--alpha", "2", "--beta", "5")[0] == 0

    def test_exotic(self, capsys):
        code, out, _ = run(capsys, "lab", "n4-exotic", "--json")
        doc = json.loads(out)
        assert code == 0 and doc["details"]["member"]["(1,2)"] is False


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "gdet", "poly", "--n", "2", "--perm"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "x[1,1]*x[2,2] + x[1,2]*x[2,1]\n"
