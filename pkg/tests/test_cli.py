import json
import random
from fractions import Fraction

import pytest

from quatnil import jsonio
from quatnil.cli import main
from quatnil.errors import ParseError
from quatnil.qcore import AlgebraParams
from quatnil.qlinalg import QMatrix

from conftest import random_quaternion


class TestSerialization:
    def test_matrix_round_trip(self, H):
        rng = random.Random(3)
        m = QMatrix([[random_quaternion(rng, H) for _ in range(3)] for _ in range(3)])
        data = jsonio.matrix_to_json(m)
        again = jsonio.matrix_from_json(json.loads(json.dumps(data)))
        assert again == m

    def test_rational_strings(self, H):
        q = H.quat(Fraction(1, 2), -2, 0, Fraction(-7, 3))
        assert jsonio.quaternion_to_json(q) == ["1/2", "-2", "0", "-7/3"]
        assert jsonio.quaternion_from_json(["1/2", "-2", "0", "-7/3"], H) == q

    def test_algebra_round_trip(self):
        alg = AlgebraParams(Fraction(-1), Fraction(-7))
        assert jsonio.algebra_from_json(jsonio.algebra_to_json(alg)) == alg

    def test_parse_errors(self, H):
        with pytest.raises(ParseError):
            jsonio.fraction_from_str("not-a-number")
        with pytest.raises(ParseError):
            jsonio.matrix_from_json({"rows": 1})
        with pytest.raises(ParseError):
            jsonio.quaternion_from_json(["1", "2"], H)
        with pytest.raises(ParseError):
            jsonio.matrix_from_json(
                {"algebra": {"a": "-1", "b": "-1"}, "rows": 2, "cols": 2,
                 "entries": [[["0", "0", "0", "0"]]]}
            )

    def test_decomposition_round_trip(self, H):
        from quatnil.decompose import decompose_two_nilpotents

        m = QMatrix([[H.zero(), H.i()], [H.i(), H.zero()]])
        dec = decompose_two_nilpotents(m)
        data = json.loads(json.dumps(jsonio.decomposition_to_json(dec)))
        again = jsonio.decomposition_from_json(data)
        assert again.n1 == dec.n1 and again.n2 == dec.n2
        assert again.witness is not None and again.witness.P == dec.witness.P


def write_matrix(path, m):
    path.write_text(json.dumps(jsonio.matrix_to_json(m)))
    return str(path)


class TestCli:
    def test_classify_type_ii_non_example(self, H, tmp_path, capsys):
        m = QMatrix.diagonal([H.i(), H.zero(), H.zero()])
        path = write_matrix(tmp_path / "m.json", m)
        rc = main(["classify", "-i", path])
        out = capsys.readouterr().out
        assert rc == 3
        assert "TypeII" in out and "NO" in out and "supertrace" in out

    def test_classify_zero_yes(self, H, tmp_path, capsys):
        path = write_matrix(tmp_path / "z.json", QMatrix.zeros(3, 3, H))
        rc = main(["classify", "-i", path])
        out = capsys.readouterr().out
        assert rc == 0 and "Zero" in out and "YES" in out

    def test_classify_scalar_type_i(self, H, tmp_path, capsys):
        path = write_matrix(tmp_path / "s.json", QMatrix.scalar(2, 5, H))
        rc = main(["classify", "-i", path])
        out = capsys.readouterr().out
        assert rc == 3 and "TypeI" in out and "NO" in out

    def test_classify_json_format(self, H, tmp_path, capsys):
        path = write_matrix(tmp_path / "m.json", QMatrix.zeros(2, 2, H))
        rc = main(["classify", "-i", path, "--format", "json"])
        data = json.loads(capsys.readouterr().out)
        assert rc == 0
        assert data["classification"]["verdict"] == "Zero"
        assert data["decision"]["answer"] is True

    def test_decompose_and_check(self, H, tmp_path, capsys):
        m = QMatrix([[H.zero(), H.i()], [H.i(), H.zero()]])
        mat_path = write_matrix(tmp_path / "m.json", m)
        out_path = tmp_path / "dec.json"
        rc = main(["decompose", "-i", mat_path, "-o", str(out_path)])
        assert rc == 0
        data = json.loads(out_path.read_text())
        n1 = jsonio.matrix_from_json(data["N1"])
        assert n1 == QMatrix([[H.zero(), H.i()], [H.zero(), H.zero()]])
        capsys.readouterr()
        assert main(["check", mat_path, str(out_path)]) == 0
        assert "OK" in capsys.readouterr().out

    def test_check_detects_tampering(self, H, tmp_path, capsys):
        m = QMatrix([[H.zero(), H.i()], [H.i(), H.zero()]])
        mat_path = write_matrix(tmp_path / "m.json", m)
        out_path = tmp_path / "dec.json"
        main(["decompose", "-i", mat_path, "-o", str(out_path)])
        data = json.loads(out_path.read_text())
        data["N1"]["entries"][0][1] = ["1", "0", "0", "0"]
        out_path.write_text(json.dumps(data))
        capsys.readouterr()
        assert main(["check", mat_path, str(out_path)]) != 0

    def test_decompose_refuses_type_iii(self, H, tmp_path, capsys):
        m = QMatrix.diagonal([H.i()] * 3)
        mat_path = write_matrix(tmp_path / "m.json", m)
        out_path = tmp_path / "dec.json"
        rc = main(["decompose", "-i", mat_path, "-o", str(out_path)])
        err = capsys.readouterr().err
        assert rc == 3 and "TypeIII" in err
        report = json.loads(out_path.read_text())
        assert report["decision"]["answer"] is False
        assert report["decision"]["reason"] == "TypeIII"
        assert "typeIII" in report["decision"]

    def test_gen_deterministic(self, tmp_path):
        a_path, b_path = tmp_path / "a.json", tmp_path / "b.json"
        args = ["gen", "--kind", "type-III", "-n", "3", "--seed", "1"]
        assert main(args + ["-o", str(a_path)]) == 0
        assert main(args + ["-o", str(b_path)]) == 0
        assert a_path.read_bytes() == b_path.read_bytes()

    def test_gen_kinds_classify_as_requested(self, tmp_path, capsys):
        for kind, n, expect_rc, marker, extra in (
            ("type-I", 2, 3, "TypeI", []),
            ("type-II", 3, 3, "TypeII", ["--lam", "0", "--rep=0,1,0,0"]),
            ("type-III", 3, 3, "TypeIII", []),
            ("generic-trace-zero", 4, 0, "Generic", []),
        ):
            path = tmp_path / f"{kind}.json"
            assert main(["gen", "--kind", kind, "-n", str(n), "--seed", "7",
                         *extra, "-o", str(path)]) == 0
            rc = main(["classify", "-i", str(path)])
            out = capsys.readouterr().out
            assert marker in out
            assert rc == expect_rc, (kind, out)

    def test_gen_type_ii_zero_supertrace_is_yes(self, tmp_path, capsys):
        path = tmp_path / "t2.json"
        assert main(["gen", "--kind", "type-II", "-n", "3", "--seed", "5",
                     "--lam", "1", "--rep=-3,0,0,0", "-o", str(path)]) == 0
        rc = main(["classify", "-i", str(path)])
        out = capsys.readouterr().out
        assert rc == 0 and "TypeII" in out and "YES" in out

    def test_gen_unsatisfiable_spec(self, tmp_path, capsys):
        rc = main(["gen", "--kind", "type-III", "-n", "4", "--seed", "0",
                   "-o", str(tmp_path / "x.json")])
        assert rc == 2

    def test_split_algebra_exit_code(self, tmp_path):
        rc = main(["gen", "--kind", "random", "-n", "2", "--algebra", "1,-1",
                   "-o", str(tmp_path / "x.json")])
        assert rc == 4

    def test_parse_error_exit_code(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert main(["classify", "-i", str(bad)]) == 2

    def test_check_shape_mismatch_is_error(self, H, tmp_path, capsys):
        m = QMatrix([[H.zero(), H.i()], [H.i(), H.zero()]])
        mat_path = write_matrix(tmp_path / "m.json", m)
        out_path = tmp_path / "dec.json"
        main(["decompose", "-i", mat_path, "-o", str(out_path)])
        other = write_matrix(tmp_path / "m3.json", QMatrix.zeros(3, 3, H))
        capsys.readouterr()
        assert main(["check", other, str(out_path)]) == 2

    def test_selftest_quick(self, capsys):
        rc = main(["selftest", "--quick", "--seed", "1"])
        out = capsys.readouterr().out
        assert rc == 0
        assert out.count("PASS") == 11
