import csv
import io
import json

import pytest

import main


def run(capsys, *argv):
    code = main.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCompute:
    def test_partitions(self, capsys):
        code, out, _ = run(capsys, "compute", "p", "--max-n", "5")
        assert code == main.EXIT_OK
        lines = out.splitlines()
        assert lines[0] == "key,n,value"
        assert lines[-1] == "p,5,7"

    def test_omega(self, capsys):
        _, out, _ = run(capsys, "compute", "omega", "--max-n", "7")
        values = [int(row["value"]) for row in csv.DictReader(io.StringIO(out))]
        assert values == [1, -1, -1, 0, 0, 1, 0, 1]

    def test_both_paths_add_oracle_column(self, capsys):
        code, out, _ = run(capsys, "compute", "r_k", "--k", "2", "--max-n", "5", "--method", "both")
        assert code == main.EXIT_OK
        rows = list(csv.DictReader(io.StringIO(out)))
        assert all(row["value"] == row["value_oracle"] for row in rows)
        assert rows[5]["value"] == "8"

    def test_csv_and_json_agree(self, capsys):
        _, as_csv, _ = run(capsys, "compute", "sigma", "--max-n", "60")
        _, as_json, _ = run(capsys, "compute", "sigma", "--max-n", "60", "--format", "json")
        from_csv = [int(row["value"]) for row in csv.DictReader(io.StringIO(as_csv))]
        from_json = [int(row["value"]) for row in json.loads(as_json)]
        assert from_csv == from_json
        assert from_json[11] == 28

    @pytest.mark.parametrize("method", ["recurrence", "oracle", "both"])
    def test_zero_range_is_header_only(self, capsys, method):
        code, out, _ = run(capsys, "compute", "Phi", "--max-n", "0", "--method", method)
        assert code == main.EXIT_OK
        assert out.splitlines() == ["key,n,value" + (",value_oracle" if method == "both" else "")]

    def test_zero_range_json(self, capsys):
        code, out, _ = run(capsys, "compute", "Phi_tau_r", "--r", "2", "--max-n", "0", "--format", "json")
        assert code == main.EXIT_OK
        assert json.loads(out) == []

    def test_jacobi_k_paths_agree(self, capsys):
        for k in ("2", "4", "8"):
            code, _, _ = run(capsys, "compute", "r_k", "--k", k, "--max-n", "300", "--method", "both")
            assert code == main.EXIT_OK

    def test_unknown_sequence(self, capsys):
        code, out, _ = run(capsys, "compute", "zeta", "--max-n", "5")
        assert code == main.EXIT_USAGE
        assert out == ""

    def test_missing_k(self, capsys):
        code, _, err = run(capsys, "compute", "r_k", "--max-n", "5")
        assert code == main.EXIT_USAGE
        assert "--k" in err

    def test_enumeration_guard_is_a_usage_error(self, capsys):
        code, _, _ = run(capsys, "compute", "c_psi", "--max-n", "40", "--method", "oracle")
        assert code == main.EXIT_USAGE


class TestVerify:
    def test_pass(self, capsys):
        code, out, _ = run(capsys, "verify", "eq3-p", "--max-n", "200")
        assert code == main.EXIT_OK
        assert out.startswith("PASS eq3-p [")

    def test_literal_thm4b_fails(self, capsys):
        code, out, _ = run(capsys, "verify", "thm4b", "--max-n", "200", "--literal")
        assert code == main.EXIT_FAILED
        assert out.startswith("FAIL thm4b[literal=1]")
        assert "  n=2 lhs=3 rhs=0" in out.splitlines()

    def test_json_report(self, capsys):
        code, out, _ = run(capsys, "verify", "thm-rk", "--k", "3", "--max-n", "50", "--format", "json")
        assert code == main.EXIT_OK
        (report,) = json.loads(out)
        assert report["params"] == {"k": 3}
        assert report["passed"] is True

    def test_unknown_identity(self, capsys):
        code, _, _ = run(capsys, "verify", "thm-nope")
        assert code == main.EXIT_USAGE


class TestBenchAndList:
    @pytest.mark.parametrize("max_n", ["0", "200"])
    def test_bench(self, capsys, max_n):
        code, out, _ = run(capsys, "bench", "p", "--max-n", max_n)
        assert code == main.EXIT_OK
        assert "tables identical" in out
        assert "recurrence" in out

    def test_bench_unknown_sequence(self, capsys):
        code, _, _ = run(capsys, "bench", "tau", "--max-n", "10")
        assert code == main.EXIT_USAGE

    def test_list(self, capsys):
        code, out, _ = run(capsys, "list")
        names = out.split()
        assert code == main.EXIT_OK
        assert {"eq3-p", "thm-Phitau-r", "cor-rk-cong", "p", "Phi_tau_r"} <= set(names)


class TestArgumentErrors:
    def test_no_command(self):
        with pytest.raises(SystemExit) as exc:
            main.main([])
        assert exc.value.code == 2

    def test_bad_method(self):
        with pytest.raises(SystemExit) as exc:
            main.main(["compute", "p", "--method", "guess"])
        assert exc.value.code == 2
