import csv
import io
import json
import subprocess
import sys

import pytest

from quatsplit.cli import SWEEP_COLUMNS, SweepRequest, main, render_rows, run_sweep
from quatsplit.errors import DomainError

from oracles import trial_prime


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("argv, expected", [
    (["legendre", "2", "7"], "1"),
    (["legendre", "-4", "3"], "-1"),
    (["legendre", "6", "3"], "0"),
    (["kronecker", "12", "47"], "1"),
    (["kronecker", "-4", "3"], "-1"),
    (["decompose", "5", "--d", "-1"], "split"),
    (["decompose", "inf", "--d", "3"], "real_split"),
    (["hilbert", "-1", "-1", "inf"], "-1"),
    (["hilbert", "11", "47", "2", "--oracle"], "-1"),
    (["ramified", "11", "47"], "2 47"),
    (["ramified", "5", "29", "--oracle"], "(none)"),
    (["find-alpha", "6", "7"], "3"),
])
def test_simple_commands(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out.strip() == expected


def test_legendre_domain_error(capsys):
    code, _, err = run(capsys, "legendre", "3", "9")
    assert code == 2
    assert "odd prime" in err


class TestSplits:
    def test_quadratic(self, capsys):
        code, out, _ = run(capsys, "splits", "11", "47", "--d", "-1")
        assert code == 0
        verdict, _, detail = out.partition("\n")
        assert verdict.endswith("true")
        places = json.loads(detail)["places"]
        assert [p["place"] for p in places] == [2, 11, 47, "inf"]
        assert all(p["local_degree"] == 2 for p in places)

    def test_over_Q_negative(self, capsys):
        code, out, _ = run(capsys, "splits", "7", "47")
        assert code == 1
        assert out.splitlines()[0].endswith("false")

    def test_is_split_over_Q(self, capsys):
        code, out, _ = run(capsys, "splits", "1", "5", "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["splits"] is True and data["ramified"] == []

    def test_oracle_flag(self, capsys):
        code, out, _ = run(capsys, "splits", "7", "47", "--d", "3", "--oracle", "--format", "json")
        assert code == 0
        assert json.loads(out)["oracle_checked"] is True

    @pytest.mark.parametrize("d, message", [("4", "free squares"), ("1", "d != 0,1"), ("0", "d != 0,1")])
    def test_invalid_d(self, capsys, d, message):
        code, _, err = run(capsys, "splits", "3", "5", "--d", d)
        assert code == 2
        assert message in err

    def test_zero_parameter(self, capsys):
        assert run(capsys, "splits", "0", "5")[0] == 2


class TestSufficiencyCommands:
    def test_theorem31(self, capsys):
        code, out, _ = run(capsys, "theorem31", "3", "7", "--d", "-1")
        assert code == 0
        code, out, _ = run(capsys, "theorem31", "5", "29", "--d", "-1", "--format", "json")
        assert code == 1
        assert json.loads(out) == {"holds": False, "reason": "legendre_p", "prime": 5}

    def test_theorem31_hypothesis_error(self, capsys):
        assert run(capsys, "theorem31", "3", "3", "--d", "-1")[0] == 2

    def test_corollary31(self, capsys):
        assert run(capsys, "corollary31", "21", "11", "--d", "-1")[0] == 0
        assert run(capsys, "corollary31", "5", "3", "--d", "-1")[0] == 1


class TestSymbolCommands:
    def test_certificate_default_alpha(self, capsys):
        code, out, _ = run(capsys, "certificate", "6", "7")
        assert code == 0
        cert = json.loads(out)
        assert cert["alpha"] == 3 and cert["verdict"] == "NonSplit"

    def test_certificate_inconclusive(self, capsys):
        code, out, _ = run(capsys, "certificate", "6", "7", "--alpha", "2")
        assert code == 1
        assert json.loads(out)["verdict"] == "Inconclusive"

    def test_certificate_prime_degree(self, capsys):
        code, out, _ = run(capsys, "certificate", "3", "7", "--alpha", "2")
        assert code == 0 and json.loads(out)["verdict"] == "NonSplit"

    def test_certificate_bad_congruence(self, capsys):
        assert run(capsys, "certificate", "5", "7")[0] == 2

    def test_residue(self, capsys):
        code, out, _ = run(capsys, "residue", "2", "6", "7", "--format", "json")
        assert code == 1
        assert json.loads(out)["checks"] == [
            {"l": 2, "is_power_residue": True},
            {"l": 3, "is_power_residue": False},
        ]
        assert run(capsys, "residue", "3", "6", "7")[0] == 0

    def test_factor_fp(self, capsys):
        code, out, _ = run(capsys, "factor-fp", "7", "x^6 - 2")
        assert code == 0 and out.strip() == "(x^3 + 3) * (x^3 + 4)"
        code, out, _ = run(capsys, "factor-fp", "7", "x^6 - 2", "--signed-poly", "--oracle")
        assert out.strip() == "(x^3 + 3) * (x^3 - 3)"
        code, out, _ = run(capsys, "factor-fp", "3", "2x^2 + x + 2", "--format", "json")
        data = json.loads(out)
        assert data["leading"] == 2
        assert [f["multiplicity"] for f in data["factors"]] == [2]

    def test_factor_fp_errors(self, capsys):
        assert run(capsys, "factor-fp", "8", "x^2 + 1")[0] == 2
        assert run(capsys, "factor-fp", "7", "3")[0] == 2


class TestSweep:
    def test_theorem31_rows(self, capsys):
        code, out, _ = run(capsys, "sweep", "--mode", "theorem31", "--d-range=-1", "--p-range", "2:30",
                           "--q-range", "2:30", "--format", "json")
        assert code == 0
        rows = json.loads(out)
        row = next(r for r in rows if (r["p"], r["q"]) == (3, 7))
        assert row["sufficient"] and row["splits"]
        assert not any(r["violation"] for r in rows)
        keys = [(r["d"], r["p"], r["q"]) for r in rows]
        assert keys == sorted(keys)

    def test_gap_row(self, capsys):
        code, out, _ = run(capsys, "sweep", "--d-range=-1", "--p-range", "5", "--q-range", "29",
                           "--format", "csv")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert rows == [{"d": "-1", "p": "5", "q": "29", "sufficient": "false", "reason": "legendre_p",
                         "splits": "true", "agree": "false", "violation": "false", "error": ""}]

    def test_empty_prime_interval(self, capsys):
        code, out, _ = run(capsys, "sweep", "--p-range", "24:28", "--format", "csv")
        assert code == 0
        assert out.strip() == ",".join(SWEEP_COLUMNS["theorem31"])

    def test_empty_interval_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["sweep", "--p-range", "9:3"])
        assert exc.value.code == 2

    def test_symbol_mode(self, capsys):
        code, out, _ = run(capsys, "sweep", "--mode", "symbol", "--n-range", "3:6", "--p-range", "2:40",
                           "--format", "json")
        rows = json.loads(out)
        expected = {(n, p) for n in range(3, 7) for p in range(2, 41) if trial_prime(p) and p % n == 1}
        assert {(r["n"], r["p"]) for r in rows} == expected
        assert all(r["verdict"] == "NonSplit" and r["extension_degree"] == r["n"] for r in rows)

    def test_quaternion_mode_table(self, capsys):
        code, out, _ = run(capsys, "sweep", "--mode", "quaternion", "--d-range=-1:3", "--p-range", "2:7",
                           "--q-range", "3:7")
        lines = out.splitlines()
        assert lines[0].split() == SWEEP_COLUMNS["quaternion"]
        assert len(lines) > 1

    def test_deterministic_across_jobs(self):
        req = SweepRequest(mode="theorem31", d_range=(-10, 10), p_range=(2, 30), q_range=(3, 30))
        serial = render_rows(run_sweep(req, jobs=1), "theorem31", "csv")
        parallel = render_rows(run_sweep(req, jobs=3), "theorem31", "csv")
        assert serial == parallel
        assert serial == render_rows(run_sweep(req, jobs=1), "theorem31", "csv")

    def test_json_roundtrip(self):
        req = SweepRequest(mode="symbol", n_range=(3, 5), p_range=(2, 60))
        rows = run_sweep(req)
        assert json.loads(render_rows(rows, "symbol", "json")) == rows

    def test_request_validation(self):
        with pytest.raises(DomainError):
            SweepRequest(mode="nope")
        with pytest.raises(DomainError):
            SweepRequest(mode="symbol", p_range=(5, 2))
        with pytest.raises(DomainError):
            SweepRequest(mode="symbol", p_range=(2, 2**64))


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "quatsplit", "certificate", "6", "7", "--alpha", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["extension_degree"] == 3


def test_help_documents_csv_columns():
    proc = subprocess.run([sys.executable, "-m", "quatsplit", "sweep", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "d,p,q,sufficient,reason,splits,agree,violation,error" in proc.stdout
