"""Tests for the command line interface.

Most cases call run() in-process for speed; a few go through a real
subprocess to check the console entry point end to end.
"""

import json
import subprocess
import sys

import pytest

import modimage.cli as cli
from modimage.tables import prime_table, supported_primes


def run_cli(*args, capsys=None):
    """Invoke the CLI in-process, returning (exit code, stdout)."""
    code = cli.run(list(args))
    out = capsys.readouterr().out if capsys is not None else ""
    return code, out


def plus_minus_level(label: str) -> str:
    """Collapse a sub-refinement label to the group generated with -I."""
    if label == "GL2" or ".CM." in label:
        return label
    l = int(label.split(".")[0])
    for e in prime_table(l).entries:
        if e.subs and label in [name for name, _ in e.subs]:
            return e.label
    return label


class TestClassify:
    def test_json_label_for_benchmark_curve(self, capsys):
        code, out = run_cli("classify", "--curve", "1,1,1,-305,7888",
                            "--primes", "11", "--format", "json",
                            capsys=capsys)
        assert code == 0
        doc = json.loads(out)
        assert doc["images"][0]["label"] == "11.H1.1"
        assert doc["images"][0]["status"] == "proven"
        assert doc["j"] == "-121"
        assert doc["cm"] is None
        assert doc["exceptional_primes"] == [11]

    def test_json_round_trips_byte_identically(self, capsys):
        code, out = run_cli("classify", "--curve", "0,0,1,-1,0",
                            "--format", "json", capsys=capsys)
        assert code == 0
        assert json.dumps(json.loads(out), indent=2) == out.rstrip("\n")

    def test_text_mode_one_line_per_prime(self, capsys):
        code, out = run_cli("classify", "--curve", "0,-1,1,-10,-20",
                            capsys=capsys)
        assert code == 0
        lines = out.splitlines()
        prime_lines = [ln for ln in lines if ln.startswith("l = ")]
        assert len(prime_lines) == 8
        assert any("5.H1.1" in ln and "t = -1" in ln for ln in prime_lines)
        assert lines[-1] == "exceptional primes: 5"

    def test_j_only_agrees_with_model_at_plus_minus_level(self, capsys):
        code, out = run_cli("classify", "--j", "-121", "--primes", "11",
                            "--format", "json", capsys=capsys)
        assert code == 0
        jdoc = json.loads(out)
        assert jdoc["curve"] is None
        code, out = run_cli("classify", "--curve", "1,1,1,-305,7888",
                            "--primes", "11", "--format", "json",
                            capsys=capsys)
        mdoc = json.loads(out)
        assert (plus_minus_level(jdoc["images"][0]["label"])
                == plus_minus_level(mdoc["images"][0]["label"]))

    def test_cm_curve_reports_cm_block(self, capsys):
        code, out = run_cli("classify", "--short=-1715,33614",
                            "--primes", "7", "--format", "json",
                            capsys=capsys)
        assert code == 0
        doc = json.loads(out)
        assert doc["cm"] == {"j": "-3375", "field_disc": 7, "order_index": 1}
        assert doc["images"][0]["label"] == "7.CM.H1"

    def test_conditional_result_carries_possible_list(self, capsys):
        code, out = run_cli("classify", "--curve", "0,0,1,-1,0",
                            "--primes", "13", "--frobenius-bound", "6",
                            "--format", "json", capsys=capsys)
        assert code == 0
        img = json.loads(out)["images"][0]
        assert img["status"] == "conditional(BPR-conjecture)"
        assert img["possible"] == ["13.Ns"]

    def test_rational_coefficients_accepted(self, capsys):
        code, out = run_cli("classify", "--curve", "1/2,0,0,-3/4,1",
                            "--primes", "2", "--format", "json",
                            capsys=capsys)
        assert code == 0
        assert json.loads(out)["curve"][0] == "1/2"


class TestVerifyTables:
    def test_all_checks_pass(self, capsys):
        code, out = run_cli("verify-tables", capsys=capsys)
        assert code == 0
        assert "FAIL" not in out
        summary = out.strip().splitlines()[-1]
        passed, total = summary.split()[0].split("/")
        assert passed == total and int(total) > 150

    def test_failure_exits_two(self, capsys, monkeypatch):
        monkeypatch.setattr(cli, "verify_all",
                            lambda: [("broken", False, "detail")])
        code, out = run_cli("verify-tables", capsys=capsys)
        assert code == 2
        assert "FAIL broken" in out

    def test_emit_dumps_every_prime(self, capsys):
        code, out = run_cli("verify-tables", "--emit", capsys=capsys)
        assert code == 0
        for l in supported_primes():
            assert f"prime {l} " in out
        assert "cover num:" in out


class TestGroup:
    def test_borel_invariants(self, capsys):
        code, out = run_cli("group", "--prime", "5", "--label", "B",
                            capsys=capsys)
        assert code == 0
        assert "order: 80" in out
        assert "index: 6" in out
        assert "det surjective: yes" in out
        assert "generators:" in out

    def test_octahedral_group_at_13(self, capsys):
        code, out = run_cli("group", "--prime", "13", "--label", "G7",
                            capsys=capsys)
        assert code == 0
        assert "order: 288" in out
        assert "index: 91" in out

    def test_unknown_label_is_input_error(self, capsys):
        code, _ = run_cli("group", "--prime", "11", "--label", "XX",
                          capsys=capsys)
        assert code == 1


class TestAp:
    def test_quoted_trace(self, capsys):
        code, out = run_cli("ap", "--curve", "0,0,0,-338,2392", "--p", "3",
                            capsys=capsys)
        assert code == 0
        assert out.strip() == "0"

    def test_bad_reduction_is_input_error(self, capsys):
        code, _ = run_cli("ap", "--curve", "0,-1,1,-10,-20", "--p", "11",
                          capsys=capsys)
        assert code == 1


class TestTwistSet:
    def test_distinguished_pair(self, capsys):
        code, out = run_cli("twist-set", "--short=-42875,-3246250",
                            "--prime", "7", "--r", "337", capsys=capsys)
        assert code == 0
        assert out.strip() == "-7 1"

    def test_even_prime_is_input_error(self, capsys):
        code, _ = run_cli("twist-set", "--short=-42875,-3246250",
                          "--prime", "2", "--r", "10", capsys=capsys)
        assert code == 1


class TestExitCodes:
    @pytest.mark.parametrize("args", [
        ("classify", "--curve", "1,2,bad,4,5"),
        ("classify", "--curve", "0,0,0,0,0"),
        ("classify",),
        ("classify", "--curve", "0,0,1,-1,0", "--j", "3"),
        ("classify", "--curve", "0,0,1,-1,0", "--primes", "4"),
        ("classify", "--j", "0"),
        ("nonsense",),
        ("ap", "--p", "3"),
        ("twist-set", "--prime", "7", "--r", "10"),
    ])
    def test_input_errors_exit_one(self, args, capsys):
        code, _ = run_cli(*args, capsys=capsys)
        assert code == 1

    def test_help_exits_zero(self, capsys):
        code, _ = run_cli("--help", capsys=capsys)
        assert code == 0

    def test_distinct_error_messages(self, capsys):
        cli.run(["classify", "--curve", "1,2,bad,4,5"])
        err1 = capsys.readouterr().err
        cli.run(["classify", "--curve", "0,0,0,0,0"])
        err2 = capsys.readouterr().err
        cli.run(["group", "--prime", "11", "--label", "XX"])
        err3 = capsys.readouterr().err
        assert "malformed rational" in err1
        assert "singular" in err2
        assert "unknown label" in err3


class TestConsoleEntryPoint:
    def test_installed_script_or_module(self):
        out = subprocess.run(
            [sys.executable, "-m", "modimage.cli", "ap",
             "--curve", "0,0,0,-338,2392", "--p", "3"],
            capture_output=True, text=True)
        assert out.returncode == 0
        assert out.stdout.strip() == "0"
