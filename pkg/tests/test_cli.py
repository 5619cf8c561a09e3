import json

import pytest

from stfib import STParams, fibotorial
from stfib.cli import main
from stfib.sequences import cache_filename


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSeqCommand:
    def test_single_value(self, capsys):
        code, out, _ = run_cli(capsys, ["seq", "--s", "2", "--t", "1", "--n", "8"])
        assert code == 0 and out == "408\n"

    def test_upto_list(self, capsys):
        code, out, _ = run_cli(capsys, ["seq", "--s", "2", "--t", "1", "--n", "8", "--upto"])
        assert code == 0
        assert out.strip() == "0,1,2,5,12,29,70,169,408"

    def test_kernels_agree(self, capsys):
        outs = set()
        for kernel in ("recurrence", "fast", "binet"):
            _, out, _ = run_cli(
                capsys, ["seq", "--s", "1", "--t", "1", "--n", "30", "--kernel", kernel]
            )
            outs.add(out)
        assert outs == {"832040\n"}

    def test_rational_parameters(self, capsys):
        code, out, _ = run_cli(capsys, ["seq", "--s", "1/2", "--t", "1/4", "--n", "3"])
        assert code == 0 and out == "1/2\n"


class TestOutputModes:
    def test_estimate_json_matches_documented_shape(self, capsys):
        code, out, _ = run_cli(
            capsys, ["estimate", "--s", "1", "--t", "1", "--digits", "5", "--output", "json"]
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["lower"] == "3.70416"
        assert payload["upper"] == "3.70419"
        assert payload["printed_upper"] == "3.70418"
        assert payload["certified"] is False

    def test_json_round_trip_byte_identical(self, capsys):
        for argv in (
            ["estimate", "--s", "2", "--t", "1", "--output", "json"],
            ["euler", "--s", "1", "--t", "1", "--output", "json"],
            ["witness", "--s", "1", "--t", "1", "--u", "2", "--q-max", "4", "--output", "json"],
            ["classify", "--s", "1", "--t", "1", "--u", "1", "--output", "json"],
        ):
            _, out, _ = run_cli(capsys, argv)
            rendered = json.dumps(json.loads(out), separators=(",", ":")) + "\n"
            assert rendered == out

    def test_determinism(self, capsys):
        argv = ["witness", "--s", "2", "--t", "1", "--u", "2", "--q-max", "6", "--output", "csv"]
        _, first, _ = run_cli(capsys, argv)
        _, second, _ = run_cli(capsys, argv)
        assert first == second

    def test_witness_csv_rows(self, capsys):
        code, out, _ = run_cli(
            capsys, ["witness", "--s", "1", "--t", "1", "--u", "2", "--q-max", "10", "--output", "csv"]
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("q,verdict")
        assert len(lines) == 11
        for line in lines[6:]:
            assert line.split(",")[1] == "Certified"

    def test_euler_interval_certified_flag(self, capsys):
        _, out, _ = run_cli(
            capsys,
            ["euler", "--s", "2", "--t", "1", "--width", "1e-12", "--output", "json"],
        )
        payload = json.loads(out)
        assert payload["interval"]["certified"] is True
        assert payload["interval"]["lo_decimal"].startswith("2.60862481")

    def test_estimate_comparison_block(self, capsys):
        _, out, _ = run_cli(
            capsys,
            [
                "estimate", "--s", "2", "--t", "1", "--digits", "10",
                "--reported", "2.6086247947,2.6086247948", "--output", "json",
            ],
        )
        payload = json.loads(out)
        block = payload["comparison"]
        assert block["s6_inside_reported"] is True
        assert block["rigorous_inside_reported"] is False
        assert block["formula_lower_is_s6"] is True


class TestOtherCommands:
    def test_fact_binom_deform(self, capsys):
        assert run_cli(capsys, ["fact", "--s", "2", "--t", "1", "--n", "5"])[1] == "3480\n"
        assert run_cli(capsys, ["binom", "--s", "1", "--t", "1", "--n", "4", "--k", "2"])[1] == "6\n"
        _, out, _ = run_cli(
            capsys, ["deform", "--s", "1", "--t", "1", "--a", "-1", "--n", "4", "--output", "json"]
        )
        payload = json.loads(out)
        assert payload["s"] == "-1" and payload["t"] == "1"
        assert payload["value"] == "-3" and payload["scaling_identity_holds"] is True

    def test_lemma(self, capsys):
        _, out, _ = run_cli(capsys, ["lemma", "--s", "1", "--t", "1", "--output", "json"])
        payload = json.loads(out)
        assert payload["gap_start"] == 4
        assert payload["n_le_fib_start"] == 5
        assert payload["abs_identity"] is True

    def test_classify(self, capsys):
        _, out, _ = run_cli(
            capsys, ["classify", "--s", "3", "--t", "-2", "--u", "2", "--output", "json"]
        )
        payload = json.loads(out)
        assert payload["tag"] == "disk"
        assert payload["radius"]["lo"] == "2"
        _, out, _ = run_cli(
            capsys, ["classify", "--s", "2", "--t", "-1", "--u", "1", "--output", "json"]
        )
        assert json.loads(out)["tag"] == "entire"

    def test_series_check(self, capsys):
        _, out, _ = run_cli(
            capsys,
            ["series-check", "--s", "2", "--t", "1", "--u", "1/2", "--order", "10", "--output", "json"],
        )
        assert json.loads(out)["functional_equation_holds"] is True

    def test_phi_euler(self, capsys):
        _, out, _ = run_cli(
            capsys,
            ["phi-euler", "--s", "3", "--t", "-2", "--which", "phi", "--n", "3", "--output", "json"],
        )
        payload = json.loads(out)
        assert payload["interval"]["lo"] == "64/21"

    def test_witness_fractional(self, capsys):
        _, out, _ = run_cli(
            capsys,
            ["witness", "--s", "1", "--t", "1", "--u", "3/2", "--mode", "fractional", "--q", "4", "--output", "json"],
        )
        payload = json.loads(out)
        assert payload["modulus_power"] == "1024"

    def test_bench_kinds(self, capsys):
        for kind in ("recurrence", "fast-doubling", "fibotorial"):
            _, out, _ = run_cli(
                capsys, ["bench", "--kind", kind, "--n", "10000", "--output", "json"]
            )
            payload = json.loads(out)
            assert payload["verified"] is True
            assert payload["bit_length"] > 0


class TestExitCodes:
    def test_domain_error_is_one(self, capsys):
        code, _, err = run_cli(capsys, ["seq", "--s", "0", "--t", "1", "--n", "3"])
        assert code == 1 and "nonzero" in err

    def test_hypothesis_error_is_one(self, capsys):
        code, _, err = run_cli(
            capsys, ["witness", "--s", "1", "--t", "1", "--u", "1/2", "--q", "6"]
        )
        assert code == 1 and "U = 1/2" in err

    def test_strict_witness_is_two(self, capsys):
        code, out, _ = run_cli(
            capsys,
            ["witness", "--s", "1", "--t", "1", "--u", "2", "--q", "2", "--strict", "--output", "csv"],
        )
        assert code == 2
        assert "ThresholdNotBelowOne" in out

    def test_usage_error_is_64(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["seq", "--s", "nope", "--t", "1", "--n", "3"])
        assert excinfo.value.code == 64
        with pytest.raises(SystemExit) as excinfo:
            main(["no-such-command"])
        assert excinfo.value.code == 64


class TestCacheEnvVar:
    def test_cache_file_created_and_reused(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("STFIB_CACHE_DIR", str(tmp_path))
        code, out, _ = run_cli(capsys, ["fact", "--s", "8", "--t", "5", "--n", "12"])
        assert code == 0
        path = tmp_path / cache_filename(STParams(8, 5))
        assert path.is_file()
        lines = path.read_text().strip().splitlines()
        assert lines[0] == "0 1"
        assert len(lines) >= 13
        code, second, _ = run_cli(capsys, ["fact", "--s", "8", "--t", "5", "--n", "12"])
        assert code == 0 and second == out

    def test_corrupted_cache_is_ignored(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("STFIB_CACHE_DIR", str(tmp_path))
        run_cli(capsys, ["fact", "--s", "8", "--t", "7", "--n", "10"])
        path = tmp_path / cache_filename(STParams(8, 7))
        path.write_text("0 1\n1 1\n2 totally-broken\n")
        code, out, _ = run_cli(capsys, ["fact", "--s", "8", "--t", "7", "--n", "10"])
        assert code == 0
        assert out == f"{fibotorial(STParams(8, 7), 10)}\n"
