import json
import subprocess
import sys

import pytest

from arakelov.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


class TestHeightCommand:
    def test_point_one(self, capsys):
        code, out = run_cli(capsys, "height", "--poly", "x-1")
        assert code == 0
        assert "h_arakelov = 0.3465735903" in out

    def test_point_zero(self, capsys):
        code, out = run_cli(capsys, "height", "--point", "0")
        assert code == 0
        assert "h_arakelov = 0.0000000000" in out

    def test_json_report(self, capsys):
        code, out = run_cli(capsys, "height", "--poly", "x^2-2", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["crosscheck_residual"] < 1e-9
        assert payload["unit"] == "nats"
        assert [e["place"] for e in payload["locals"]] == ["inf", 2]

    def test_bits_flag(self, capsys):
        code, out = run_cli(capsys, "height", "--poly", "x-1", "--bits",
                            "--format", "json")
        assert json.loads(out)["h_arakelov"] == pytest.approx(0.5, abs=1e-12)

    def test_coeffs_input(self, capsys):
        code, out = run_cli(capsys, "height", "--coeffs", "[-2, 0, 1]",
                            "--format", "json")
        assert code == 0
        assert json.loads(out)["h_arakelov"] == pytest.approx(0.5493061443, abs=1e-9)

    def test_parse_error_exits_2(self, capsys):
        assert main(["height", "--poly", "x^^2"]) == 2

    def test_not_squarefree_exits_2(self, capsys):
        assert main(["height", "--poly", "x^2+2x+1"]) == 2


class TestOtherCommands:
    def test_local(self, capsys):
        code, out = run_cli(capsys, "local", "--poly", "x^2-2", "--place", "2",
                            "--format", "json")
        assert code == 0
        assert json.loads(out)["value"] == pytest.approx(1.0397207708, abs=1e-9)

    def test_local_archimedean(self, capsys):
        code, out = run_cli(capsys, "local", "--poly", "x^2-2", "--place", "inf",
                            "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["place"] == "inf"
        assert payload["value"] == pytest.approx(0.0588915178, abs=1e-9)

    def test_height_point_infinity(self, capsys):
        code, out = run_cli(capsys, "height", "--point", "inf", "--format", "json")
        assert code == 0
        assert json.loads(out)["h_arakelov"] == 0.0

    def test_verify_corpus_size_override(self, capsys):
        code, out = run_cli(capsys, "verify", "--suite", "heights",
                            "--corpus-size", "200")
        assert code == 0
        assert "200 polynomials" in out

    def test_measure_energy(self, capsys):
        code, out = run_cli(capsys, "measure", "--sphere", "--energy",
                            "--format", "json")
        assert code == 0
        assert json.loads(out)["value"] == pytest.approx(0.5, abs=1e-6)

    def test_measure_interval(self, capsys):
        code, out = run_cli(capsys, "measure", "--interval", "2", "--energy")
        assert code == 0
        assert "0.8047189562" in out

    def test_measure_density_grid(self, capsys):
        code, out = run_cli(capsys, "measure", "--interval", "1",
                            "--density-grid", "5", "--format", "csv")
        lines = out.strip().splitlines()
        assert lines[0] == "x,density"
        assert len(lines) == 6

    def test_fekete(self, capsys):
        code, out = run_cli(capsys, "fekete", "--real-line", "--n", "8",
                            "--seed", "1", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["energy"] == pytest.approx(0.3960841032, abs=1e-6)

    def test_fekete_budget_exhaustion_exits_4(self, capsys):
        code, out = run_cli(capsys, "fekete", "--sphere", "--n", "24",
                            "--budget", "2", "--restarts", "1")
        assert code == 4
        assert "converged: False" in out

    def test_bounds(self, capsys):
        code, out = run_cli(capsys, "bounds", "--places", "inf,2")
        assert code == 0
        assert "0.5776226505" in out

    def test_bounds_interval(self, capsys):
        code, out = run_cli(capsys, "bounds", "--places", "inf,2", "--r", "2",
                            "--format", "json")
        assert json.loads(out)["bound"] == pytest.approx(0.633409, abs=5e-7)

    def test_bounds_r_without_infinity_exits_2(self, capsys):
        assert main(["bounds", "--places", "2", "--r", "2"]) == 2

    def test_pairs_csv(self, capsys):
        code, out = run_cli(capsys, "pairs", "--format", "csv")
        lines = out.strip().splitlines()
        assert lines[0] == "p,q,bound"
        assert len(lines) == 83

    def test_output_file(self, capsys, tmp_path):
        path = tmp_path / "report.json"
        code = main(["bounds", "--places", "inf", "--format", "json",
                     "--output", str(path)])
        assert code == 0
        text = path.read_text(encoding="utf-8")
        assert text.endswith("\n")
        assert json.loads(text)["bound"] == pytest.approx(0.3465735903, abs=1e-9)


class TestVerifyCommand:
    def test_bounds_suite_passes(self, capsys):
        code, out = run_cli(capsys, "verify", "--suite", "bounds")
        assert code == 0
        assert out.count("PASS") == 2
        assert "all checks passed" in out

    def test_unknown_suite_exits_2(self, capsys):
        with pytest.raises(SystemExit) as err:
            main(["verify", "--suite", "nonsense"])
        assert err.value.code == 2

    def test_repeated_runs_byte_identical(self):
        cmd = [sys.executable, "-m", "arakelov", "verify", "--suite", "bounds",
               "--seed", "0"]
        first = subprocess.run(cmd, capture_output=True, check=True)
        second = subprocess.run(cmd, capture_output=True, check=True)
        assert first.stdout == second.stdout
