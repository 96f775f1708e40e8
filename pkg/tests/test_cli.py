"""CLI: subcommands, CSV artifacts, determinism, exit codes."""

import math
import subprocess
import sys

import pytest

from shiftorbits.cli import main, parse_vector_spec


def run_cli(*argv):
    proc = subprocess.run(
        [sys.executable, "-m", "shiftorbits", *argv],
        capture_output=True,
        text=True,
    )
    return proc.returncode, proc.stdout, proc.stderr


class TestVectorSpecs:
    def test_basis(self):
        v = parse_vector_spec("e-3")
        assert v.support.tolist() == [-3]

    def test_harmonic(self):
        v = parse_vector_spec("harmonic:5")
        assert v.support.size == 10

    def test_random_is_seeded(self):
        a = parse_vector_spec("random:4:7")
        b = parse_vector_spec("random:4:7")
        assert a.support.tolist() == b.support.tolist()
        assert a.support.size == 4

    def test_file(self, tmp_path):
        path = tmp_path / "vec.csv"
        path.write_text("index,coefficient\n0,1.0\n3,-0.5\n", encoding="utf-8")
        v = parse_vector_spec(f"file:{path}")
        assert v.support.tolist() == [0, 3]
        assert v.coeff_at(3) == pytest.approx(-0.5)

    def test_bad_spec(self):
        import argparse

        with pytest.raises(argparse.ArgumentTypeError):
            parse_vector_spec("nonsense")


class TestOrbitCommand:
    def test_csv_artifact(self, tmp_path):
        out = tmp_path / "orbit.csv"
        code = main(
            ["orbit", "--family", "geometric", "--c", "1", "--vector", "e0",
             "--nmin", "0", "--nmax", "10", "--out", str(out)]
        )
        assert code == 0
        lines = out.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "N,lognorm"
        assert len(lines) == 12  # header + 11 samples
        n, lognorm = lines[4].split(",")
        assert float(lognorm) == pytest.approx(-int(n) * math.log(2), abs=1e-14)

    def test_determinism(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["orbit", "--family", "krein", "--c", "1", "--vector", "random:5:3",
                "--nmin", "-20", "--nmax", "20"]
        assert main(args + ["--out", str(a)]) == 0
        assert main(args + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_outdir_env(self, tmp_path, monkeypatch):
        monkeypatch.setenv("SHIFTORBITS_OUTDIR", str(tmp_path))
        assert main(["orbit", "--family", "mixed", "--vector", "e0",
                     "--nmin", "0", "--nmax", "5", "--out", "rel.csv"]) == 0
        assert (tmp_path / "rel.csv").exists()


class TestWitnessCommand:
    def test_table_and_status(self, tmp_path):
        out = tmp_path / "w.csv"
        code, stdout, _ = run_cli(
            "witness", "--family", "krein", "--c", "1", "--kmax", "3", "--out", str(out)
        )
        assert code == 0
        assert "increasing" in stdout
        lines = out.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "k,checkpoint,margin"
        assert len(lines) == 4
        margins = [float(line.split(",")[2]) for line in lines[1:]]
        assert margins == sorted(margins) and margins[0] > 0

    def test_wrong_family_is_usage_error(self):
        code, _, _ = run_cli("witness", "--family", "mixed")
        assert code == 2


class TestVerifyFormsCommand:
    def test_pass_and_report(self, tmp_path):
        out = tmp_path / "forms.csv"
        code, stdout, _ = run_cli(
            "verify-forms", "--family", "geometric", "--form", "both",
            "--samples", "20", "--nmax", "25", "--out", str(out)
        )
        assert code == 0
        lines = out.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "check,max_violation,tolerance,pass"
        assert len(lines) == 3
        assert all(line.endswith("true") for line in lines[1:])


class TestSpectralCommand:
    def test_mixed_adjoint_inverse(self):
        code, stdout, _ = run_cli(
            "spectral", "--family", "mixed", "--mode", "adjoint-inverse", "--nmax", "100"
        )
        assert code == 0
        assert "1.0472" in stdout
        assert "closed-form value 1" in stdout
        assert "windowed norm exact" in stdout


class TestClassifyCommand:
    def test_krein_splus(self):
        code, stdout, _ = run_cli(
            "classify", "--family", "krein", "--vector", "e0", "--kind", "s+",
            "--rate", "2", "--nmax", "511"
        )
        assert code == 0
        assert "violated" in stdout
        assert "evidence" in stdout


class TestLyapunovCommand:
    def test_geometric(self):
        code, stdout, _ = run_cli(
            "lyapunov", "--family", "geometric", "--vector", "e0",
            "--nmin", "0", "--nmax", "100"
        )
        assert code == 0
        assert f"lambda+ {-math.log(2):.6f}"[:14] in stdout


class TestContinuousCommand:
    def test_sweep_and_checks(self, tmp_path):
        out = tmp_path / "sweep.csv"
        grid_out = tmp_path / "grid.csv"
        code, stdout, _ = run_cli(
            "continuous", "--weight", "geometric", "--tmax", "2", "--dt", "0.25",
            "--out", str(out), "--grid-out", str(grid_out)
        )
        assert code == 0
        lines = out.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "t,lognorm"
        assert len(lines) == 10
        assert "cocycle rel err" in stdout
        grid_lines = grid_out.read_text(encoding="utf-8").splitlines()
        assert grid_lines[0] == "x,value"
        assert len(grid_lines) > 100


class TestClassifyCsv:
    def test_verdict_report_schema(self, tmp_path):
        out = tmp_path / "verdict.csv"
        code = main(
            ["classify", "--family", "mixed", "--mode", "adjoint-inverse",
             "--vector", "e0", "--kind", "s", "--slack", "1", "--nmax", "200",
             "--out", str(out)]
        )
        assert code == 0
        lines = out.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "check,max_violation,tolerance,pass"
        check, margin, tol, ok = lines[1].split(",")
        assert check == "classify-s" and ok == "false"
        assert float(margin) == pytest.approx(math.log(201.0) - 1.0, rel=1e-12)


class TestExitCodes:
    def test_usage_error_bad_family(self):
        code, _, _ = run_cli("orbit", "--family", "bogus", "--nmin", "0", "--nmax", "5")
        assert code == 2

    def test_usage_error_bad_vector(self):
        code, _, _ = run_cli(
            "orbit", "--family", "mixed", "--vector", "wat", "--nmin", "0", "--nmax", "5"
        )
        assert code == 2

    def test_usage_error_bad_c(self):
        code, _, _ = run_cli(
            "orbit", "--family", "geometric", "--c", "0.5", "--vector", "e0",
            "--nmin", "0", "--nmax", "5"
        )
        assert code == 2

    def test_io_error(self, tmp_path):
        code, _, _ = run_cli(
            "orbit", "--family", "mixed", "--vector", "e0", "--nmin", "0", "--nmax", "5",
            "--out", str(tmp_path / "missing" / "orbit.csv")
        )
        assert code == 3
