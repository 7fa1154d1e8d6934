"""Tests for the command-line front end."""

import json

import pytest

from bcframes.cli import build_parser, main


def run_cli(capsys, *argv: str) -> tuple[int, dict, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    payload = json.loads(captured.out) if captured.out.strip() else {}
    return code, payload, captured.err


class TestParser:
    """Test argument parsing."""

    def test_tolerance_pairs(self):
        """Test repeated --tolerance flags."""
        args = build_parser().parse_args(
            ["dual", "-i", "{}", "--tolerance", "reconstruction=1e-6", "--tolerance", "frame_rank=1e-8"]
        )
        assert dict(args.tolerance) == {"reconstruction": 1e-6, "frame_rank": 1e-8}

    def test_usage_error_exits_one(self, capsys):
        """Test a malformed --tolerance is a usage error with exit code 1."""
        assert main(["dual", "-i", "{}", "--tolerance", "oops"]) == 1

    def test_missing_command(self, capsys):
        """Test a missing subcommand."""
        assert main([]) == 1


class TestCommands:
    """Test each command end to end."""

    def test_analyze_fixture(self, capsys):
        """Test analyze on a stock fixture."""
        code, payload, err = run_cli(capsys, "analyze", "-i", '{"fixture": "embedded_onb"}', "--seed", "3")
        assert code == 0
        assert payload["command"] == "analyze"
        assert payload["seed"] == 3
        assert payload["frame"]["is_parseval"]
        assert payload["tolerances"]["frame_rank"] == 1e-10
        assert payload["request"]["command"] == "analyze"
        assert "wall_time" in payload
        assert "A=1" in err

    def test_analyze_not_a_frame(self, capsys):
        """Test a non-frame is reported without --require-frame."""
        code, payload, _ = run_cli(capsys, "analyze", "-i", '{"fixture": "rank_deficient"}')
        assert code == 0
        assert payload["frame"]["is_frame"] is False
        assert "rayleigh" not in payload

    def test_require_frame(self, capsys):
        """Test --require-frame exits 2 for a non-frame."""
        code, _, err = run_cli(capsys, "analyze", "-i", '{"fixture": "rank_deficient"}', "--require-frame")
        assert code == 2
        assert "not a bc-frame" in err

    def test_dual(self, capsys):
        """Test the dual frame and its reconstruction residual."""
        code, payload, _ = run_cli(capsys, "dual", "-i", '{"fixture": "cexp"}')
        assert code == 0
        assert payload["passed"]
        assert payload["worst_residual"] < 1e-9
        assert len(payload["dual"]["vectors"]) == 4

    def test_reconstruction_threshold_override(self, capsys):
        """Test an impossible threshold exits 2."""
        code, payload, _ = run_cli(
            capsys, "reconstruct", "-i", '{"fixture": "riesz"}', "--tolerance", "reconstruction=1e-300"
        )
        assert code == 2
        assert payload["passed"] is False
        assert payload["tolerances"]["reconstruction"] == 1e-300

    def test_reconstruct_supplied_signal(self, capsys, tmp_path):
        """Test reconstruction of a signal given next to the frame."""
        spec = {
            "dim": 2,
            "vectors": [
                {"plus": [[1, 0], [0, 0]], "minus": [[1, 0], [0, 0]]},
                {"plus": [[0, 0], [1, 0]], "minus": [[0, 0], [2, 0]]},
                {"plus": [[1, 0], [1, 0]], "minus": [[0, 0], [1, 0]]},
            ],
            "signal": {"plus": [[0.5, 0], [0, 1]], "minus": [[1, 1], [0, 0]]},
        }
        path = tmp_path / "frame.json"
        path.write_text(json.dumps(spec))
        code, payload, _ = run_cli(capsys, "reconstruct", "-i", str(path))
        assert code == 0
        assert payload["signals"] == 1
        assert payload["reconstructed"][0]["plus"][0] == pytest.approx([0.5, 0.0])

    def test_gabor(self, capsys):
        """Test the painless Gabor fixture."""
        code, payload, _ = run_cli(capsys, "gabor", "-i", '{"fixture": "painless"}')
        assert code == 0
        assert payload["gabor"]["frame"]["A"] == pytest.approx(8.0)
        assert payload["gabor"]["heil_walnut_plus"]["matches"]

    def test_gabor_require_frame(self, capsys):
        """Test --require-frame on a system with a coverage gap."""
        code, _, _ = run_cli(capsys, "gabor", "-i", '{"fixture": "gap"}', "--require-frame")
        assert code == 2

    def test_psi(self, capsys):
        """Test the psi command with a coarser grid override."""
        code, payload, _ = run_cli(capsys, "psi", "-i", '{"fixture": "gaussian", "points": 129}')
        assert code == 0
        assert payload["psi"]["lower_bound_fails"]
        assert payload["psi"]["system"]["points"] == 129

    def test_output_file(self, capsys, tmp_path):
        """Test --output writes the report instead of stdout."""
        out = tmp_path / "report.json"
        code = main(["analyze", "-i", '{"fixture": "doubled_onb"}', "-o", str(out)])
        captured = capsys.readouterr()
        assert code == 0
        assert captured.out == ""
        assert json.loads(out.read_text())["frame"]["is_tight"]

    def test_seed_from_environment(self, capsys, monkeypatch):
        """Test $BCFRAMES_SEED when no flag is given."""
        monkeypatch.setenv("BCFRAMES_SEED", "11")
        _, payload, _ = run_cli(capsys, "reconstruct", "-i", '{"fixture": "riesz"}')
        assert payload["seed"] == 11

    def test_same_seed_same_report(self, capsys):
        """Test reproducibility of random signals."""
        _, first, _ = run_cli(capsys, "reconstruct", "-i", '{"fixture": "weighted_onb"}', "--seed", "4")
        _, second, _ = run_cli(capsys, "reconstruct", "-i", '{"fixture": "weighted_onb"}', "--seed", "4")
        assert first["worst_residual"] == second["worst_residual"]

    def test_selftest_subset(self, capsys):
        """Test selftest with named criteria."""
        code, payload, err = run_cli(capsys, "selftest", "--only", "algebra", "heil_walnut")
        assert code == 0
        assert [r["name"] for r in payload["selftest"]["results"]] == ["heil_walnut", "algebra"]
        assert "[PASS] algebra" in err

    def test_demo_quick(self, capsys):
        """Test the demo over every frame and Gabor fixture."""
        code, payload, _ = run_cli(capsys, "demo", "--quick")
        assert code == 0
        assert payload["frames"]["cexp"]["is_exact"]
        assert payload["gabor"]["critical"]["critical_density"]["is_exact"]
        assert "psi" not in payload


class TestToleranceFlag:
    """Test --tolerance overrides reach every command."""

    @pytest.mark.parametrize("argv,name", [
        (["analyze", "-i", '{"fixture": "cexp"}'], "tight_rel"),
        (["dual", "-i", '{"fixture": "embedded_onb"}'], "frame_rank"),
        (["reconstruct", "-i", '{"fixture": "cexp"}'], "reconstruction"),
        (["gabor", "-i", '{"fixture": "painless"}'], "jacobi"),
        (["psi", "-i", '{"fixture": "gaussian", "points": 129}'], "hermite"),
        (["selftest", "--only", "algebra"], "zero_divisor"),
        (["demo", "--quick"], "quadrature"),
    ])
    def test_override_is_reported(self, capsys, argv, name):
        """Test the overridden value appears in the report."""
        code, payload, _ = run_cli(capsys, *argv, "--tolerance", f"{name}=0.25")
        assert code in (0, 2)
        assert payload["tolerances"][name] == 0.25

    def test_gabor_frame_rank(self, capsys):
        """Test frame_rank decides whether the painless system is a frame."""
        code, payload, _ = run_cli(capsys, "gabor", "-i", '{"fixture": "painless"}', "--tolerance", "frame_rank=5")
        assert code == 0
        assert payload["gabor"]["frame"]["is_frame"] is False
        code, _, _ = run_cli(
            capsys, "gabor", "-i", '{"fixture": "painless"}', "--tolerance", "frame_rank=5", "--require-frame"
        )
        assert code == 2

    def test_psi_hermite_flag(self, capsys):
        """Test the hermite tolerance decides the orthonormality flag."""
        _, payload, _ = run_cli(capsys, "psi", "-i", '{"fixture": "gaussian", "points": 129}', "--tolerance", "hermite=1e-30")
        assert payload["hermite_orthonormal"] is False


class TestLogging:
    """Test log output."""

    def test_config_warning_is_formatted(self, capsys, tmp_path):
        """Test messages from config loading go through the configured handler."""
        missing = tmp_path / "missing.json"
        code, _, err = run_cli(capsys, "--config", str(missing), "analyze", "-i", '{"fixture": "embedded_onb"}')
        assert code == 0
        assert "bcframes.config - WARNING - Config file not found" in err


class TestErrors:
    """Test exit codes for input errors."""

    def test_malformed_json(self, capsys):
        """Test ParseError with a position exits 1."""
        code, _, err = run_cli(capsys, "analyze", "-i", '{"dim": 2,, }')
        assert code == 1
        assert "line 1" in err

    def test_unknown_fixture(self, capsys):
        """Test an unknown fixture name."""
        code, _, err = run_cli(capsys, "gabor", "-i", '{"fixture": "nope"}')
        assert code == 1
        assert "unknown Gabor fixture" in err

    def test_dimension_mismatch(self, capsys):
        """Test vectors of different dimension."""
        spec = '{"vectors": [{"plus": [[1, 0]], "minus": [[1, 0]]}, {"plus": [[1, 0], [0, 0]], "minus": [[1, 0], [0, 0]]}]}'
        code, _, err = run_cli(capsys, "analyze", "-i", spec)
        assert code == 1
        assert "dimension" in err

    def test_dual_of_non_frame(self, capsys):
        """Test NotInvertible exits 2."""
        code, _, _ = run_cli(capsys, "dual", "-i", '{"fixture": "rank_deficient"}')
        assert code == 2
