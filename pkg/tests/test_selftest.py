"""Tests for the acceptance suite runner."""

import pytest
from unittest.mock import patch

from bcframes.config import apply_overrides
from bcframes.exceptions import ParseError
from bcframes.selftest import CRITERIA, Criterion, run_selftest
from bcframes.utils.codec import dumps


def strip_timing(report: dict) -> dict:
    for result in report["results"]:
        result.pop("elapsed")
    return report


class TestRegistry:
    """Test the criterion registry."""

    def test_quick_subset_is_registered(self, config):
        """Test every configured quick criterion exists."""
        assert set(config["selftest"]["quick"]) <= set(CRITERIA)

    def test_titles(self):
        """Test every criterion has a title."""
        assert all(c.title for c in CRITERIA.values())


class TestRunSelftest:
    """Test run_selftest."""

    def test_quick_subset_passes(self, config):
        """Test the quick subset passes with the configured seed."""
        report = run_selftest(config, config["random"]["seed"], quick=True)
        failed = [r.name for r in report.results if not r.passed]
        assert failed == []
        assert [r.name for r in report.results] == [n for n in CRITERIA if n in config["selftest"]["quick"]]

    @pytest.mark.parametrize("seed", [0, 1, 2021])
    def test_seed_independent(self, config, seed):
        """Test randomized criteria pass for other seeds."""
        report = run_selftest(config, seed, only=["component_bounds", "exactness", "operator"])
        assert report.passed, [r.measured for r in report.results if not r.passed]

    def test_same_seed_same_report(self, config):
        """Test two runs with one seed measure the same values."""
        first = strip_timing(run_selftest(config, 42, only=["component_bounds", "operator"]).to_dict())
        second = strip_timing(run_selftest(config, 42, only=["component_bounds", "operator"]).to_dict())
        assert dumps(first) == dumps(second)

    def test_unknown_criterion(self, config):
        """Test an unknown name is rejected."""
        with pytest.raises(ParseError, match="unknown selftest criteria"):
            run_selftest(config, 1, only=["nonexistent"])

    def test_raising_criterion_fails(self, config):
        """Test an exception inside a check becomes a failed result."""
        def boom(rng, cfg):
            raise RuntimeError("boom")

        with patch.dict(CRITERIA, {"algebra": Criterion("algebra", "explodes", boom)}):
            report = run_selftest(config, 1, only=["algebra"])
        assert not report.passed
        assert report.results[0].measured == {"error": "RuntimeError: boom"}

    def test_failed_check_fails_report(self, config):
        """Test a single failing criterion fails the report."""
        with patch.dict(CRITERIA, {"algebra": Criterion("algebra", "fails", lambda rng, cfg: (False, {}))}):
            report = run_selftest(config, 1, only=["algebra", "heil_walnut"])
        assert [r.passed for r in report.results] == [True, False]
        assert not report.passed
        assert report.to_dict()["passed"] is False


class TestMeasuredEvidence:
    """Test criteria measure against independent computations."""

    def test_component_bounds_use_rayleigh_estimates(self, config):
        """Test sampled quotients stay inside [A, B] and the refinement reaches both ends."""
        result = run_selftest(config, 5, only=["component_bounds"]).results[0]
        assert result.passed
        assert result.measured["inequality_violations"] == 0
        assert result.measured["worst_rayleigh_reach"] <= 1e-8

    def test_component_bounds_follow_jacobi_config(self, config):
        """Test a one-sweep cap leaves eigensystems unconverged and fails the criterion."""
        capped = apply_overrides(config, {"jacobi_max_sweeps": 1})
        result = run_selftest(capped, 5, only=["component_bounds"]).results[0]
        assert not result.passed
        assert result.measured["unconverged"] > 0

    def test_operator_norm_by_power_iteration(self, config):
        """Test the power iteration estimate reaches B without exceeding the bound."""
        result = run_selftest(config, 5, only=["operator"]).results[0]
        assert result.passed
        assert result.measured["norm_bound_failures"] == 0
        assert result.measured["worst_norm_reach"] <= 1e-8

    def test_norm_identities_compare_independent_grids(self, config):
        """Test only cross-grid discrepancies are measured."""
        result = run_selftest(config, 5, only=["norm_identities"]).results[0]
        assert result.passed
        for row in result.measured["functions"]:
            assert set(row) == {"function", "direct", "idempotent", "rel_discrepancy", "refined_rel_discrepancy"}
            assert row["refined_rel_discrepancy"] < row["rel_discrepancy"]
