"""Tests for verification_suite on the fast profile."""

import copy
import json
from typing import Any

import numpy as np
import pytest

import verification_suite
from config_manager import DEFAULT_CONFIG
from verification_suite import (
    SUITES,
    CheckResult,
    Outcome,
    VerificationContext,
    VerificationReport,
    run_check,
    run_suite,
    suite_checks,
)


def _fast_config(tmp_path, **overrides: Any) -> dict[str, Any]:
    cfg: dict[str, Any] = copy.deepcopy(DEFAULT_CONFIG)
    cfg["profile"] = "fast"
    cfg["verify"]["radii"] = [0.2, 0.5, 0.8]
    cfg["telemetry"]["log_path"] = str(tmp_path / "logs" / "metrics.jsonl")
    for key, value in overrides.items():
        cfg[key] = value
    return cfg


class TestSuiteRegistry:
    def test_ids_unique(self):
        ids = [check_id for check_id, _ in suite_checks("all")]
        assert len(ids) == len(set(ids))

    def test_lemma_ids_present(self):
        ids = {check_id for check_id, _ in suite_checks("lemmas")}
        for name in (
            "lemma_jacobian_positive",
            "lemma_ReG_decreasing",
            "lemma_ImG_positive",
            "lemma_g_prime_positive",
        ):
            assert name in ids

    def test_all_is_concatenation(self):
        assert len(suite_checks("all")) == sum(len(c) for c in SUITES.values())

    def test_unknown_suite(self):
        with pytest.raises(KeyError):
            suite_checks("nope")


class TestRunCheck:
    def test_exception_becomes_fail_with_witness(self, tmp_path):
        ctx = VerificationContext(_fast_config(tmp_path))

        def broken(_ctx):
            raise RuntimeError("boom")

        result = run_check(ctx, "broken", broken)
        assert result.status == "FAIL"
        assert "boom" in result.witness["error"]

    def test_fail_without_witness_gets_measured(self, tmp_path):
        ctx = VerificationContext(_fast_config(tmp_path))
        result = run_check(ctx, "x", lambda _ctx: Outcome(False, 3.0, 1.0))
        assert result.witness == {"measured": 3.0}

    def test_pass_drops_witness(self, tmp_path):
        ctx = VerificationContext(_fast_config(tmp_path))
        result = run_check(ctx, "x", lambda _ctx: Outcome(True, 0.0, 1.0, {"a": 1}))
        assert result.status == "PASS"
        assert result.witness is None

    def test_skip(self, tmp_path):
        ctx = VerificationContext(_fast_config(tmp_path))
        skipped = Outcome(True, None, None, skipped=True)
        result = run_check(ctx, "x", lambda _ctx: skipped)
        assert result.status == "SKIP"

    def test_no_timing_zeroes_runtime(self, tmp_path):
        cfg = _fast_config(tmp_path)
        cfg["verify"]["include_timing"] = False
        ctx = VerificationContext(cfg)
        result = run_check(ctx, "x", lambda _ctx: Outcome(True, 0, 0))
        assert result.runtime_ms == 0.0

    def test_rng_depends_on_id_and_seed(self, tmp_path):
        ctx = VerificationContext(_fast_config(tmp_path))
        a = ctx.rng("one").uniform(size=3)
        assert np.array_equal(a, ctx.rng("one").uniform(size=3))
        assert not np.array_equal(a, ctx.rng("two").uniform(size=3))


class TestReport:
    def test_json_handles_complex_and_numpy(self):
        report = VerificationReport(
            suite="x",
            results=[
                CheckResult(
                    "c",
                    "FAIL",
                    np.float64(-0.0),
                    1e-9,
                    0.0,
                    {"at": 1 + 2j, "arr": np.arange(2), "inf": float("inf")},
                )
            ],
        )
        data = json.loads(report.to_json())
        assert data["passed"] is False
        assert data["summary"] == {"PASS": 0, "FAIL": 1, "SKIP": 0}
        witness = data["results"][0]["witness"]
        assert witness["at"] == [1.0, 2.0]
        assert witness["arr"] == [0, 1]
        assert witness["inf"] == "inf"
        assert report.to_json().count("-0.0") == 0


class TestLemmaSuite:
    def test_all_pass_and_telemetry_written(self, tmp_path):
        cfg = _fast_config(tmp_path)
        report = run_suite("lemmas", cfg)
        failed = [r.check_id for r in report.results if r.status != "PASS"]
        assert failed == []
        version = report.provenance["artifact_version"]
        assert version == verification_suite.ARTIFACT_VERSION
        lines = (tmp_path / "logs" / "metrics.jsonl").read_text().splitlines()
        entry = json.loads(lines[-1])
        assert entry["suite"] == "lemmas"
        assert entry["fail"] == 0

    def test_deterministic_without_timing(self, tmp_path):
        cfg = _fast_config(tmp_path)
        cfg["verify"]["include_timing"] = False
        cfg["telemetry"]["enabled"] = False
        first = run_suite("lemmas", cfg).to_json()
        second = run_suite("lemmas", copy.deepcopy(cfg)).to_json()
        assert first == second


class TestIndividualChecks:
    @pytest.mark.parametrize(
        "check",
        [
            verification_suite.check_F_alternate_form,
            verification_suite.check_expG_equals_F,
            verification_suite.check_G_symmetry,
            verification_suite.check_wirtinger_fd,
            verification_suite.check_envelope_circles,
            verification_suite.check_W_scaling,
            verification_suite.check_krzyz_curve,
            verification_suite.check_LU_vertical_convexity,
            verification_suite.check_gamma_convergence,
            verification_suite.check_limit_curves,
            verification_suite.check_membership_examples,
            verification_suite.check_strip_bounds,
        ],
    )
    def test_passes_on_fast_profile(self, tmp_path, check):
        cfg = _fast_config(tmp_path)
        cfg["verify"]["radii"] = [0.2, 0.5, 0.8]
        outcome = check(VerificationContext(cfg))
        assert outcome.passed, outcome

    def test_witness_roundtrips_small(self, tmp_path):
        cfg = _fast_config(tmp_path)
        cfg["verify"]["witness_targets"] = 20
        cfg["profile"] = "custom"
        ctx = VerificationContext(cfg)
        assert verification_suite.check_lw_roundtrip(ctx).passed
        assert verification_suite.check_lv_roundtrip(ctx).passed
