"""Tests for the randomized property harness.

These tests define our goals for the harness:
- Goal 1: Sampling is deterministic for a seed
- Goal 2: Short runs finish with no violations
- Goal 3: The default run of 200 curves finds no violations
"""

import pytest

from levelness.config import EngineConfig
from levelness.harness import run_harness, sample_curves


class TestSampling:
    """Tests for curve sampling."""

    def test_same_seed_same_curves(self):
        """Goal: A seed fixes the sample."""
        assert sample_curves(3, 10, 5, 12) == sample_curves(3, 10, 5, 12)

    def test_curves_start_at_zero(self):
        """Goal: Every sample is shifted to start at 0 and stays in range."""
        for curve in sample_curves(11, 50, 5, 12):
            assert curve[0] == 0
            assert 2 <= len(curve) <= 5
            assert curve == sorted(set(curve))
            assert curve[-1] <= 12


class TestRun:
    """Tests for harness runs."""

    def test_short_run(self):
        """Goal: A few seeded curves give a clean report."""
        report = run_harness(seed=1, instances=5)
        assert report.seed == 1
        assert report.instances == 5
        assert report.violations == []
        assert report.nearly_gorenstein <= report.cohen_macaulay <= 5

    def test_config_defaults_used(self):
        """Goal: Seed and instance count fall back to the config."""
        report = run_harness(config=EngineConfig(seed=4, harness_instances=2))
        assert (report.seed, report.instances) == (4, 2)

    def test_resource_caps_skip(self):
        """Goal: Curves past the degree cap are skipped, not failed."""
        config = EngineConfig(max_degree=1)
        report = run_harness(seed=0, instances=3, config=config)
        assert report.violations == []
        assert report.resource_skipped == 3
        assert report.cohen_macaulay == 0

    @pytest.mark.slow
    def test_default_run(self):
        """Goal: Two hundred curves pass every cross-check."""
        report = run_harness(seed=0, instances=200)
        assert report.violations == []
        assert report.cohen_macaulay > 0
