"""Tests for the trace of the canonical module.

These tests define our goals for the trace engine:
- Goal 1: The trace is the unit ideal exactly for Gorenstein rings
- Goal 2: Nearly Gorenstein verdicts match known examples
- Goal 3: The type-two shortcut agrees with the full computation
- Goal 4: The punctured index is the least k with m^k inside the trace
"""

import random

import pytest

from levelness.errors import InputError, NotCohenMacaulayError
from levelness.polynomials import Ideal, Ring
from levelness.resolution import minimal_free_resolution, ring_invariants
from levelness.trace import (
    is_nearly_gorenstein,
    punctured_index,
    trace_canonical,
    trace_report,
    type2_shortcut,
)

from .conftest import (
    SAMPLE_HYPERSURFACE,
    SAMPLE_MONOMIAL_IDEAL,
    SAMPLE_PRIME_CUBICS,
    SAMPLE_TORIC_CODIM_TWO,
)


def _setup(sample: dict):
    ring = Ring(tuple(sample["variables"]))
    ideal = Ideal.parse(ring, sample["generators"])
    res = minimal_free_resolution(ideal)
    return ideal, res, ring_invariants(res)


class TestTrace:
    """Tests for trace ideals."""

    def test_monomial_quotient_trace_is_maximal_ideal(self):
        """Goal: xz, yz, y^3 has trace m, so it is nearly Gorenstein."""
        ideal, res, inv = _setup(SAMPLE_MONOMIAL_IDEAL)
        trace = trace_canonical(ideal, res, inv)
        assert is_nearly_gorenstein(trace)
        assert not trace.is_unit

    def test_hypersurface_trace_is_unit(self):
        """Goal: A Gorenstein ring has the unit ideal as trace."""
        ideal, res, inv = _setup(SAMPLE_HYPERSURFACE)
        trace = trace_canonical(ideal, res, inv)
        assert trace.is_unit
        assert inv.is_gorenstein

    def test_prime_cubics_nearly_gorenstein(self):
        """Goal: The non-toric prime of three cubics is nearly Gorenstein."""
        ideal, res, inv = _setup(SAMPLE_PRIME_CUBICS)
        _, report = trace_report(ideal, res, inv)
        assert report.trace_contains_m
        assert report.type2_shortcut is True

    def test_toric_codim_two_not_nearly_gorenstein(self):
        """Goal: The trace misses m but contains m^4."""
        ideal, res, inv = _setup(SAMPLE_TORIC_CODIM_TWO)
        trace = trace_canonical(ideal, res, inv)
        assert not is_nearly_gorenstein(trace)
        index = punctured_index(trace, 6)
        assert index.index is not None
        assert index.index <= 4

    def test_trace_contains_ideal(self):
        """Goal: J itself lies in the trace."""
        ideal, res, inv = _setup(SAMPLE_MONOMIAL_IDEAL)
        trace = trace_canonical(ideal, res, inv)
        assert all(trace.contains(g) for g in ideal.generators)

    def test_not_cm_refused(self):
        """Goal: The trace is only defined here for CM rings."""
        ring = Ring(("x", "y", "z", "w"))
        ideal = Ideal.parse(ring, ["x*z", "x*w", "y*z", "y*w"])
        res = minimal_free_resolution(ideal)
        with pytest.raises(NotCohenMacaulayError):
            trace_canonical(ideal, res, ring_invariants(res))

    def test_linear_generator_refused(self):
        """Goal: Ideals outside m^2 are refused."""
        ring = Ring(("x", "y", "z"))
        ideal = Ideal.parse(ring, ["x - y", "x*z"])
        res = minimal_free_resolution(ideal)
        with pytest.raises(InputError, match="square"):
            trace_canonical(ideal, res, ring_invariants(res))

    @pytest.mark.parametrize(
        "sample", [SAMPLE_MONOMIAL_IDEAL, SAMPLE_PRIME_CUBICS, SAMPLE_TORIC_CODIM_TWO]
    )
    @pytest.mark.parametrize("seed", range(3))
    def test_trace_ignores_generator_order(self, sample, seed):
        """Goal: Shuffling the generators of J gives the same reduced trace."""
        ideal, res, inv = _setup(sample)
        expected = trace_canonical(ideal, res, inv)
        shuffled = list(sample["generators"])
        random.Random(seed).shuffle(shuffled)
        other, other_res, other_inv = _setup({**sample, "generators": shuffled})
        trace = trace_canonical(other, other_res, other_inv)
        assert trace.gb.generators == expected.gb.generators
        assert is_nearly_gorenstein(trace) is is_nearly_gorenstein(expected)


class TestShortcut:
    """Tests for the type-two shortcut."""

    @pytest.mark.parametrize(
        "sample,expected",
        [
            (SAMPLE_MONOMIAL_IDEAL, True),
            (SAMPLE_PRIME_CUBICS, True),
            (SAMPLE_TORIC_CODIM_TWO, False),
        ],
    )
    def test_shortcut_matches_trace(self, sample, expected):
        """Goal: Shortcut and full trace give the same verdict."""
        ideal, res, inv = _setup(sample)
        assert type2_shortcut(ideal, res, inv) is expected
        assert is_nearly_gorenstein(trace_canonical(ideal, res, inv)) is expected

    def test_shortcut_not_applicable_to_type_one(self):
        """Goal: Gorenstein rings get None."""
        ideal, res, inv = _setup(SAMPLE_HYPERSURFACE)
        assert type2_shortcut(ideal, res, inv) is None


class TestPuncturedIndex:
    """Tests for the punctured index."""

    def test_unit_trace_has_index_zero(self):
        """Goal: Gorenstein means index 0."""
        ideal, res, inv = _setup(SAMPLE_HYPERSURFACE)
        assert punctured_index(trace_canonical(ideal, res, inv), 3).index == 0

    def test_nearly_gorenstein_has_index_one(self):
        """Goal: Trace m means index 1."""
        ideal, res, inv = _setup(SAMPLE_MONOMIAL_IDEAL)
        assert punctured_index(trace_canonical(ideal, res, inv), 3).index == 1

    def test_cutoff_reports_none(self):
        """Goal: Not reaching m^k within the cutoff gives None."""
        ideal, res, inv = _setup(SAMPLE_TORIC_CODIM_TWO)
        result = punctured_index(trace_canonical(ideal, res, inv), 1)
        assert result.index is None
        assert result.cutoff == 1

    def test_kmax_must_be_positive(self):
        """Goal: kmax below 1 is an input error."""
        ideal, res, inv = _setup(SAMPLE_MONOMIAL_IDEAL)
        with pytest.raises(InputError):
            punctured_index(trace_canonical(ideal, res, inv), 0)
