"""Tests for the combinatorial nearly-Gorenstein criterion on semigroups.

These tests define our goals for the semigroup engine:
- Goal 1: Canonical multidegrees are read off the multigraded resolution
- Goal 2: Every verdict is invariant under translating V
- Goal 3: Both modes of the criterion agree and match the structure audits
- Goal 4: Non-CM input and points off the lattice are refused
"""

import pytest

from levelness.errors import InputError, NotCohenMacaulayError
from levelness.resolution import hilbert, minimal_free_resolution, ring_invariants
from levelness.semigroup_trace import (
    canonical_V,
    ng_semigroup,
    s_minus_v_test,
    structure_audit,
    trace_set,
    translate,
)
from levelness.toric import numerical_curve, toric_ideal, validate

from .conftest import SAMPLE_CURVE_NOT_NG, SAMPLE_TWISTED_CUBIC


def _prepare(semigroup):
    res = minimal_free_resolution(toric_ideal(semigroup))
    inv = ring_invariants(res, semigroup.rank)
    h = hilbert(res, inv.dim).h_vector
    return res, inv, h


@pytest.fixture
def twisted_cubic():
    semigroup = numerical_curve(SAMPLE_TWISTED_CUBIC)
    return (semigroup,) + _prepare(semigroup)


class TestCanonicalData:
    """Tests for V and V_min."""

    def test_twisted_cubic_is_level(self, twisted_cubic):
        """Goal: Two canonical generators, both of minimal degree."""
        semigroup, res, inv, h = twisted_cubic
        cd = canonical_V(semigroup, res, inv, h)
        assert len(cd.v) == 2
        assert len(cd.v_min) == 2
        assert all(semigroup.degree(v) == 0 for v in cd.v_min)

    def test_hypersurface_has_single_canonical_degree(self):
        """Goal: A Gorenstein semigroup ring has |V| = 1."""
        semigroup = numerical_curve([0, 1, 3])
        res, inv, h = _prepare(semigroup)
        cd = canonical_V(semigroup, res, inv, h)
        assert cd.v == ((0, 0),)

    def test_not_cm_is_refused(self):
        """Goal: Canonical data needs a Cohen-Macaulay ring."""
        semigroup = numerical_curve([0, 1, 3, 4])
        res, inv, h = _prepare(semigroup)
        assert not inv.is_cm
        with pytest.raises(NotCohenMacaulayError):
            canonical_V(semigroup, res, inv, h)


class TestCriterion:
    """Tests for the S - V membership criterion."""

    def test_twisted_cubic_is_nearly_gorenstein(self, twisted_cubic):
        """Goal: Every generator of the twisted cubic admits a certificate."""
        semigroup, res, inv, h = twisted_cubic
        cd = canonical_V(semigroup, res, inv, h)
        report = ng_semigroup(semigroup, cd)
        assert report.nearly_gorenstein
        for cert in report.certificates:
            assert [a - b for a, b in zip(cert.generator, cert.v)] == cert.u

    def test_modes_agree(self, twisted_cubic):
        """Goal: Drawing v from V or from V_min gives the same verdict."""
        semigroup, res, inv, h = twisted_cubic
        cd = canonical_V(semigroup, res, inv, h)
        assert (
            ng_semigroup(semigroup, cd, mode="any").nearly_gorenstein
            == ng_semigroup(semigroup, cd, mode="min").nearly_gorenstein
        )

    def test_translation_invariance(self, twisted_cubic):
        """Goal: Translating V by a lattice vector changes no verdict."""
        semigroup, res, inv, h = twisted_cubic
        cd = canonical_V(semigroup, res, inv, h)
        for shift in [(1, 0), (0, 1), (-2, 5)]:
            moved = translate(cd, shift)
            assert trace_set(semigroup, moved).members == trace_set(semigroup, cd).members

    def test_point_off_lattice_refused(self):
        """Goal: u must lie in ZS."""
        semigroup = numerical_curve([0, 2, 4])
        res, inv, h = _prepare(semigroup)
        cd = canonical_V(semigroup, res, inv, h)
        with pytest.raises(InputError, match="group"):
            s_minus_v_test((0, 1), cd, semigroup)

    def test_negative_degree_fails_fast(self, twisted_cubic):
        """Goal: Degree alone rules out u + V inside S."""
        semigroup, res, inv, h = twisted_cubic
        cd = canonical_V(semigroup, res, inv, h)
        assert not s_minus_v_test((-3, 0), cd, semigroup)

    def test_structure_audits_pass(self, twisted_cubic):
        """Goal: Every audit passes on a CM input."""
        semigroup, res, inv, h = twisted_cubic
        cd = canonical_V(semigroup, res, inv, h)
        checks = structure_audit(semigroup, cd, trace_set(semigroup, cd), inv, h)
        assert {c.name for c in checks} >= {
            "nearly-gorenstein-type-two-is-level",
            "top-h-equals-minimal-canonical-count",
        }
        assert all(c.passed for c in checks)

    def test_three_dimensional_semigroup(self):
        """Goal: The Veronese-type cone over a triangle is nearly Gorenstein."""
        semigroup = validate([[1, 0, 0], [1, 1, 0], [1, 0, 1], [1, 2, 0], [1, 1, 1], [1, 0, 2]])
        res, inv, h = _prepare(semigroup)
        assert inv.is_cm
        cd = canonical_V(semigroup, res, inv, h)
        assert ng_semigroup(semigroup, cd).nearly_gorenstein

    def test_single_minimal_degree_misses_a_ray(self):
        """Goal: With |V_min| = 1 some extremal generator is outside the trace."""
        semigroup = numerical_curve(SAMPLE_CURVE_NOT_NG)
        res, inv, h = _prepare(semigroup)
        cd = canonical_V(semigroup, res, inv, h)
        assert len(cd.v_min) == 1
        traces = trace_set(semigroup, cd)
        assert not traces.nearly_gorenstein
        assert not ng_semigroup(semigroup, cd, mode="any").nearly_gorenstein
        checks = structure_audit(semigroup, cd, traces, inv, h)
        assert all(c.passed for c in checks)
