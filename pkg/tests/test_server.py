"""Tests for the MCP tools.

These tests define our goals for the server:
- Goal 1: Each tool returns a camelCase report dictionary
- Goal 2: Bad input comes back as {"error": ...} instead of raising
- Goal 3: The corpus tool returns a summary and per-item results
"""

from levelness.server import (
    analyze_complex,
    analyze_ideal,
    analyze_semigroup,
    mcp,
    run_corpus,
)

from .conftest import SAMPLE_MONOMIAL_IDEAL, SAMPLE_STAR


class TestAnalyzeIdeal:
    """Tests for the analyze_ideal tool."""

    async def test_monomial_ideal(self):
        """Goal: Verdicts and Betti numbers come back under camelCase keys."""
        result = await analyze_ideal(
            variables=SAMPLE_MONOMIAL_IDEAL["variables"],
            generators=SAMPLE_MONOMIAL_IDEAL["generators"],
        )
        assert "error" not in result
        assert result["isNearlyGorenstein"] is True
        assert result["type"] == 2
        assert {"i": 0, "j": 0, "rank": 1} in result["bettiTable"]

    async def test_weights_passed_through(self):
        """Goal: Weighted ideals report a numerator and no h-vector."""
        result = await analyze_ideal(
            variables=["x", "y", "z"], generators=["x*y", "z^2"], weights=[1, 1, 2]
        )
        assert result["hVector"] is None
        assert result["hilbertNumerator"] == [1, 0, -1, 0, -1, 0, 1]

    async def test_bad_generator(self):
        """Goal: Unknown variables give an error dictionary."""
        result = await analyze_ideal(variables=["x"], generators=["y^2"])
        assert "error" in result

    async def test_bad_options(self):
        """Goal: Invalid options give an error dictionary."""
        result = await analyze_ideal(
            variables=["x", "y"], generators=["x*y"], options={"kmax": 0}
        )
        assert "error" in result


class TestAnalyzeSemigroup:
    """Tests for the analyze_semigroup tool."""

    async def test_exponents(self):
        """Goal: The curve shorthand runs both engines."""
        result = await analyze_semigroup(exponents=[0, 1, 2, 3])
        assert result["crossEngineAgreement"] is True
        assert result["isLevel"] is True

    async def test_generators(self):
        """Goal: Explicit generator vectors are accepted."""
        result = await analyze_semigroup(generators=[[1, 0], [1, 1], [1, 3]])
        assert result["isGorenstein"] is True

    async def test_nothing_given(self):
        """Goal: Missing generators and exponents is an error."""
        result = await analyze_semigroup()
        assert result == {"error": "Give generators or exponents"}

    async def test_resource_cap(self):
        """Goal: Hitting a cap is reported, not raised."""
        result = await analyze_semigroup(
            exponents=[0, 1, 50], options={"max_degree": 20}
        )
        assert "error" in result


class TestAnalyzeComplex:
    """Tests for the analyze_complex tool."""

    async def test_star(self):
        """Goal: A star is CM, not NG and not locally Gorenstein."""
        result = await analyze_complex(
            vertices=SAMPLE_STAR["vertices"], facets=SAMPLE_STAR["facets"]
        )
        assert result["isCm"] is True
        assert result["isNearlyGorenstein"] is False
        assert result["complex"]["locallyGorenstein"] is False

    async def test_nested_facets(self):
        """Goal: Invalid complexes give an error dictionary."""
        result = await analyze_complex(vertices=3, facets=[[1, 2], [1, 2, 3]])
        assert "error" in result


class TestRunCorpus:
    """Tests for the run_corpus tool."""

    async def test_filtered(self):
        """Goal: The summary counts match the returned results."""
        result = await run_corpus(filter="complex")
        assert result["summary"]["total"] == len(result["results"])
        assert result["summary"].get("pass") == result["summary"]["total"]


class TestRegistration:
    """Tests for tool registration."""

    async def test_tools_listed(self):
        """Goal: All four tools are registered."""
        names = {t.name for t in await mcp.list_tools()}
        assert names == {"analyze_ideal", "analyze_semigroup", "analyze_complex", "run_corpus"}
