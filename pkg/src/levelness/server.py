"""MCP server exposing the analyses as tools."""

import asyncio
from typing import Any

from mcp.server.fastmcp import FastMCP
from pydantic import ValidationError

from .analysis import run_analysis
from .config import EngineConfig
from .corpus import run_corpus_async, summarize
from .errors import LevelnessError

# Initialize FastMCP server
mcp = FastMCP("levelness")


def _config(options: dict[str, Any] | None) -> EngineConfig:
    return EngineConfig(**(options or {}))


async def _analyze(data: dict[str, Any], options: dict[str, Any] | None) -> dict[str, Any]:
    try:
        report = await asyncio.to_thread(run_analysis, data, _config(options))
        return report.model_dump(by_alias=True, mode="json")
    except (LevelnessError, ValidationError) as e:
        return {"error": str(e)}


@mcp.tool()
async def analyze_ideal(
    variables: list[str],
    generators: list[str],
    weights: list[int] | None = None,
    options: dict[str, Any] | None = None,
) -> dict[str, Any]:
    """
    Analyze the quotient of a polynomial ring by a homogeneous ideal.

    Args:
        variables: Variable names, e.g. ["x", "y", "z"]
        generators: Polynomial strings over the rationals, e.g. ["x*z - y^2"]
        weights: Positive variable degrees (default: all 1)
        options: Engine settings such as kmax, order or max_pairs

    Returns:
        Dictionary containing:
        - bettiTable: Graded Betti numbers as {i, j, rank} records
        - isCm, type, isLevel, isGorenstein, isNearlyGorenstein: Verdicts
        - traceGenerators: Generators of the canonical trace
        - hVector: Reduced Hilbert numerator for standard gradings
    """
    data = {"type": "ideal", "variables": variables, "generators": generators}
    if weights is not None:
        data["weights"] = weights
    return await _analyze(data, options)


@mcp.tool()
async def analyze_semigroup(
    generators: list[list[int]] | None = None,
    exponents: list[int] | None = None,
    options: dict[str, Any] | None = None,
) -> dict[str, Any]:
    """
    Analyze an affine semigroup ring given by generators or curve exponents.

    Args:
        generators: Nonnegative generator vectors of equal length
        exponents: Shorthand for the generators (1, e), used when generators is empty
        options: Engine settings such as hole_degree_bound or max_degree

    Returns:
        Dictionary containing every ideal verdict plus:
        - semigroup: Extremal rays, canonical multidegrees V and V_min, the trace
          set with certificates, structure audits and holes
        - crossEngineAgreement: Whether both nearly Gorenstein criteria agree
    """
    if generators:
        data = {"type": "semigroup", "generators": generators}
    elif exponents:
        data = {"type": "numerical_curve", "exponents": exponents}
    else:
        return {"error": "Give generators or exponents"}
    return await _analyze(data, options)


@mcp.tool()
async def analyze_complex(
    vertices: int,
    facets: list[list[int]],
    options: dict[str, Any] | None = None,
) -> dict[str, Any]:
    """
    Analyze the Stanley-Reisner ring of a simplicial complex.

    Args:
        vertices: Number of vertices, labelled 1..vertices
        facets: Facets as lists of vertex labels
        options: Engine settings such as kmax

    Returns:
        Dictionary containing every ideal verdict plus:
        - complex: Stanley-Reisner ideal, one-dimensional classification,
          vertex links and the locally Gorenstein verdict
    """
    data = {"type": "complex", "vertices": vertices, "facets": facets}
    return await _analyze(data, options)


@mcp.tool()
async def run_corpus(
    filter: str | None = None,
    include_slow: bool = False,
    jobs: int = 1,
) -> dict[str, Any]:
    """
    Run the built-in corpus and compare every expected fact.

    Args:
        filter: Only run items whose id or tag contains this text
        include_slow: Also run the large resolutions
        jobs: Worker processes

    Returns:
        Dictionary containing:
        - summary: Item counts by status
        - results: Per-item status with each fact's expected and actual value
    """
    try:
        results = await run_corpus_async(filter, include_slow, jobs)
        return {
            "summary": summarize(results),
            "results": [r.model_dump(by_alias=True, mode="json") for r in results],
        }
    except (LevelnessError, ValidationError) as e:
        return {"error": str(e)}


def main():
    """Run the MCP server."""
    mcp.run(transport="stdio")


if __name__ == "__main__":
    main()
