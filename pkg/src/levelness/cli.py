"""Command line: analyze one input, run the built-in corpus or the random harness,
or serve the analyses over MCP."""

import json
import logging
import sys
from pathlib import Path
from typing import Optional

import typer
from pydantic import ValidationError

from .analysis import parse_input, run_analysis
from .config import EngineConfig
from .corpus import corpus_exit_code, dump_results, run_corpus
from .errors import InputError, LevelnessError
from .harness import run_harness
from .models import AnalysisReport, NumericalCurveInput

logger = logging.getLogger(__name__)

app = typer.Typer(
    help="Levelness, Gorenstein and nearly Gorenstein verdicts in exact arithmetic.",
    no_args_is_help=True,
)

_LEVELS = [logging.WARNING, logging.INFO, logging.DEBUG]


def _configure_logging(verbose: int) -> None:
    logging.basicConfig(
        level=_LEVELS[min(verbose, len(_LEVELS) - 1)],
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


def _config(**overrides) -> EngineConfig:
    try:
        return EngineConfig(**{k: v for k, v in overrides.items() if v is not None})
    except ValidationError as e:
        raise InputError(f"Invalid option: {e}") from e


def _fail(e: LevelnessError) -> typer.Exit:
    typer.echo(f"error: {e}", err=True)
    return typer.Exit(code=e.exit_code)


def _read_input(
    input: Optional[str], inline: Optional[str], numerical_curve: Optional[str]
):
    given = [x for x in (input, inline, numerical_curve) if x is not None]
    if len(given) != 1:
        raise InputError("Give exactly one of --input, --inline or --numerical-curve")
    if numerical_curve is not None:
        try:
            exponents = [int(x) for x in numerical_curve.split(",") if x.strip()]
        except ValueError as e:
            raise InputError(f"Exponents must be integers: {e}") from e
        try:
            return NumericalCurveInput(exponents=exponents)
        except ValidationError as e:
            raise InputError(f"Invalid input: {e}") from e
    if inline is not None:
        return parse_input(inline)
    if input == "-":
        return parse_input(sys.stdin.read())
    try:
        text = Path(input).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"Cannot read {input}: {e}") from e
    return parse_input(text)


def format_text(report: AnalysisReport) -> str:
    """Plain-text summary of a report."""

    def verdict(value) -> str:
        if value is None:
            return report.undefined_reason or "undefined"
        return str(value).lower()

    lines = [
        f"variables: {', '.join(report.variables)}",
        f"ideal: {', '.join(report.ideal_generators) or '0'}",
        f"dim {report.dim}, codim {report.codim}, pd {report.pd}",
        "betti: "
        + "; ".join(f"b{e.i},{e.j}={e.rank}" for e in report.betti_table),
        f"cohen-macaulay: {str(report.is_cm).lower()}",
        f"type: {report.type if report.type is not None else verdict(None)}",
        f"level: {verdict(report.is_level)}",
        f"gorenstein: {verdict(report.is_gorenstein)}",
        f"nearly gorenstein: {verdict(report.is_nearly_gorenstein)}",
    ]
    if report.punctured_index is not None:
        lines.append(f"punctured index: {report.punctured_index}")
    if report.h_vector is not None:
        lines.append(f"h-vector: {report.h_vector}")
    else:
        lines.append(f"hilbert numerator: {report.hilbert_numerator}")
    if report.semigroup is not None and report.semigroup.v_size is not None:
        lines.append(
            f"|V| = {report.semigroup.v_size}, |V_min| = {report.semigroup.v_min_size}"
        )
    if report.complex is not None:
        lines.append(f"1-dim class: {report.complex.classification_1d}")
        lines.append(f"locally gorenstein: {verdict(report.complex.locally_gorenstein)}")
    if report.cross_engine_agreement is not None:
        lines.append(f"engines agree: {str(report.cross_engine_agreement).lower()}")
    return "\n".join(lines)


@app.command()
def analyze(
    input: Optional[str] = typer.Option(
        None, "--input", "-i", help="JSON input file, or - for stdin."
    ),
    inline: Optional[str] = typer.Option(None, "--inline", help="JSON input text."),
    numerical_curve: Optional[str] = typer.Option(
        None, "--numerical-curve", help="Comma-separated exponents, e.g. 0,1,3,4."
    ),
    order: str = typer.Option("degrevlex", "--order", help="degrevlex or lex."),
    degree_bound: Optional[int] = typer.Option(
        None, "--degree-bound", help="Hole search degree bound."
    ),
    kmax: int = typer.Option(6, "--kmax", help="Largest power tried for the punctured index."),
    json_output: bool = typer.Option(False, "--json", help="Print the JSON report."),
    verbose: int = typer.Option(0, "--verbose", "-v", count=True),
):
    """Analyze one semigroup, numerical curve, ideal or complex."""
    _configure_logging(verbose)
    try:
        config = _config(order=order, hole_degree_bound=degree_bound, kmax=kmax)
        report = run_analysis(_read_input(input, inline, numerical_curve), config)
    except LevelnessError as e:
        raise _fail(e)
    if json_output:
        typer.echo(report.model_dump_json(by_alias=True, indent=2))
    else:
        typer.echo(format_text(report))


@app.command()
def corpus(
    filter: Optional[str] = typer.Option(
        None, "--filter", help="Run items whose id or tag contains this text."
    ),
    include_slow: bool = typer.Option(False, "--include-slow"),
    jobs: int = typer.Option(1, "--jobs", "-j", help="Worker processes."),
    json_output: bool = typer.Option(False, "--json"),
    verbose: int = typer.Option(0, "--verbose", "-v", count=True),
):
    """Run the built-in corpus and compare every expected fact."""
    _configure_logging(verbose)
    try:
        config = _config(jobs=jobs)
        results = run_corpus(filter, include_slow, jobs, config)
    except LevelnessError as e:
        raise _fail(e)
    if json_output:
        typer.echo(dump_results(results))
    else:
        for r in results:
            typer.echo(f"{r.status:<8} {r.id:<32} {r.seconds:8.2f}s  {r.reference}")
            for fact in r.facts:
                if not fact.passed:
                    typer.echo(
                        f"         {fact.name}: expected {json.dumps(fact.expected)}, "
                        f"got {json.dumps(fact.actual)} ({fact.source})"
                    )
            if r.status in ("error", "resource") and r.message:
                typer.echo(f"         {r.message}")
        typer.echo(f"{len(results)} item(s)")
    code = corpus_exit_code(results)
    if code:
        raise typer.Exit(code=code)


@app.command()
def harness(
    seed: int = typer.Option(0, "--seed"),
    instances: int = typer.Option(200, "--instances"),
    json_output: bool = typer.Option(False, "--json"),
    verbose: int = typer.Option(0, "--verbose", "-v", count=True),
):
    """Random numerical curves checked against every cross-engine property."""
    _configure_logging(verbose)
    try:
        config = _config(seed=seed, harness_instances=instances)
        report = run_harness(seed, instances, config)
    except LevelnessError as e:
        raise _fail(e)
    if json_output:
        typer.echo(report.model_dump_json(by_alias=True, indent=2))
    else:
        typer.echo(
            f"seed {report.seed}: {report.instances} instances, "
            f"{report.cohen_macaulay} Cohen-Macaulay, "
            f"{report.nearly_gorenstein} nearly Gorenstein, "
            f"{report.resource_skipped} skipped"
        )
        for v in report.violations:
            typer.echo(f"violation: {v}")
    if report.violations:
        raise typer.Exit(code=3)


@app.command()
def serve():
    """Run the MCP server over stdio."""
    from .server import main as serve_main

    serve_main()


def main():
    app()


if __name__ == "__main__":
    main()
