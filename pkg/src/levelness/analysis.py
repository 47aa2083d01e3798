"""Run every engine on one input and assemble the verdict report."""

import logging
import time
from contextlib import contextmanager
from typing import Any

from pydantic import BaseModel, TypeAdapter, ValidationError

from . import __version__
from .complexes import (
    SimplicialComplex,
    almost_gorenstein_1dim,
    classify_1dim,
    locally_gorenstein,
    sr_ideal,
)
from .config import EngineConfig, resolve_config
from .errors import InconsistencyError, InputError, UnsupportedDimensionError
from .models import (
    AnalysisInput,
    AnalysisReport,
    ComplexInput,
    HilbertData,
    IdealInput,
    NumericalCurveInput,
    RingInvariants,
    SemigroupInput,
    SemigroupReport,
    SRReport,
)
from .polynomials import Ideal, Ring, TermOrder
from .resolution import (
    GradedResolution,
    hilbert,
    hilbert_burch_audit,
    hilbert_cross_check,
    hilbert_form_audit,
    minimal_free_resolution,
    ring_invariants,
    verify_complex,
)
from .semigroup_trace import canonical_V, ng_semigroup, structure_audit, trace_set
from .toric import (
    AffineSemigroup,
    elements_by_degree,
    extremal_rays,
    holes_box,
    toric_ideal,
    validate,
)
from .trace import trace_report

logger = logging.getLogger(__name__)

_INPUT = TypeAdapter(AnalysisInput)


def parse_input(text: str) -> BaseModel:
    """Validate a JSON document against the input schemas."""
    try:
        return _INPUT.validate_json(text)
    except ValidationError as e:
        raise InputError(f"Invalid input: {e}") from e


def coerce_input(data: Any) -> BaseModel:
    if isinstance(data, BaseModel):
        return data
    try:
        return _INPUT.validate_python(data)
    except ValidationError as e:
        raise InputError(f"Invalid input: {e}") from e


class _Timer:
    def __init__(self):
        self.timings: dict[str, float] = {}

    @contextmanager
    def phase(self, name: str):
        logger.info("phase %s", name)
        start = time.perf_counter()
        try:
            yield
        finally:
            self.timings[name] = round(time.perf_counter() - start, 6)


def _build_ideal(
    inp: BaseModel, config: EngineConfig
) -> tuple[Ideal, AffineSemigroup | None, SimplicialComplex | None]:
    if isinstance(inp, NumericalCurveInput):
        inp = inp.as_semigroup()
    if isinstance(inp, SemigroupInput):
        semigroup = validate(inp.generators)
        return toric_ideal(semigroup, config=config), semigroup, None
    if isinstance(inp, IdealInput):
        grading = tuple(tuple(row) for row in inp.grading) if inp.grading else None
        ring = Ring(
            tuple(inp.variables),
            tuple(inp.weights or ()),
            TermOrder(config.order),
            grading,
        )
        return Ideal.parse(ring, inp.generators), None, None
    if isinstance(inp, ComplexInput):
        complex_ = SimplicialComplex.from_facets(inp.vertices, inp.facets)
        return sr_ideal(complex_, config.order), None, complex_
    raise InputError(f"Unsupported input type {type(inp).__name__}")


def multiplicity_check(semigroup: AffineSemigroup, h_vector: list[int]) -> bool:
    """Growth of the degree slices of a two-dimensional semigroup equals h(1)."""
    k = len(h_vector)
    levels = elements_by_degree(semigroup, k + 1)
    return len(levels[k + 1]) - len(levels[k]) == sum(h_vector)


def _semigroup_report(
    semigroup: AffineSemigroup,
    res: GradedResolution,
    invariants: RingInvariants,
    hdata: HilbertData,
    nearly_gorenstein: bool | None,
    config: EngineConfig,
) -> SemigroupReport:
    try:
        rays = [list(r) for r in extremal_rays(semigroup)]
    except UnsupportedDimensionError as e:
        logger.warning("no extremal rays: %s", e)
        rays = None
    report = SemigroupReport(
        generators=[list(g) for g in semigroup.generators],
        grading_functional=semigroup.functional_strings(),
        lattice_rank=semigroup.rank,
        extremal_rays=rays,
    )
    if invariants.is_cm:
        cd = canonical_V(semigroup, res, invariants, hdata.h_vector)
        traces = trace_set(semigroup, cd)
        any_mode = ng_semigroup(semigroup, cd, mode="any")
        if any_mode.nearly_gorenstein != traces.nearly_gorenstein:
            raise InconsistencyError("The two semigroup criteria disagree")
        audits = structure_audit(semigroup, cd, traces, invariants, hdata.h_vector)
        failed = [a.name for a in audits if not a.passed]
        if failed:
            raise InconsistencyError(f"Structure audits failed: {failed}")
        if nearly_gorenstein is not None and traces.nearly_gorenstein != nearly_gorenstein:
            raise InconsistencyError(
                f"Semigroup criterion says {traces.nearly_gorenstein}, trace ideal says "
                f"{nearly_gorenstein}"
            )
        report.canonical = cd.report()
        report.v_size = len(cd.v)
        report.v_min_size = len(cd.v_min)
        report.trace_set = traces
        report.nearly_gorenstein_any_mode = any_mode.nearly_gorenstein
        report.audits = audits
    if rays is not None:
        report.holes = holes_box(semigroup, config.hole_degree_bound)
    if semigroup.d == 2 and semigroup.rank == 2 and hdata.h_vector is not None:
        report.multiplicity_check = multiplicity_check(semigroup, hdata.h_vector)
        if not report.multiplicity_check:
            raise InconsistencyError("h(1) differs from the growth of the degree slices")
    return report


def _complex_report(
    complex_: SimplicialComplex,
    ideal: Ideal,
    invariants: RingInvariants,
    nearly_gorenstein: bool | None,
    config: EngineConfig,
) -> SRReport:
    classification, predicted_ng, predicted_gor = classify_1dim(complex_)
    if predicted_ng is not None and nearly_gorenstein is not None:
        if predicted_ng != nearly_gorenstein:
            raise InconsistencyError(
                f"{classification} predicts nearly Gorenstein = {predicted_ng}, "
                f"the trace ideal says {nearly_gorenstein}"
            )
        if predicted_gor != invariants.is_gorenstein:
            raise InconsistencyError(
                f"{classification} predicts Gorenstein = {predicted_gor}"
            )
    local, links = locally_gorenstein(complex_, config)
    almost = almost_gorenstein_1dim(complex_)
    return SRReport(
        ideal=ideal.formatted(),
        dim=complex_.dim,
        connected=complex_.is_connected(),
        pure=complex_.is_pure,
        classification_1d=classification,
        predicted_nearly_gorenstein=predicted_ng,
        predicted_gorenstein=predicted_gor,
        locally_gorenstein=local,
        links=links,
        almost_gorenstein_1d=almost,
        definition_dependent=almost is not None,
    )


def _undefined_reason(
    invariants: RingInvariants, nearly_gorenstein: bool | None
) -> str | None:
    if invariants.undefined_reason or nearly_gorenstein is not None:
        return invariants.undefined_reason
    return "trace not computed: the ideal is not inside the square of the maximal ideal"


def run_analysis(data: Any, config: EngineConfig | None = None) -> AnalysisReport:
    """Full report for a semigroup, numerical curve, ideal or complex input."""
    config = resolve_config(config)
    inp = coerce_input(data)
    timer = _Timer()

    with timer.phase("input"):
        ideal, semigroup, complex_ = _build_ideal(inp, config)
    ring = ideal.ring

    with timer.phase("resolution"):
        res = minimal_free_resolution(ideal, config)
        verify_complex(res, config)

    known_dim = None
    if semigroup is not None:
        known_dim = semigroup.rank
    elif complex_ is not None:
        known_dim = complex_.dim + 1

    with timer.phase("invariants"):
        invariants = ring_invariants(res, known_dim, config)
        hdata = hilbert(res, invariants.dim)
        hilbert_cross_check(res, config.hilbert_check_degree, config)
        burch = hilbert_burch_audit(res, invariants, config)

    trace = None
    nearly_gorenstein = None
    if invariants.is_cm and ideal.in_square_of_maximal_ideal():
        with timer.phase("trace"):
            _, trace = trace_report(ideal, res, invariants, config)
        nearly_gorenstein = trace.trace_contains_m
        if trace.trace_is_unit != bool(invariants.is_gorenstein):
            raise InconsistencyError("Trace is the unit ideal exactly for Gorenstein rings")
        if trace.type2_shortcut is not None and trace.type2_shortcut != nearly_gorenstein:
            raise InconsistencyError("Type-two shortcut disagrees with the trace ideal")

    form = None
    if invariants.is_cm and hdata.h_vector is not None:
        required = (
            semigroup is not None
            and bool(nearly_gorenstein)
            and invariants.pd == 2
            and invariants.type == 2
        )
        form = hilbert_form_audit(hdata.h_vector, invariants.type, required)

    semigroup_report = None
    if semigroup is not None:
        with timer.phase("semigroup"):
            semigroup_report = _semigroup_report(
                semigroup, res, invariants, hdata, nearly_gorenstein, config
            )

    complex_report = None
    if complex_ is not None:
        with timer.phase("complex"):
            complex_report = _complex_report(
                complex_, ideal, invariants, nearly_gorenstein, config
            )

    agreement = None
    if semigroup_report is not None and semigroup_report.trace_set is not None:
        agreement = nearly_gorenstein is not None

    betti = res.betti()
    return AnalysisReport(
        input=inp.model_dump(),
        variables=list(ring.names),
        ideal_generators=ideal.formatted(),
        n=invariants.n,
        dim=invariants.dim,
        codim=invariants.codim,
        pd=invariants.pd,
        betti_table=betti.records(),
        multigraded_betti=betti.multigraded_records(),
        is_cm=invariants.is_cm,
        type=invariants.type,
        is_level=invariants.is_level,
        is_gorenstein=invariants.is_gorenstein,
        is_nearly_gorenstein=nearly_gorenstein,
        undefined_reason=_undefined_reason(invariants, nearly_gorenstein),
        canonical_degrees=invariants.canonical_degrees,
        trace=trace,
        trace_generators=trace.trace_generators if trace else None,
        trace_contains_m=trace.trace_contains_m if trace else None,
        punctured_index=trace.punctured_index.index if trace else None,
        h_vector=hdata.h_vector,
        hilbert_numerator=hdata.numerator,
        hilbert_reduced_numerator=hdata.h_vector,
        hilbert_burch=burch,
        hilbert_form=form,
        semigroup=semigroup_report,
        complex=complex_report,
        cross_engine_agreement=agreement,
        timings=timer.timings,
        engine_version=__version__,
    )
