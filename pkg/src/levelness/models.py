"""Pydantic models for analysis inputs, reports and corpus records."""

from typing import Annotated, Any, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator
from pydantic.alias_generators import to_camel


class ReportModel(BaseModel):
    """Base for report records; serialized with camelCase keys."""

    model_config = ConfigDict(alias_generator=to_camel, populate_by_name=True)


# ============================================================================
# Input Models
# ============================================================================


class SemigroupInput(BaseModel):
    """Affine semigroup given by generator vectors in N^d."""

    type: Literal["semigroup"] = "semigroup"
    generators: list[list[int]] = Field(min_length=1)

    @model_validator(mode="after")
    def _check_shape(self) -> "SemigroupInput":
        lengths = {len(g) for g in self.generators}
        if len(lengths) != 1 or 0 in lengths:
            raise ValueError("generators must be nonempty vectors of equal length")
        if any(x < 0 for g in self.generators for x in g):
            raise ValueError("generator entries must be nonnegative")
        return self


class NumericalCurveInput(BaseModel):
    """Shorthand [e1, ..., ek] for the generators (1, ei)."""

    type: Literal["numerical_curve"] = "numerical_curve"
    exponents: list[int] = Field(min_length=1)

    @model_validator(mode="after")
    def _check_exponents(self) -> "NumericalCurveInput":
        if any(e < 0 for e in self.exponents):
            raise ValueError("exponents must be nonnegative")
        return self

    def as_semigroup(self) -> SemigroupInput:
        return SemigroupInput(generators=[[1, e] for e in self.exponents])


class IdealInput(BaseModel):
    """Homogeneous ideal given by polynomial strings."""

    type: Literal["ideal"] = "ideal"
    variables: list[str] = Field(min_length=1)
    weights: list[int] | None = None
    grading: list[list[int]] | None = None
    generators: list[str] = Field(default_factory=list)


class ComplexInput(BaseModel):
    """Simplicial complex on vertices 1..n given by its facets."""

    type: Literal["complex"] = "complex"
    vertices: int = Field(ge=1)
    facets: list[list[int]] = Field(min_length=1)


AnalysisInput = Annotated[
    Union[SemigroupInput, NumericalCurveInput, IdealInput, ComplexInput],
    Field(discriminator="type"),
]


# ============================================================================
# Resolution Models
# ============================================================================


class BettiEntry(ReportModel):
    """One graded Betti number beta_{i,j}."""

    i: int
    j: int
    rank: int


class MultiBettiEntry(ReportModel):
    """One multigraded Betti number."""

    i: int
    multidegree: list[int]
    rank: int


class RingInvariants(ReportModel):
    """Invariants read off a minimal resolution."""

    n: int
    dim: int
    pd: int
    codim: int
    is_cm: bool
    type: int | None = None
    is_level: bool | None = None
    is_gorenstein: bool | None = None
    canonical_degrees: list[int] | None = None
    undefined_reason: str | None = None


class HilbertData(ReportModel):
    """Hilbert series numerators; h_vector only for standard gradings."""

    numerator: list[int]
    denominator_weights: list[int]
    h_vector: list[int] | None = None
    dim: int
    multiplicity: int | None = None


class HilbertBurchReport(ReportModel):
    """Audit of the codimension-two three-generator resolution shape."""

    applicable: bool
    shape: list[int] = Field(default_factory=list)
    minors: list[str] = Field(default_factory=list)
    minors_generate: bool | None = None
    entries_monomial: bool | None = None
    passed: bool | None = None
    reason: str | None = None


class HilbertFormReport(ReportModel):
    """Whether the reduced numerator is 1 + r(t + ... + t^s)."""

    uniform: bool
    coefficient: int | None = None
    required: bool = False
    passed: bool = True


# ============================================================================
# Trace Models
# ============================================================================


class PuncturedIndex(ReportModel):
    """Smallest k with m^k inside the trace, or None up to the cutoff."""

    index: int | None
    cutoff: int


class TraceReport(ReportModel):
    """Trace of the canonical module computed from the last resolution map."""

    trace_generators: list[str]
    trace_contains_m: bool
    trace_is_unit: bool
    punctured_index: PuncturedIndex
    type2_applicable: bool
    type2_shortcut: bool | None = None


# ============================================================================
# Semigroup Models
# ============================================================================


class Certificate(ReportModel):
    """A generator written as v + u with v in V_min and u in S - V."""

    generator: list[int]
    v: list[int]
    u: list[int]


class CanonicalDataReport(ReportModel):
    """Canonical generator multidegrees, stored up to a common translation."""

    v: list[list[int]]
    v_min: list[list[int]]
    shift: list[int]


class TraceSetReport(ReportModel):
    """Generators admitting a certificate."""

    mode: Literal["min", "any"]
    members: list[list[int]]
    certificates: list[Certificate]
    failing: list[list[int]]
    nearly_gorenstein: bool


class AuditCheck(ReportModel):
    """One structural check; failing an applicable check is a bug."""

    name: str
    applicable: bool
    passed: bool
    detail: str = ""


class HoleFamily(ReportModel):
    """Holes on one line parallel to an extremal ray."""

    direction: list[int]
    points: list[list[int]]


class HoleReport(ReportModel):
    """Holes of the semigroup found up to a degree bound."""

    degree_bound: int
    holes: list[list[int]]
    families: list[HoleFamily] | None = None
    all_in_maximal_families: bool | None = None


class SeparatingRay(ReportModel):
    """Extremal ray whose direction keeps a point outside the cone."""

    point: list[int]
    ray: list[int]
    facet_functional: list[str]
    value: str
    checked_up_to: int


class SemigroupReport(ReportModel):
    """Semigroup-specific part of an analysis."""

    generators: list[list[int]]
    grading_functional: list[str]
    lattice_rank: int
    extremal_rays: list[list[int]] | None = None
    canonical: CanonicalDataReport | None = None
    v_size: int | None = None
    v_min_size: int | None = None
    trace_set: TraceSetReport | None = None
    nearly_gorenstein_any_mode: bool | None = None
    audits: list[AuditCheck] = Field(default_factory=list)
    holes: HoleReport | None = None
    multiplicity_check: bool | None = None


# ============================================================================
# Simplicial Complex Models
# ============================================================================


class LinkResult(ReportModel):
    """Gorenstein test of the link of one vertex."""

    vertex: int
    link_facets: list[list[int]]
    gorenstein: bool


class SRReport(ReportModel):
    """Stanley-Reisner specific part of an analysis."""

    ideal: list[str]
    dim: int
    connected: bool
    pure: bool
    classification_1d: Literal["path", "cycle", "other", "not-1-dim"]
    predicted_nearly_gorenstein: bool | None = None
    predicted_gorenstein: bool | None = None
    locally_gorenstein: bool | None = None
    links: list[LinkResult] = Field(default_factory=list)
    almost_gorenstein_1d: bool | None = None
    definition_dependent: bool = False


class CanonicalGensReport(ReportModel):
    """Closed-form canonical ideal generators and their verification."""

    kind: Literal["points", "path"]
    n: int
    generators: list[str]
    quotient_dim: int
    quotient_gorenstein: bool
    expected_dim: int
    verified: bool


# ============================================================================
# Analysis Models
# ============================================================================


class AnalysisReport(ReportModel):
    """Full verdict record for one input."""

    input: dict[str, Any]
    field: str = "QQ"
    variables: list[str]
    ideal_generators: list[str]
    n: int
    dim: int
    codim: int
    pd: int
    betti_table: list[BettiEntry]
    multigraded_betti: list[MultiBettiEntry] | None = None
    is_cm: bool
    type: int | None = None
    is_level: bool | None = None
    is_gorenstein: bool | None = None
    is_nearly_gorenstein: bool | None = None
    undefined_reason: str | None = None
    canonical_degrees: list[int] | None = None
    trace: TraceReport | None = None
    trace_generators: list[str] | None = None
    trace_contains_m: bool | None = None
    punctured_index: int | None = None
    h_vector: list[int] | None = None
    hilbert_numerator: list[int]
    hilbert_reduced_numerator: list[int] | None = None
    hilbert_burch: HilbertBurchReport
    hilbert_form: HilbertFormReport | None = None
    semigroup: SemigroupReport | None = None
    complex: SRReport | None = None
    cross_engine_agreement: bool | None = None
    timings: dict[str, float] = Field(default_factory=dict)
    engine_version: str


# ============================================================================
# Corpus Models
# ============================================================================


class Fact(BaseModel):
    """An expected value with the statement it comes from."""

    name: str
    value: Any
    source: str = Field(min_length=1)


class CorpusItem(BaseModel):
    """A built-in input, the statement it checks, and its expected facts."""

    id: str
    reference: str = Field(min_length=1)
    tags: list[str] = Field(default_factory=list)
    note: str = ""
    input: dict[str, Any]
    facts: list[Fact] = Field(min_length=1)
    slow: bool = False
    allow_resource_error: bool = False


class FactResult(ReportModel):
    """Comparison of one expected fact against the computed value."""

    name: str
    expected: Any
    actual: Any
    passed: bool
    source: str


class CorpusResult(ReportModel):
    """Outcome of one corpus item."""

    id: str
    reference: str = ""
    status: Literal["pass", "fail", "resource", "error"]
    facts: list[FactResult] = Field(default_factory=list)
    message: str | None = None
    exit_code: int = 0
    seconds: float = 0.0


class HarnessReport(ReportModel):
    """Counts from a seeded run over random numerical curves."""

    seed: int
    instances: int
    cohen_macaulay: int = 0
    nearly_gorenstein: int = 0
    resource_skipped: int = 0
    violations: list[str] = Field(default_factory=list)
