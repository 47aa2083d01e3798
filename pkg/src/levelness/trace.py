"""Trace of the canonical module from the last map of a minimal resolution.

For a Cohen-Macaulay quotient R = S/J with minimal resolution ending in
phi_p: F_p -> F_{p-1}, the trace of the canonical module is generated by the
entries of the vectors spanning the kernel of phi_p tensored with R.
"""

import logging
from dataclasses import dataclass
from itertools import combinations_with_replacement

from sympy.polys.rings import PolyElement

from .config import EngineConfig, resolve_config
from .errors import InputError, NotCohenMacaulayError
from .groebner import GroebnerBasis, buchberger, kernel_mod_ideal
from .models import PuncturedIndex, RingInvariants, TraceReport
from .polynomials import Ideal, Ring
from .resolution import GradedResolution

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TraceIdeal:
    """Generators of the trace (kernel entries plus J) and their reduced GB."""

    ring: Ring
    generators: tuple[PolyElement, ...]
    gb: GroebnerBasis

    def contains(self, f: PolyElement) -> bool:
        return self.gb.contains(f)

    @property
    def is_unit(self) -> bool:
        return self.gb.is_unit_ideal()

    def formatted(self) -> list[str]:
        return [self.ring.format(g) for g in self.generators]


def trace_canonical(
    ideal: Ideal,
    res: GradedResolution,
    invariants: RingInvariants,
    config: EngineConfig | None = None,
) -> TraceIdeal:
    """Trace ideal of the canonical module of S/J."""
    config = resolve_config(config)
    ring = ideal.ring
    if not invariants.is_cm:
        raise NotCohenMacaulayError("The trace is only computed for Cohen-Macaulay rings")
    if not ideal.in_square_of_maximal_ideal():
        raise InputError("The ideal must lie in the square of the maximal ideal")
    if res.length == 0:
        return TraceIdeal(ring, (ring.one,), buchberger([ring.one], ring, config))

    kernel = kernel_mod_ideal(res.maps[-1], ideal.generators, config)
    entries: list[PolyElement] = []
    for vec in kernel:
        for f in vec.components:
            if f and f not in entries:
                entries.append(f)
    logger.debug("trace from %d kernel vectors, %d entries", len(kernel), len(entries))
    generators = tuple(entries) + tuple(
        g for g in ideal.generators if g not in entries
    )
    return TraceIdeal(ring, generators, buchberger(generators, ring, config))


def is_nearly_gorenstein(trace: TraceIdeal) -> bool:
    """The trace contains every variable."""
    return all(trace.contains(x) for x in trace.ring.gens)


def type2_applicable(invariants: RingInvariants) -> bool:
    return bool(invariants.is_cm) and invariants.type == 2 and invariants.dim > 0


def type2_shortcut(
    ideal: Ideal,
    res: GradedResolution,
    invariants: RingInvariants,
    config: EngineConfig | None = None,
) -> bool | None:
    """For type two and positive dimension: the entries of phi_p together with
    J contain every variable. None when the preconditions fail."""
    if not type2_applicable(invariants):
        return None
    ring = ideal.ring
    entries = [
        f for col in res.maps[-1] for f in col.components if f
    ] + list(ideal.generators)
    gb = buchberger(entries, ring, config)
    return all(gb.contains(x) for x in ring.gens)


def punctured_index(trace: TraceIdeal, kmax: int) -> PuncturedIndex:
    """Smallest k <= kmax with every monomial of degree k in the trace.

    None means no such k up to the cutoff, which proves nothing about larger k.
    """
    if kmax < 1:
        raise InputError("kmax must be at least 1")
    if trace.is_unit:
        return PuncturedIndex(index=0, cutoff=kmax)
    ring = trace.ring
    for k in range(1, kmax + 1):
        if all(
            trace.contains(_product(ring, combo))
            for combo in combinations_with_replacement(range(ring.ngens), k)
        ):
            return PuncturedIndex(index=k, cutoff=kmax)
    return PuncturedIndex(index=None, cutoff=kmax)


def _product(ring: Ring, combo) -> PolyElement:
    m = [0] * ring.ngens
    for v in combo:
        m[v] += 1
    return ring.monomial(tuple(m))


def trace_report(
    ideal: Ideal,
    res: GradedResolution,
    invariants: RingInvariants,
    config: EngineConfig | None = None,
) -> tuple[TraceIdeal, TraceReport]:
    """Trace ideal plus the verdicts reported for it."""
    config = resolve_config(config)
    trace = trace_canonical(ideal, res, invariants, config)
    shortcut = type2_shortcut(ideal, res, invariants, config)
    report = TraceReport(
        trace_generators=trace.formatted(),
        trace_contains_m=is_nearly_gorenstein(trace),
        trace_is_unit=trace.is_unit,
        punctured_index=punctured_index(trace, config.kmax),
        type2_applicable=shortcut is not None,
        type2_shortcut=shortcut,
    )
    return trace, report
