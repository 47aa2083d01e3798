"""Combinatorial nearly-Gorenstein test for semigroup rings.

The canonical module's generator multidegrees V are read off the last module of
a multigraded minimal resolution. They are known only up to a common
translation, and every predicate here is invariant under translating V.
"""

import logging
from dataclasses import dataclass
from typing import Literal, Sequence

from .errors import (
    InconsistencyError,
    InputError,
    NotCohenMacaulayError,
    UnsupportedDimensionError,
)
from .models import (
    AuditCheck,
    CanonicalDataReport,
    Certificate,
    RingInvariants,
    TraceSetReport,
)
from .resolution import GradedResolution
from .toric import AffineSemigroup, Point, extremal_rays, membership

logger = logging.getLogger(__name__)

Mode = Literal["min", "any"]


@dataclass(frozen=True)
class CanonicalData:
    """V, its minimal-degree part, and the translation used to normalize it."""

    v: tuple[Point, ...]
    v_min: tuple[Point, ...]
    shift: Point

    def report(self) -> CanonicalDataReport:
        return CanonicalDataReport(
            v=[list(p) for p in self.v],
            v_min=[list(p) for p in self.v_min],
            shift=list(self.shift),
        )


def _add(a: Sequence[int], b: Sequence[int]) -> Point:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Sequence[int], b: Sequence[int]) -> Point:
    return tuple(x - y for x, y in zip(a, b))


def canonical_V(
    semigroup: AffineSemigroup,
    res: GradedResolution,
    invariants: RingInvariants,
    h_vector: Sequence[int] | None = None,
) -> CanonicalData:
    """Negated last-module multidegrees, translated to minimal degree 0."""
    if not invariants.is_cm:
        raise NotCohenMacaulayError("Canonical data needs a Cohen-Macaulay ring")
    last = res.modules[-1]
    if last.multishifts is None:
        raise InputError("Canonical data needs a multigraded resolution")
    top = max(last.multishifts, key=semigroup.degree)
    v = tuple(_sub(top, b) for b in last.multishifts)
    for p in v:
        if not semigroup.in_lattice(p):
            raise InconsistencyError(f"Canonical multidegree {list(p)} is not in ZS")
    v_min = tuple(p for p in v if semigroup.degree(p) == 0)
    if h_vector is not None and len(v_min) != h_vector[-1]:
        raise InconsistencyError(
            f"|V_min| = {len(v_min)} but the top h-vector entry is {h_vector[-1]}"
        )
    logger.debug("|V| = %d, |V_min| = %d", len(v), len(v_min))
    return CanonicalData(v, v_min, top)


def translate(cd: CanonicalData, c: Sequence[int]) -> CanonicalData:
    """V + c with the matching shift; every test below gives the same answers."""
    return CanonicalData(
        tuple(_add(p, c) for p in cd.v),
        tuple(_add(p, c) for p in cd.v_min),
        _sub(cd.shift, c),
    )


class _Members:
    """Memoized membership for one semigroup."""

    def __init__(self, semigroup: AffineSemigroup):
        self.semigroup = semigroup
        self._seen: dict[Point, bool] = {}

    def __contains__(self, p: Point) -> bool:
        if p not in self._seen:
            self._seen[p] = membership(p, self.semigroup)[0]
        return self._seen[p]


def s_minus_v_test(
    u: Sequence[int],
    cd: CanonicalData,
    semigroup: AffineSemigroup,
    members: _Members | None = None,
) -> bool:
    """True iff u + v lies in S for every v in V."""
    u = tuple(int(x) for x in u)
    if not semigroup.in_lattice(u):
        raise InputError(f"{list(u)} is not in the group of the semigroup")
    if semigroup.degree(u) + min(semigroup.degree(v) for v in cd.v) < 0:
        return False
    members = members or _Members(semigroup)
    return all(_add(u, v) in members for v in cd.v)


def _scan(
    semigroup: AffineSemigroup,
    cd: CanonicalData,
    mode: Mode,
    stop_at_failure: bool,
) -> TraceSetReport:
    candidates = cd.v_min if mode == "min" else cd.v
    members = _Members(semigroup)
    certificates: list[Certificate] = []
    failing: list[list[int]] = []
    for a in semigroup.generators:
        for v in candidates:
            u = _sub(a, v)
            if s_minus_v_test(u, cd, semigroup, members):
                certificates.append(
                    Certificate(generator=list(a), v=list(v), u=list(u))
                )
                break
        else:
            failing.append(list(a))
            if stop_at_failure:
                break
    return TraceSetReport(
        mode=mode,
        members=[c.generator for c in certificates],
        certificates=certificates,
        failing=failing,
        nearly_gorenstein=not failing,
    )


def ng_semigroup(
    semigroup: AffineSemigroup, cd: CanonicalData, mode: Mode = "min"
) -> TraceSetReport:
    """Nearly Gorenstein iff every generator is v + u with u in S - V.

    ``mode="min"`` draws v from V_min, ``mode="any"`` from all of V; the scan
    stops at the first generator without a certificate.
    """
    return _scan(semigroup, cd, mode, stop_at_failure=True)


def trace_set(semigroup: AffineSemigroup, cd: CanonicalData) -> TraceSetReport:
    """Generators admitting a certificate, drawing v from V_min."""
    full = _scan(semigroup, cd, "min", stop_at_failure=False)
    verdict = ng_semigroup(semigroup, cd).nearly_gorenstein
    if verdict != (len(full.members) == len(semigroup.generators)):
        raise InconsistencyError("Trace set disagrees with the nearly-Gorenstein scan")
    return full


def structure_audit(
    semigroup: AffineSemigroup,
    cd: CanonicalData,
    traces: TraceSetReport,
    invariants: RingInvariants,
    h_vector: Sequence[int] | None,
) -> list[AuditCheck]:
    """Consequences of nearly Gorensteinness that must hold on every CM input."""
    ng = traces.nearly_gorenstein
    checks = []

    try:
        rays = extremal_rays(semigroup)
        applicable = len(cd.v_min) == 1 and len(cd.v) >= 2
        outside = [r for r in rays if list(r) not in traces.members]
        checks.append(
            AuditCheck(
                name="single-minimal-canonical-degree-misses-a-ray",
                applicable=applicable,
                passed=not applicable or bool(outside),
                detail=f"extremal generators outside the trace: {[list(r) for r in outside]}",
            )
        )
    except UnsupportedDimensionError as e:
        checks.append(
            AuditCheck(
                name="single-minimal-canonical-degree-misses-a-ray",
                applicable=False,
                passed=True,
                detail=str(e),
            )
        )

    h_top = h_vector[-1] if h_vector else None
    applicable = ng and not invariants.is_gorenstein and h_top is not None
    checks.append(
        AuditCheck(
            name="nearly-gorenstein-top-h-at-least-two",
            applicable=applicable,
            passed=not applicable or h_top >= 2,
            detail=f"h_s = {h_top}",
        )
    )

    applicable = ng and invariants.type == 2
    checks.append(
        AuditCheck(
            name="nearly-gorenstein-type-two-is-level",
            applicable=applicable,
            passed=not applicable or bool(invariants.is_level),
            detail=f"canonical degrees {invariants.canonical_degrees}",
        )
    )

    applicable = h_top is not None
    checks.append(
        AuditCheck(
            name="top-h-equals-minimal-canonical-count",
            applicable=applicable,
            passed=not applicable or h_top == len(cd.v_min),
            detail=f"h_s = {h_top}, |V_min| = {len(cd.v_min)}",
        )
    )
    for check in checks:
        if not check.passed:
            logger.error("audit %s failed: %s", check.name, check.detail)
    return checks
