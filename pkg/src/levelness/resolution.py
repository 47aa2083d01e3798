"""Minimal graded free resolutions and the ring invariants read off them."""

import logging
from collections import Counter
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import Sequence

from sympy import Poly, Symbol
from sympy.polys.domains import QQ, ZZ
from sympy.polys.rings import PolyElement

from .config import EngineConfig, resolve_config
from .errors import InconsistencyError, InputError
from .groebner import (
    FreeModule,
    GroebnerBasis,
    ModuleElement,
    apply_columns,
    buchberger,
    ideal_elements,
    minimal_generators,
    syzygies,
)
from .models import (
    BettiEntry,
    HilbertBurchReport,
    HilbertData,
    HilbertFormReport,
    MultiBettiEntry,
    RingInvariants,
)
from .polynomials import Ideal, Ring, monomial_divides

logger = logging.getLogger(__name__)

_T = Symbol("t")

NOT_CM = "undefined (not CM)"


# ============================================================================
# Resolutions
# ============================================================================


@dataclass(frozen=True)
class BettiTable:
    """Graded Betti numbers, with the multigraded refinement when available."""

    entries: dict[tuple[int, int], int]
    multigraded: dict[tuple[int, tuple[int, ...]], int] | None = None

    def column(self, i: int) -> dict[int, int]:
        return {j: r for (k, j), r in sorted(self.entries.items()) if k == i}

    def total_rank(self, i: int) -> int:
        return sum(self.column(i).values())

    def records(self) -> list[BettiEntry]:
        return [
            BettiEntry(i=i, j=j, rank=r) for (i, j), r in sorted(self.entries.items())
        ]

    def multigraded_records(self) -> list[MultiBettiEntry] | None:
        if self.multigraded is None:
            return None
        return [
            MultiBettiEntry(i=i, multidegree=list(md), rank=r)
            for (i, md), r in sorted(self.multigraded.items())
        ]


@dataclass(frozen=True)
class GradedResolution:
    """F_0 <- F_1 <- ... <- F_p; ``maps[i]`` holds the columns of phi_{i+1}."""

    ideal: Ideal
    modules: tuple[FreeModule, ...]
    maps: tuple[tuple[ModuleElement, ...], ...]

    @property
    def length(self) -> int:
        return len(self.maps)

    @property
    def ring(self) -> Ring:
        return self.ideal.ring

    def matrix(self, i: int) -> list[list[PolyElement]]:
        """phi_i as rows x columns of polynomials (1-based i)."""
        target = self.modules[i - 1]
        columns = [c.components for c in self.maps[i - 1]]
        return [[col[r] for col in columns] for r in range(target.rank)]

    def betti(self) -> BettiTable:
        entries: Counter = Counter()
        multi: Counter | None = Counter()
        for i, module in enumerate(self.modules):
            for s in module.shifts:
                entries[(i, s)] += 1
            if module.multishifts is None:
                multi = None
            elif multi is not None:
                for md in module.multishifts:
                    multi[(i, md)] += 1
        return BettiTable(dict(entries), dict(multi) if multi is not None else None)


def _base_module(ideal: Ideal) -> FreeModule:
    ring = ideal.ring
    multishift = None
    if ideal.is_multigraded:
        multishift = ((0,) * len(ring.grading),)
    return FreeModule(ring, (0,), multishift)


def _retarget(elements: Sequence[ModuleElement], module: FreeModule) -> list[ModuleElement]:
    return [ModuleElement(module, e.vector) for e in elements]


def minimal_free_resolution(
    ideal: Ideal, config: EngineConfig | None = None
) -> GradedResolution:
    """Minimal graded free resolution of S/J by iterated minimal syzygies."""
    config = resolve_config(config)
    ring = ideal.ring
    if not ideal.is_homogeneous:
        bad = next(g for g in ideal.generators if not ring.is_homogeneous(g))
        raise InputError(f"Generator {ring.format(bad)} is not homogeneous")
    if any(g.is_ground for g in ideal.generators):
        raise InputError("The unit ideal has no quotient ring to resolve")
    if ring.grading is not None and not ideal.is_multigraded:
        logger.warning("ideal is not homogeneous for the multigrading; dropping it")

    base = _base_module(ideal)
    gens = minimal_generators(_retarget(ideal_elements(ideal.generators, ring), base), base, config)
    modules = [base]
    maps: list[tuple[ModuleElement, ...]] = []
    columns = gens
    while columns:
        if len(maps) > ring.ngens:
            raise InconsistencyError("Resolution longer than the number of variables")
        source = FreeModule(
            ring,
            tuple(c.degree for c in columns),
            _multishifts(columns),
        )
        maps.append(tuple(columns))
        modules.append(source)
        logger.debug("F_%d has rank %d", len(maps), source.rank)
        syz = _retarget(syzygies(columns, config), source)
        columns = minimal_generators(syz, source, config)
    res = GradedResolution(ideal, tuple(modules), tuple(maps))
    return prune(res)


def _multishifts(columns: Sequence[ModuleElement]):
    mds = [c.multidegree for c in columns]
    if any(md is None for md in mds):
        return None
    return tuple(mds)


# ============================================================================
# Pruning and verification
# ============================================================================


def _is_unit(f: PolyElement) -> bool:
    return bool(f) and f.is_ground


def prune(res: GradedResolution) -> GradedResolution:
    """Split off unit entries until the complex is minimal.

    Entries are scanned map by map (phi_2 first), column by column, row by row;
    phi_1 is left alone since a unit there means J is the unit ideal.
    """
    ring = res.ring
    mats = [res.matrix(i) for i in range(1, res.length + 1)]
    shifts = [list(m.shifts) for m in res.modules]
    multis = [
        list(m.multishifts) if m.multishifts is not None else None for m in res.modules
    ]
    changed = False
    while True:
        hit = None
        for k in range(1, len(mats)):
            a = mats[k]
            for c in range(len(a[0]) if a else 0):
                for r in range(len(a)):
                    if _is_unit(a[r][c]):
                        hit = (k, r, c)
                        break
                if hit:
                    break
            if hit:
                break
        if hit is None:
            break
        changed = True
        k, r, c = hit
        a = mats[k]
        inv = QQ.one / a[r][c].LC
        rows = [x for x in range(len(a)) if x != r]
        cols = [y for y in range(len(a[0])) if y != c]
        mats[k] = [
            [a[x][y] - a[x][c] * a[r][y] * inv for y in cols]
            for x in rows
        ]
        if k + 1 < len(mats):
            mats[k + 1] = [row for x, row in enumerate(mats[k + 1]) if x != c]
        mats[k - 1] = [[v for y, v in enumerate(row) if y != r] for row in mats[k - 1]]
        del shifts[k + 1][c]
        del shifts[k][r]
        if multis[k + 1] is not None:
            del multis[k + 1][c]
        if multis[k] is not None:
            del multis[k][r]
    if not changed:
        return res
    while shifts and len(shifts) > 1 and not shifts[-1]:
        shifts.pop()
        multis.pop()
        mats.pop()
    modules = tuple(
        FreeModule(ring, tuple(s), tuple(m) if m is not None else None)
        for s, m in zip(shifts, multis)
    )
    maps = []
    for k, a in enumerate(mats):
        target = modules[k]
        ncols = len(a[0]) if a else 0
        maps.append(
            tuple(
                ModuleElement.from_components(target, [a[x][y] for x in range(len(a))])
                for y in range(ncols)
            )
        )
    logger.info("pruned resolution to ranks %s", [m.rank for m in modules])
    return GradedResolution(res.ideal, modules, tuple(maps))


def is_minimal(res: GradedResolution) -> bool:
    """No nonzero constant entry in any map."""
    return not any(
        _is_unit(f) for col in (c for cols in res.maps for c in cols) for f in col.components
    )


def verify_complex(res: GradedResolution, config: EngineConfig | None = None) -> None:
    """Raise InconsistencyError unless consecutive maps compose to zero and
    phi_1 generates the ideal."""
    for k in range(1, res.length):
        for col in res.maps[k]:
            if apply_columns(res.maps[k - 1], col.vector):
                raise InconsistencyError(f"phi_{k} * phi_{k + 1} is not zero")
    if res.length:
        image = [c.components[0] for c in res.maps[0]]
        ring = res.ring
        if buchberger(image, ring, config).generators != buchberger(
            res.ideal.generators, ring, config
        ).generators:
            raise InconsistencyError("phi_1 does not generate the ideal")


# ============================================================================
# Invariants
# ============================================================================


def krull_dimension(gb: GroebnerBasis) -> int:
    """Dimension of S/J: the largest set of variables containing no leading
    monomial's support."""
    n = gb.ring.ngens
    if gb.is_unit_ideal():
        return -1
    supports = [
        sum(1 << i for i, e in enumerate(m) if e) for m in gb.leading_monomials
    ]
    for size in range(n, -1, -1):
        for chosen in combinations(range(n), size):
            mask = sum(1 << i for i in chosen)
            if all(s & ~mask for s in supports):
                return size
    return 0


def ring_invariants(
    res: GradedResolution, dim: int | None = None, config: EngineConfig | None = None
) -> RingInvariants:
    """pd, CM-ness, type and levelness; `dim` comes from a caller's cheaper route
    when given and is then checked against the initial-ideal route."""
    ring = res.ring
    n = ring.ngens
    computed = krull_dimension(buchberger(res.ideal.generators, ring, config))
    if dim is None:
        dim = computed
    elif dim != computed:
        raise InconsistencyError(
            f"Dimension {dim} disagrees with the initial-ideal dimension {computed}"
        )
    pd = res.length
    if pd > n:
        raise InconsistencyError(f"Projective dimension {pd} exceeds {n} variables")
    codim = n - dim
    is_cm = pd == codim
    if not is_cm:
        return RingInvariants(
            n=n, dim=dim, pd=pd, codim=codim, is_cm=False, undefined_reason=NOT_CM
        )
    sigma = sum(ring.weights)
    last = res.modules[-1].shifts
    canonical = sorted(sigma - j for j in last)
    rtype = len(last)
    return RingInvariants(
        n=n,
        dim=dim,
        pd=pd,
        codim=codim,
        is_cm=True,
        type=rtype,
        is_level=len(set(canonical)) == 1,
        is_gorenstein=rtype == 1,
        canonical_degrees=canonical,
    )


# ============================================================================
# Hilbert series
# ============================================================================


def _trim(coeffs: list[int]) -> list[int]:
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def kpolynomial(res: GradedResolution) -> list[int]:
    """Coefficients of K(t) = sum over i, j of (-1)^i beta_ij t^j."""
    entries = res.betti().entries
    numerator = [0] * (max(j for (_, j) in entries) + 1)
    for (i, j), r in entries.items():
        numerator[j] += (-1) ** i * r
    return _trim(numerator)


def hilbert(res: GradedResolution, dim: int) -> HilbertData:
    """K(t) from the Betti numbers, and h(t) by exact division by (1-t)^codim."""
    ring = res.ring
    numerator = kpolynomial(res)
    if not ring.is_standard_graded:
        return HilbertData(
            numerator=numerator, denominator_weights=list(ring.weights), dim=dim
        )
    codim = ring.ngens - dim
    k_poly = Poly(list(reversed(numerator)), _T, domain=ZZ)
    quotient, remainder = k_poly.div(Poly((1 - _T) ** codim, _T, domain=ZZ))
    if not remainder.is_zero:
        raise InconsistencyError(
            f"K(t) is not divisible by (1-t)^{codim}; dimension or resolution is wrong"
        )
    h = _trim([int(c) for c in reversed(quotient.all_coeffs())])
    if sum(h) <= 0:
        raise InconsistencyError(f"h(1) = {sum(h)} is not positive")
    return HilbertData(
        numerator=numerator,
        denominator_weights=list(ring.weights),
        h_vector=h,
        dim=dim,
        multiplicity=sum(h),
    )


def hilbert_function(numerator: Sequence[int], n: int, upto: int) -> list[int]:
    """Coefficients of K(t)/(1-t)^n in degrees 0..upto."""
    return [
        sum(
            c * comb(n - 1 + k - j, n - 1)
            for j, c in enumerate(numerator)
            if k >= j
        )
        for k in range(upto + 1)
    ]


def standard_monomial_counts(gb: GroebnerBasis, upto: int) -> list[int]:
    """Number of monomials of each degree outside the initial ideal."""
    n = gb.ring.ngens
    leads = gb.leading_monomials
    counts = []
    for k in range(upto + 1):
        count = 0
        for combo in combinations_with_replacement(range(n), k):
            m = [0] * n
            for v in combo:
                m[v] += 1
            if not any(monomial_divides(lm, m) for lm in leads):
                count += 1
        counts.append(count)
    return counts


def hilbert_cross_check(
    res: GradedResolution, upto: int, config: EngineConfig | None = None
) -> None:
    """Compare the Hilbert function from K(t) with a standard monomial count."""
    ring = res.ring
    if not ring.is_standard_graded or upto <= 0:
        return
    from_betti = hilbert_function(kpolynomial(res), ring.ngens, upto)
    counted = standard_monomial_counts(buchberger(res.ideal.generators, ring, config), upto)
    if from_betti != counted:
        raise InconsistencyError(
            f"Hilbert function mismatch: resolution {from_betti}, count {counted}"
        )


def hilbert_form_audit(
    h_vector: Sequence[int], rtype: int | None, required: bool = False
) -> HilbertFormReport:
    """Whether h(t) = 1 + r(t + ... + t^s); when `required`, r must equal the type."""
    tail = list(h_vector[1:])
    uniform = bool(h_vector) and h_vector[0] == 1 and bool(tail) and len(set(tail)) == 1
    coefficient = tail[0] if uniform else None
    passed = not required or (uniform and coefficient == rtype)
    if not passed:
        raise InconsistencyError(
            f"h-vector {list(h_vector)} is not of the form 1 + {rtype}(t + ... + t^s)"
        )
    return HilbertFormReport(
        uniform=uniform, coefficient=coefficient, required=required, passed=passed
    )


# ============================================================================
# Codimension-two audit
# ============================================================================


def hilbert_burch_audit(
    res: GradedResolution,
    invariants: RingInvariants | None = None,
    config: EngineConfig | None = None,
) -> HilbertBurchReport:
    """Check the 1-3-2 shape, that the signed 2x2 minors of phi_2 regenerate J,
    and that phi_2 has monomial (or zero) entries.

    Applies to ideals of codimension two with three minimal generators. Any
    other resolution shape for such an ideal is a failed audit, not a skip.
    """
    if invariants is None:
        invariants = ring_invariants(res, config=config)
    shape = [m.rank for m in res.modules]
    generators = shape[1] if len(shape) > 1 else 0
    if invariants.codim != 2 or generators != 3:
        return HilbertBurchReport(
            applicable=False,
            shape=shape,
            reason="needs codimension two and three minimal generators",
        )
    if shape != [1, 3, 2]:
        return HilbertBurchReport(
            applicable=True,
            shape=shape,
            passed=False,
            reason=f"resolution shape {shape} instead of [1, 3, 2]",
        )
    ring = res.ring
    a = res.matrix(2)
    minors = []
    for skip in range(3):
        r0, r1 = [x for x in range(3) if x != skip]
        minor = a[r0][0] * a[r1][1] - a[r0][1] * a[r1][0]
        minors.append(minor if skip % 2 == 0 else -minor)
    same = (
        buchberger(minors, ring, config).generators
        == buchberger(res.ideal.generators, ring, config).generators
    )
    monomial = all(len(f) <= 1 for row in a for f in row)
    return HilbertBurchReport(
        applicable=True,
        shape=shape,
        minors=[ring.format(m) for m in minors],
        minors_generate=same,
        entries_monomial=monomial,
        passed=same and monomial,
    )
