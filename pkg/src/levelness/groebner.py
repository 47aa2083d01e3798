"""Buchberger's algorithm for ideals and submodules of graded free modules.

Module vectors are sparse dicts mapping ``(position, monomial)`` to a rational
coefficient. Syzygies and kernels over quotient rings are read off a Groebner
basis of an augmented module under a block order, so one engine serves every
caller.
"""

import heapq
import logging
import random
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import groupby
from typing import Any, Iterable, Mapping, Sequence

from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement

from .config import EngineConfig, resolve_config
from .errors import InputError, ResourceError
from .polynomials import (
    Monomial,
    Ring,
    TermOrder,
    monomial_divides,
    monomial_lcm,
    monomial_product,
    monomial_quotient,
)

logger = logging.getLogger(__name__)

Term = tuple[int, Monomial]
Vector = dict[Term, Any]


# ============================================================================
# Free modules and their elements
# ============================================================================


@dataclass(frozen=True)
class FreeModule:
    """Graded free module: one Z-shift (and optional Z^d shift) per basis element."""

    ring: Ring
    shifts: tuple[int, ...]
    multishifts: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "shifts", tuple(int(s) for s in self.shifts))
        if self.multishifts is not None:
            if len(self.multishifts) != len(self.shifts):
                raise InputError("One multidegree shift per basis element required")
            object.__setattr__(
                self, "multishifts", tuple(tuple(s) for s in self.multishifts)
            )

    @property
    def rank(self) -> int:
        return len(self.shifts)

    def term_degree(self, term: Term) -> int:
        pos, m = term
        return self.ring.degree(m) + self.shifts[pos]

    def term_multidegree(self, term: Term) -> tuple[int, ...] | None:
        if self.multishifts is None or self.ring.grading is None:
            return None
        pos, m = term
        return tuple(
            a + b for a, b in zip(self.ring.multidegree(m), self.multishifts[pos])
        )

    def vector_degree(self, vec: Mapping[Term, Any]) -> int:
        degrees = {self.term_degree(t) for t in vec}
        if len(degrees) != 1:
            raise InputError("Vector is zero or not homogeneous")
        return degrees.pop()

    def vector_multidegree(self, vec: Mapping[Term, Any]) -> tuple[int, ...] | None:
        degrees = {self.term_multidegree(t) for t in vec}
        if len(degrees) != 1:
            return None
        return degrees.pop()

    def is_homogeneous(self, vec: Mapping[Term, Any]) -> bool:
        return len({self.term_degree(t) for t in vec}) <= 1

    def direct_sum(self, other: "FreeModule") -> "FreeModule":
        multi = None
        if self.multishifts is not None and other.multishifts is not None:
            multi = self.multishifts + other.multishifts
        return FreeModule(self.ring, self.shifts + other.shifts, multi)


@dataclass(frozen=True)
class ModuleElement:
    """An element of a free module, stored sparsely."""

    module: FreeModule
    vector: Mapping[Term, Any]

    @classmethod
    def from_components(
        cls, module: FreeModule, components: Sequence[PolyElement]
    ) -> "ModuleElement":
        if len(components) != module.rank:
            raise InputError(
                f"Expected {module.rank} components, got {len(components)}"
            )
        vec = {}
        for pos, f in enumerate(components):
            for m, c in module.ring.convert(f).items():
                if c:
                    vec[(pos, m)] = c
        return cls(module, vec)

    @property
    def components(self) -> tuple[PolyElement, ...]:
        ring = self.module.ring
        parts = [dict() for _ in range(self.module.rank)]
        for (pos, m), c in self.vector.items():
            parts[pos][m] = c
        return tuple(ring.poly_ring(p) for p in parts)

    @property
    def degree(self) -> int:
        return self.module.vector_degree(self.vector)

    @property
    def multidegree(self) -> tuple[int, ...] | None:
        return self.module.vector_multidegree(self.vector)

    def is_zero(self) -> bool:
        return not self.vector

    def format(self) -> list[str]:
        return [self.module.ring.format(f) for f in self.components]


class ModuleOrder:
    """Monomial order on a free module.

    Terms compare by block first (higher block is larger), then by total degree
    when ``graded``, then by the ring order, then by position (lower is larger).
    """

    def __init__(
        self,
        module: FreeModule,
        blocks: Sequence[int] | None = None,
        graded: bool = True,
    ):
        self.module = module
        self.blocks = tuple(blocks) if blocks is not None else (0,) * module.rank
        if len(self.blocks) != module.rank:
            raise InputError("One block index per position required")
        self.graded = graded
        self._ring_key = module.ring.order.key

    def key(self, term: Term) -> tuple[int, ...]:
        pos, m = term
        head = (self.blocks[pos],)
        if self.graded:
            head += (self.module.term_degree(term),)
        return head + self._ring_key(m) + (-pos,)


# ============================================================================
# Vector helpers
# ============================================================================


def _lead(vec: Vector, order: ModuleOrder) -> Term:
    return max(vec, key=order.key)


def _monic(vec: Vector, order: ModuleOrder) -> Vector:
    c = vec[_lead(vec, order)]
    if c == 1:
        return vec
    inv = QQ.one / c
    return {t: a * inv for t, a in vec.items()}


def _shifted(vec: Vector, mono: Monomial, coeff) -> Vector:
    return {(p, monomial_product(m, mono)): c * coeff for (p, m), c in vec.items()}


def _axpy(target: Vector, vec: Vector, mono: Monomial, coeff) -> None:
    """target += coeff * mono * vec, in place, dropping zeros."""
    for (p, m), c in vec.items():
        t = (p, monomial_product(m, mono))
        new = target.get(t, 0) + coeff * c
        if new:
            target[t] = new
        else:
            target.pop(t, None)


# ============================================================================
# Buchberger engine
# ============================================================================


class ModuleBasis:
    """Incremental Groebner basis of a submodule of a free module.

    Pairs are selected by the normal strategy (smallest degree, then pair
    indices) and pruned with the Gebauer-Moeller criteria. ``complete`` may be
    truncated at a degree and resumed later, which is exact for homogeneous
    input.
    """

    def __init__(
        self,
        module: FreeModule,
        order: ModuleOrder | None = None,
        config: EngineConfig | None = None,
    ):
        self.module = module
        self.order = order or ModuleOrder(module)
        self.config = resolve_config(config)
        self.elements: list[Vector] = []
        self.leads: list[Term] = []
        self._by_pos: dict[int, list[int]] = defaultdict(list)
        self._pairs: set[tuple[int, int]] = set()
        self._heap: list[tuple[int, int, int]] = []
        self._single_position = module.rank == 1
        self.pairs_processed = 0

    def __len__(self) -> int:
        return len(self.elements)

    def add(self, vectors: Iterable[Mapping[Term, Any]], pairwise: bool = True) -> None:
        """Insert generators; with ``pairwise=False`` no pairs among the new ones
        are formed (use for blocks already known to be a Groebner basis)."""
        for vec in vectors:
            vec = {t: c for t, c in vec.items() if c}
            if not vec:
                continue
            self._insert(_monic(vec, self.order), pairwise)

    def _insert(self, vec: Vector, pairwise: bool) -> None:
        k = len(self.elements)
        lead = _lead(vec, self.order)
        if pairwise:
            self._update(k, lead)
        self.elements.append(vec)
        self.leads.append(lead)
        self._by_pos[lead[0]].append(k)

    def _pair_degree(self, pos: int, lcm: Monomial) -> int:
        return self.module.term_degree((pos, lcm))

    def _update(self, k: int, lead: Term) -> None:
        pos, mk = lead
        leads = self.leads
        stale = []
        for i, j in self._pairs:
            pi, mi = leads[i]
            if pi != pos:
                continue
            gam = monomial_lcm(mi, leads[j][1])
            if (
                monomial_divides(mk, gam)
                and gam != monomial_lcm(mi, mk)
                and gam != monomial_lcm(leads[j][1], mk)
            ):
                stale.append((i, j))
        for p in stale:
            self._pairs.discard(p)

        groups: dict[Monomial, list[int]] = {}
        for i in self._by_pos.get(pos, ()):
            groups.setdefault(monomial_lcm(leads[i][1], mk), []).append(i)
        ring_key = self.module.ring.order.key
        minimal: list[Monomial] = []
        for lcm in sorted(groups, key=ring_key):
            if not any(monomial_divides(other, lcm) for other in minimal):
                minimal.append(lcm)
        for lcm in minimal:
            members = groups[lcm]
            if self._single_position and any(
                monomial_product(leads[i][1], mk) == lcm for i in members
            ):
                continue
            i = min(members)
            self._pairs.add((i, k))
            heapq.heappush(self._heap, (self._pair_degree(pos, lcm), i, k))

    def _spoly(self, i: int, j: int) -> Vector:
        (pos, mi), (_, mj) = self.leads[i], self.leads[j]
        lcm = monomial_lcm(mi, mj)
        s = _shifted(self.elements[i], monomial_quotient(lcm, mi), QQ.one)
        _axpy(s, self.elements[j], monomial_quotient(lcm, mj), -QQ.one)
        return s

    def complete(self, max_degree: int | None = None) -> None:
        """Process pairs until none remain (or none of degree <= max_degree)."""
        cap = self.config.max_degree
        while self._heap:
            deg, i, j = self._heap[0]
            if max_degree is not None and deg > max_degree:
                break
            heapq.heappop(self._heap)
            if (i, j) not in self._pairs:
                continue
            self._pairs.discard((i, j))
            if deg > cap:
                raise ResourceError(
                    f"S-pair degree {deg} exceeds the degree cap {cap}"
                )
            self.pairs_processed += 1
            if self.pairs_processed > self.config.max_pairs:
                raise ResourceError(
                    f"More than {self.config.max_pairs} S-pairs processed"
                )
            r = self.normal_form(self._spoly(i, j))
            if r:
                self._insert(_monic(r, self.order), True)
        logger.debug(
            "basis of %d elements after %d pairs", len(self.elements), self.pairs_processed
        )

    def _reducer(self, term: Term, rng: random.Random | None) -> int | None:
        pos, m = term
        if rng is None:
            for i in self._by_pos.get(pos, ()):
                if monomial_divides(self.leads[i][1], m):
                    return i
            return None
        choices = [
            i for i in self._by_pos.get(pos, ()) if monomial_divides(self.leads[i][1], m)
        ]
        return rng.choice(choices) if choices else None

    def normal_form(
        self,
        vec: Mapping[Term, Any],
        full: bool = True,
        rng: random.Random | None = None,
    ) -> Vector:
        """Remainder of `vec`; with ``full`` every term is reduced, otherwise only
        leading terms. ``rng`` picks reducers at random instead of the first."""
        work: Vector = {t: c for t, c in vec.items() if c}
        neg = self._neg_key
        heap = [(neg(t), t) for t in work]
        heapq.heapify(heap)
        remainder: Vector = {}
        while heap:
            _, term = heapq.heappop(heap)
            coeff = work.pop(term, None)
            if coeff is None:
                continue
            idx = self._reducer(term, rng)
            if idx is None:
                remainder[term] = coeff
                if not full:
                    remainder.update(work)
                    return remainder
                continue
            mono = monomial_quotient(term[1], self.leads[idx][1])
            for (p, m), c in self.elements[idx].items():
                t = (p, monomial_product(m, mono))
                if t == term:
                    continue
                if t not in work:
                    heapq.heappush(heap, (neg(t), t))
                new = work.get(t, 0) - coeff * c
                if new:
                    work[t] = new
                else:
                    work.pop(t, None)
        return remainder

    def _neg_key(self, term: Term) -> tuple[int, ...]:
        return tuple(-x for x in self.order.key(term))

    def reduced(self) -> list[Vector]:
        """Minimal, inter-reduced, monic basis sorted by ascending leading term."""
        key = self.order.key
        indices = sorted(range(len(self.elements)), key=lambda i: key(self.leads[i]))
        minimal: list[int] = []
        for i in indices:
            pos, m = self.leads[i]
            if not any(
                self.leads[j][0] == pos and monomial_divides(self.leads[j][1], m)
                for j in minimal
            ):
                minimal.append(i)
        out = []
        for i in minimal:
            others = ModuleBasis(self.module, self.order, self.config)
            others.add((self.elements[j] for j in minimal if j != i), pairwise=False)
            out.append(_monic(others.normal_form(self.elements[i]), self.order))
        return out


# ============================================================================
# Ideals
# ============================================================================


def _poly_vector(f: PolyElement) -> Vector:
    return {(0, m): c for m, c in f.items() if c}


def _ideal_module(ring: Ring) -> FreeModule:
    return FreeModule(ring, (0,), ((0,) * len(ring.grading),) if ring.grading else None)


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis of an ideal; generators are monic and sorted."""

    ring: Ring
    generators: tuple[PolyElement, ...]
    _basis: ModuleBasis = field(repr=False, compare=False)

    @property
    def order(self) -> TermOrder:
        return self.ring.order

    @property
    def leading_monomials(self) -> tuple[Monomial, ...]:
        return tuple(self.ring.leading_monomial(g) for g in self.generators)

    def normal_form(self, f: PolyElement, rng: random.Random | None = None) -> PolyElement:
        r = self._basis.normal_form(_poly_vector(self.ring.convert(f)), rng=rng)
        return self.ring.poly_ring({m: c for (_, m), c in r.items()})

    def contains(self, f: PolyElement) -> bool:
        return not self.normal_form(f)

    def is_unit_ideal(self) -> bool:
        return any(g.is_ground and g for g in self.generators)

    def __len__(self) -> int:
        return len(self.generators)


def _basis_from(ring: Ring, polys: Sequence[PolyElement], config) -> GroebnerBasis:
    module = _ideal_module(ring)
    holder = ModuleBasis(module, ModuleOrder(module), config)
    holder.add((_poly_vector(g) for g in polys), pairwise=False)
    return GroebnerBasis(ring, tuple(polys), holder)


def buchberger(
    gens: Sequence[PolyElement],
    ring: Ring,
    config: EngineConfig | None = None,
    graded: bool | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by `gens` in `ring`."""
    config = resolve_config(config)
    polys = [ring.convert(g) for g in gens]
    module = _ideal_module(ring)
    if graded is None:
        graded = all(ring.is_homogeneous(f) for f in polys) and ring.order.kind != "elimination"
    basis = ModuleBasis(module, ModuleOrder(module, graded=graded), config)
    basis.add(_poly_vector(f) for f in polys)
    basis.complete()
    out = [ring.poly_ring({m: c for (_, m), c in v.items()}) for v in basis.reduced()]
    logger.debug("reduced Groebner basis with %d elements", len(out))
    return _basis_from(ring, out, config)


def normal_form(f: PolyElement, gb: GroebnerBasis) -> PolyElement:
    """Remainder of `f` modulo the Groebner basis `gb`."""
    if f.ring != gb.ring.poly_ring:
        raise InputError("Polynomial and Groebner basis live in different rings")
    return gb.normal_form(f)


def divide(
    f: PolyElement, divisors: Sequence[PolyElement], ring: Ring
) -> tuple[list[PolyElement], PolyElement]:
    """Multivariate division: f = sum(q_i * g_i) + r with r reduced."""
    quotients = [ring.zero for _ in divisors]
    divisors = [ring.convert(g) for g in divisors]
    leads = []
    for g in divisors:
        lm = ring.leading_monomial(g)
        leads.append((lm, g[lm]))
    p = ring.convert(f)
    remainder = ring.zero
    while p:
        m = ring.leading_monomial(p)
        c = p[m]
        for i, (lm, lc) in enumerate(leads):
            if monomial_divides(lm, m):
                t = ring.monomial(monomial_quotient(m, lm), c / lc)
                quotients[i] += t
                p -= t * divisors[i]
                break
        else:
            lt = ring.monomial(m, c)
            remainder += lt
            p -= lt
    return quotients, remainder


def eliminate(
    gens: Sequence[PolyElement],
    ring: Ring,
    block: Sequence[str],
    config: EngineConfig | None = None,
) -> tuple[Ring, list[PolyElement]]:
    """Generators of the ideal intersected with the subring free of `block`.

    Returns the subring (remaining variables, original weights and grading
    columns) together with the reduced Groebner basis elements that survive.
    """
    block = list(block)
    unknown = [v for v in block if v not in ring.names]
    if unknown:
        raise InputError(f"Cannot eliminate unknown variables {unknown}")
    rest = [v for v in ring.names if v not in block]
    if not rest:
        raise InputError("Cannot eliminate every variable")
    names = tuple(block + rest)
    perm = [ring.names.index(v) for v in names]
    weights = tuple(ring.weights[i] for i in perm)
    elim = Ring(names, weights, TermOrder("elimination", weights, len(block)))
    polys = [elim.convert(g) for g in gens]
    gb = buchberger(polys, elim, config, graded=False)

    rest_idx = [ring.names.index(v) for v in rest]
    grading = None
    if ring.grading is not None:
        grading = tuple(tuple(row[i] for i in rest_idx) for row in ring.grading)
    kind = "lex" if ring.order.kind == "lex" else "degrevlex"
    sub = Ring(
        tuple(rest), tuple(ring.weights[i] for i in rest_idx), TermOrder(kind), grading
    )
    b = len(block)
    out = []
    for g in gb.generators:
        if all(not any(m[:b]) for m in g.keys()):
            out.append(sub.poly_ring({m[b:]: c for m, c in g.items()}))
    return sub, out


# ============================================================================
# Syzygies and kernels
# ============================================================================


def _columns_module(columns: Sequence[ModuleElement]) -> FreeModule:
    if not columns:
        raise InputError("At least one column is required")
    target = columns[0].module
    if any(c.module != target for c in columns):
        raise InputError("Columns live in different free modules")
    shifts, multi = [], []
    for col in columns:
        if col.is_zero():
            shifts.append(0)
            multi.append(None)
            continue
        shifts.append(col.degree)
        multi.append(col.multidegree)
    multishifts = None if any(m is None for m in multi) else tuple(multi)
    return FreeModule(target.ring, tuple(shifts), multishifts)


def _lift_kernel(
    columns: Sequence[ModuleElement],
    source: FreeModule,
    modulo: GroebnerBasis | None,
    config: EngineConfig,
) -> list[Vector]:
    target = columns[0].module
    t = target.rank
    augmented = target.direct_sum(source)
    order = ModuleOrder(augmented, blocks=(1,) * t + (0,) * source.rank)
    basis = ModuleBasis(augmented, order, config)
    if modulo is not None:
        basis.add(
            (
                {(k, m): c for m, c in g.items()}
                for k in range(t)
                for g in modulo.generators
            ),
            pairwise=False,
        )
    zero = (0,) * target.ring.ngens
    gens = []
    for i, col in enumerate(columns):
        vec = dict(col.vector)
        vec[(t + i, zero)] = QQ.one
        gens.append(vec)
    basis.add(gens)
    basis.complete()
    out = []
    for vec, (pos, _) in zip(basis.elements, basis.leads):
        if pos >= t:
            out.append({(p - t, m): c for (p, m), c in vec.items()})
    logger.debug("kernel lift: %d of %d basis elements", len(out), len(basis))
    return out


def syzygies(
    columns: Sequence[ModuleElement], config: EngineConfig | None = None
) -> list[ModuleElement]:
    """Generators of the module of relations among `columns` over the polynomial ring.

    The source module is shifted by the column degrees, so the returned
    vectors are homogeneous whenever the columns are.
    """
    config = resolve_config(config)
    source = _columns_module(columns)
    return [ModuleElement(source, v) for v in _lift_kernel(columns, source, None, config)]


def kernel_mod_ideal(
    columns: Sequence[ModuleElement],
    ideal: Sequence[PolyElement],
    config: EngineConfig | None = None,
) -> list[ModuleElement]:
    """Generators of the kernel of the map given by `columns` over S/(ideal).

    Vectors are reduced modulo the ideal; vectors that vanish are discarded and
    duplicates removed.
    """
    config = resolve_config(config)
    source = _columns_module(columns)
    ring = source.ring
    gb = buchberger(ideal, ring, config) if ideal else None
    lifted = _lift_kernel(columns, source, gb, config)
    if gb is None:
        return [ModuleElement(source, v) for v in lifted]

    reducer = ModuleBasis(source, ModuleOrder(source), config)
    reducer.add(
        ({(k, m): c for m, c in g.items()} for k in range(source.rank) for g in gb.generators),
        pairwise=False,
    )
    seen = set()
    out = []
    for vec in lifted:
        r = reducer.normal_form(vec)
        if not r:
            continue
        r = _monic(r, reducer.order)
        fingerprint = frozenset(r.items())
        if fingerprint in seen:
            continue
        seen.add(fingerprint)
        out.append(ModuleElement(source, r))
    return out


def minimal_generators(
    elements: Sequence[ModuleElement],
    module: FreeModule | None = None,
    config: EngineConfig | None = None,
) -> list[ModuleElement]:
    """A minimal homogeneous generating set of the submodule spanned by `elements`.

    Elements are taken in degree order; one is kept, in reduced monic form,
    exactly when it is not in the span of those kept before it.
    """
    config = resolve_config(config)
    nonzero = [e for e in elements if not e.is_zero()]
    if module is None:
        if not nonzero:
            return []
        module = nonzero[0].module
    for e in nonzero:
        if e.module != module:
            raise InputError("Elements live in different free modules")
        if not module.is_homogeneous(e.vector):
            raise InputError("Minimal generators need homogeneous input")
    ordered = sorted(enumerate(nonzero), key=lambda p: (p[1].degree, p[0]))
    basis = ModuleBasis(module, ModuleOrder(module), config)
    kept: list[ModuleElement] = []
    for deg, group in groupby(ordered, key=lambda p: p[1].degree):
        basis.complete(max_degree=deg)
        for _, element in group:
            r = basis.normal_form(element.vector)
            if not r:
                continue
            r = _monic(r, basis.order)
            kept.append(ModuleElement(module, r))
            basis.add([r])
            basis.complete(max_degree=deg)
    return kept


def apply_columns(columns: Sequence[ModuleElement], vec: Mapping[Term, Any]) -> Vector:
    """Image of `vec` under the map whose i-th column is ``columns[i]``."""
    out: Vector = {}
    for (pos, m), c in vec.items():
        _axpy(out, columns[pos].vector, m, c)
    return out


def ideal_elements(polys: Sequence[PolyElement], ring: Ring) -> list[ModuleElement]:
    """View polynomials as elements of the rank-one free module."""
    module = _ideal_module(ring)
    return [ModuleElement(module, _poly_vector(ring.convert(f))) for f in polys]
