"""Homogeneous affine semigroups: validation, lattice and cone geometry,
membership, toric ideals and bounded hole diagnostics."""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from typing import Sequence

from sympy import Matrix, Rational
from sympy.matrices.normalforms import hermite_normal_form

from .config import EngineConfig, resolve_config
from .errors import (
    InconsistencyError,
    InputError,
    ResourceError,
    UnsupportedDimensionError,
)
from .groebner import eliminate, ideal_elements, minimal_generators
from .models import HoleFamily, HoleReport, SeparatingRay
from .polynomials import Ideal, Ring, TermOrder

logger = logging.getLogger(__name__)

Point = tuple[int, ...]


# ============================================================================
# Semigroups
# ============================================================================


@dataclass(frozen=True)
class AffineSemigroup:
    """A homogeneous affine semigroup given by its minimal generators.

    ``grading_functional`` is a rational vector taking the value 1 on every
    generator; ``lattice_basis`` spans the group ZS.
    """

    generators: tuple[Point, ...]
    grading_functional: tuple[Rational, ...]
    lattice_basis: tuple[Point, ...] = field(repr=False)

    @property
    def d(self) -> int:
        return len(self.generators[0])

    @property
    def rank(self) -> int:
        return len(self.lattice_basis)

    def degree(self, u: Sequence[int]) -> Rational:
        """Value of the grading functional on `u`."""
        if len(u) != self.d:
            raise InputError(f"Point {list(u)} does not have {self.d} coordinates")
        return sum((a * b for a, b in zip(self.grading_functional, u)), Rational(0))

    def in_lattice(self, u: Sequence[int]) -> bool:
        """True iff `u` is an integer combination of the generators."""
        if len(u) != self.d:
            raise InputError(f"Point {list(u)} does not have {self.d} coordinates")
        try:
            sol, params = self._basis_matrix.gauss_jordan_solve(Matrix(list(u)))
        except ValueError:
            return False
        return params.shape[0] == 0 and all(x.is_integer for x in sol)

    @cached_property
    def _basis_matrix(self) -> Matrix:
        return Matrix.hstack(*(Matrix(list(b)) for b in self.lattice_basis))

    @cached_property
    def max_coordinate(self) -> int:
        return max(max(g) for g in self.generators)

    def default_hole_bound(self) -> int:
        """Three times the largest generator degree times the largest coordinate."""
        top = max(self.degree(g) for g in self.generators)
        return int(3 * top * max(self.max_coordinate, 1))

    def functional_strings(self) -> list[str]:
        return [str(x) for x in self.grading_functional]


def _solve_functional(gens: Sequence[Point]) -> tuple[Rational, ...] | None:
    a = Matrix([list(g) for g in gens])
    try:
        sol, params = a.gauss_jordan_solve(Matrix([1] * len(gens)))
    except ValueError:
        return None
    if params.shape[0]:
        sol = sol.subs({p: 0 for p in params})
    return tuple(Rational(x) for x in sol)


def validate(gens: Sequence[Sequence[int]]) -> AffineSemigroup:
    """Check a generator list and build the semigroup it generates.

    Duplicates and generators that are sums of the others are dropped with a
    warning; inputs off a common affine hyperplane are rejected.
    """
    if not gens:
        raise InputError("A semigroup needs at least one generator")
    points = [tuple(int(x) for x in g) for g in gens]
    d = len(points[0])
    if d == 0 or any(len(p) != d for p in points):
        raise InputError("Generators must be nonempty vectors of equal length")
    for p in points:
        if any(x < 0 for x in p):
            raise InputError(f"Generator {list(p)} has a negative entry")
        if not any(p):
            raise InputError("The zero vector cannot be a generator of a homogeneous semigroup")

    unique: list[Point] = []
    for p in points:
        if p in unique:
            logger.warning("dropping duplicate generator %s", list(p))
        else:
            unique.append(p)

    functional = _solve_functional(unique)
    if functional is None:
        witness = next(
            unique[i] for i in range(1, len(unique) + 1)
            if _solve_functional(unique[:i]) is None
        )
        raise InputError(
            f"Generators do not lie on a common hyperplane; generator {list(witness)} "
            "is inconsistent with the ones before it"
        )

    lattice = hermite_normal_form(Matrix([list(p) for p in unique]).T)
    basis = tuple(
        tuple(int(x) for x in lattice.col(j)) for j in range(lattice.shape[1])
    )
    semigroup = AffineSemigroup(tuple(unique), functional, basis)

    minimal = []
    for i, p in enumerate(unique):
        others = [q for j, q in enumerate(unique) if j != i]
        if others and membership_in(p, others, functional)[0]:
            logger.warning("dropping redundant generator %s", list(p))
            continue
        minimal.append(p)
    if len(minimal) != len(unique):
        semigroup = AffineSemigroup(tuple(minimal), functional, basis)
    logger.debug(
        "semigroup with %d generators, lattice rank %d", len(minimal), len(basis)
    )
    return semigroup


def numerical_curve(exponents: Sequence[int]) -> AffineSemigroup:
    """The semigroup generated by (1, e) for each exponent e."""
    return validate([(1, int(e)) for e in exponents])


# ============================================================================
# Membership
# ============================================================================


def membership_in(
    a: Sequence[int],
    gens: Sequence[Point],
    functional: Sequence[Rational],
) -> tuple[bool, list[Point] | None]:
    """Decide whether `a` is a sum of `gens`; the certificate lists the summands."""
    a = tuple(int(x) for x in a)
    k = sum((x * y for x, y in zip(functional, a)), Rational(0))
    if k < 0 or not k.is_integer:
        return False, None
    if any(x < 0 for x in a):
        return False, None
    failed: set[tuple[Point, int]] = set()

    def search(rem: Point, start: int, depth: int) -> list[Point] | None:
        if depth == 0:
            return [] if not any(rem) else None
        if (rem, start) in failed:
            return None
        for i in range(start, len(gens)):
            g = gens[i]
            if all(x >= y for x, y in zip(rem, g)):
                found = search(tuple(x - y for x, y in zip(rem, g)), i, depth - 1)
                if found is not None:
                    return [g] + found
        failed.add((rem, start))
        return None

    certificate = search(a, 0, int(k))
    if certificate is None:
        return False, None
    return True, certificate


def membership(a: Sequence[int], semigroup: AffineSemigroup) -> tuple[bool, list[Point] | None]:
    """Decide a ∈ S; the grading functional forces exactly deg(a) summands."""
    if len(a) != semigroup.d:
        raise InputError(f"Point {list(a)} does not have {semigroup.d} coordinates")
    return membership_in(a, semigroup.generators, semigroup.grading_functional)


def elements_by_degree(semigroup: AffineSemigroup, bound: int) -> list[set[Point]]:
    """All elements of S of each degree 0..bound."""
    levels = [{(0,) * semigroup.d}]
    for _ in range(bound):
        levels.append(
            {
                tuple(x + y for x, y in zip(p, g))
                for p in levels[-1]
                for g in semigroup.generators
            }
        )
    return levels


def slice_count(semigroup: AffineSemigroup, k: int) -> int:
    """Number of elements of S of degree k (the Hilbert function of k[S])."""
    return len(elements_by_degree(semigroup, k)[k])


# ============================================================================
# Toric ideals
# ============================================================================


def _vanishes_under_monomial_map(f, gens: Sequence[Point]) -> bool:
    images: dict[Point, object] = defaultdict(int)
    for m, c in f.items():
        image = tuple(
            sum(e * g[j] for e, g in zip(m, gens)) for j in range(len(gens[0]))
        )
        images[image] += c
    return not any(images.values())


def toric_ideal(
    semigroup: AffineSemigroup,
    names: Sequence[str] | None = None,
    config: EngineConfig | None = None,
) -> Ideal:
    """Kernel of x_i -> t^{a_i}, found by eliminating the t-variables.

    The returned ideal lives in a ring graded by the generator columns, and
    every generator is checked to be multihomogeneous and to vanish under the
    monomial map.
    """
    config = resolve_config(config)
    gens = semigroup.generators
    k, d = len(gens), semigroup.d
    names = tuple(names) if names is not None else tuple(f"x{i}" for i in range(1, k + 1))
    if len(names) != k:
        raise InputError(f"Got {len(names)} variable names for {k} generators")
    for g in gens:
        if sum(g) > config.max_degree:
            raise ResourceError(
                f"Generator {list(g)} has total degree {sum(g)} above the cap "
                f"{config.max_degree}"
            )
    t_names = tuple(f"t{j}" for j in range(1, d + 1))
    if set(t_names) & set(names):
        raise InputError("Variable names clash with the elimination block t1..td")
    grading = tuple(
        tuple(1 if i == j else 0 for i in range(d)) + tuple(g[j] for g in gens)
        for j in range(d)
    )
    full = Ring(t_names + names, order=TermOrder(config.order), grading=grading)
    xs = full.gens[d:]
    binomials = [
        xs[i] - full.monomial(tuple(gens[i]) + (0,) * k) for i in range(k)
    ]
    sub, polys = eliminate(binomials, full, t_names, config)
    for f in polys:
        if not sub.is_multihomogeneous(f):
            raise InconsistencyError(f"Toric generator {sub.format(f)} is not multihomogeneous")
        if not _vanishes_under_monomial_map(f, gens):
            raise InconsistencyError(
                f"Toric generator {sub.format(f)} does not vanish on the semigroup"
            )
    minimal = minimal_generators(ideal_elements(polys, sub), config=config)
    ideal = Ideal(sub, tuple(e.components[0] for e in minimal))
    logger.info("toric ideal with %d minimal generators", len(ideal.generators))
    return ideal


# ============================================================================
# Cone geometry
# ============================================================================


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull(points: Sequence[Point]) -> list[Point]:
    """Strict convex hull in counterclockwise order (collinear points dropped)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _slice_projection(semigroup: AffineSemigroup) -> dict[Point, Point]:
    """Drop one coordinate on which the grading functional is nonzero."""
    drop = next(i for i, x in enumerate(semigroup.grading_functional) if x != 0)
    return {
        g: tuple(x for i, x in enumerate(g) if i != drop) for g in semigroup.generators
    }


def _hull_cycle(semigroup: AffineSemigroup) -> list[Point]:
    """Extremal generators in cyclic order along the degree-one slice (d <= 3)."""
    proj = _slice_projection(semigroup)
    back = {v: g for g, v in proj.items()}
    if semigroup.d == 1:
        return list(semigroup.generators)
    if semigroup.d == 2:
        lo = min(proj.values())
        hi = max(proj.values())
        return [back[lo]] if lo == hi else [back[lo], back[hi]]
    return [back[v] for v in _hull(list(proj.values()))]


def _is_nonnegative_combination(x: Sequence[int], rays: Sequence[Point]) -> bool:
    a = Matrix.hstack(*(Matrix(list(r)) for r in rays))
    try:
        sol, params = a.gauss_jordan_solve(Matrix(list(x)))
    except ValueError:
        return False
    if params.shape[0]:
        sol = sol.subs({p: 0 for p in params})
    return all(c >= 0 for c in sol)


def _simplicial_rays(semigroup: AffineSemigroup) -> list[Point] | None:
    gens = semigroup.generators
    r = semigroup.rank
    for subset in combinations(gens, r):
        if Matrix([list(g) for g in subset]).rank() != r:
            continue
        if all(_is_nonnegative_combination(g, subset) for g in gens):
            return list(subset)
    return None


def extremal_rays(semigroup: AffineSemigroup) -> list[Point]:
    """Generators spanning the extremal rays of the cone, in generator order."""
    if semigroup.d <= 3:
        rays = set(_hull_cycle(semigroup))
    else:
        found = _simplicial_rays(semigroup)
        if found is None:
            raise UnsupportedDimensionError(
                f"Extremal rays in dimension {semigroup.d} need a simplicial cone"
            )
        rays = set(found)
    return [g for g in semigroup.generators if g in rays]


def cone_cells(semigroup: AffineSemigroup) -> list[tuple[Point, ...]]:
    """Simplicial cones covering the cone of S."""
    if semigroup.d <= 3:
        cycle = _hull_cycle(semigroup)
        if len(cycle) <= 3:
            return [tuple(cycle)]
        return [(cycle[0], cycle[i], cycle[i + 1]) for i in range(1, len(cycle) - 1)]
    return [tuple(extremal_rays(semigroup))]


def in_cone(x: Sequence[int], semigroup: AffineSemigroup) -> bool:
    """True iff `x` is a nonnegative real combination of the generators."""
    return any(_is_nonnegative_combination(x, cell) for cell in cone_cells(semigroup))


def _facet_functionals(semigroup: AffineSemigroup) -> list[tuple[Point, Point]]:
    """(ray, functional) pairs for a two-dimensional cone; each functional
    vanishes on its ray and is positive on the other."""
    rays = extremal_rays(semigroup)
    if semigroup.d != 2 or len(rays) != 2:
        raise UnsupportedDimensionError("Facet functionals need a two-dimensional cone")
    out = []
    for ray, other in ((rays[0], rays[1]), (rays[1], rays[0])):
        n = (-ray[1], ray[0])
        if n[0] * other[0] + n[1] * other[1] < 0:
            n = (ray[1], -ray[0])
        out.append((ray, n))
    return out


# ============================================================================
# Holes
# ============================================================================


def _box(semigroup: AffineSemigroup, k: int):
    gens = semigroup.generators
    ranges = [
        range(k * min(g[j] for g in gens), k * max(g[j] for g in gens) + 1)
        for j in range(semigroup.d)
    ]
    return product(*ranges)


def holes_box(
    semigroup: AffineSemigroup, bound: int | None = None
) -> HoleReport:
    """Points of ZS inside the cone but outside S, up to degree `bound`.

    Every point of degree k in the cone lies in the box spanned by k times the
    coordinatewise generator extremes. In dimension two the holes are grouped
    into lines parallel to each extremal ray.
    """
    if bound is None:
        bound = semigroup.default_hole_bound()
    if bound < 0:
        raise InputError("Degree bound must be nonnegative")
    levels = elements_by_degree(semigroup, bound)
    cells = cone_cells(semigroup)
    holes: list[Point] = []
    for k in range(1, bound + 1):
        for x in _box(semigroup, k):
            if x in levels[k] or semigroup.degree(x) != k:
                continue
            if not semigroup.in_lattice(x):
                continue
            if any(_is_nonnegative_combination(x, cell) for cell in cells):
                holes.append(x)
    report = HoleReport(degree_bound=bound, holes=[list(h) for h in holes])
    if semigroup.rank != 2 or semigroup.d != 2:
        return report
    return _group_holes(semigroup, holes, bound, report)


def _group_holes(
    semigroup: AffineSemigroup, holes: list[Point], bound: int, report: HoleReport
) -> HoleReport:
    hole_set = set(holes)
    families = []
    for ray in extremal_rays(semigroup):
        lines: dict[int, list[Point]] = defaultdict(list)
        for h in holes:
            lines[h[0] * ray[1] - h[1] * ray[0]].append(h)
        for key in sorted(lines):
            if len(lines[key]) >= 2:
                families.append(
                    HoleFamily(direction=list(ray), points=[list(p) for p in lines[key]])
                )

    def along(h: Point, ray: Point) -> bool:
        step = 1
        while semigroup.degree(h) + step <= bound:
            if tuple(a + step * b for a, b in zip(h, ray)) not in hole_set:
                return False
            step += 1
        return True

    rays = extremal_rays(semigroup)
    report.families = families
    report.all_in_maximal_families = all(any(along(h, r) for r in rays) for h in holes)
    return report


def separating_ray(
    semigroup: AffineSemigroup, x: Sequence[int], bound: int | None = None
) -> SeparatingRay:
    """An extremal ray r with x + N r disjoint from S, for a lattice point x
    outside the cone of a two-dimensional semigroup.

    The ray returned lies on a facet whose functional is negative at x; that
    functional is constant along r, so no translate enters the cone.
    """
    x = tuple(int(c) for c in x)
    if semigroup.d != 2:
        raise UnsupportedDimensionError("The separating-ray probe needs d = 2")
    if not semigroup.in_lattice(x):
        raise InputError(f"Point {list(x)} is not in the group of the semigroup")
    if in_cone(x, semigroup):
        raise InputError(f"Point {list(x)} lies inside the cone")
    if bound is None:
        bound = semigroup.default_hole_bound()
    for ray, n in _facet_functionals(semigroup):
        value = n[0] * x[0] + n[1] * x[1]
        if value >= 0:
            continue
        for step in range(bound + 1):
            y = tuple(a + step * b for a, b in zip(x, ray))
            if membership(y, semigroup)[0]:
                raise InconsistencyError(
                    f"{list(y)} is in the semigroup although {list(n)} is negative there"
                )
        return SeparatingRay(
            point=list(x),
            ray=list(ray),
            facet_functional=[str(c) for c in n],
            value=str(value),
            checked_up_to=bound,
        )
    raise InconsistencyError(f"No facet separates {list(x)} from the cone")
