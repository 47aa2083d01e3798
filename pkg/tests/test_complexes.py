"""Tests for simplicial complexes and their Stanley-Reisner rings.

These tests define our goals for the complex engine:
- Goal 1: Complexes are validated and their ideals are the minimal nonfaces
- Goal 2: Links and local Gorensteinness are computed face by face
- Goal 3: One-dimensional classifications agree with the trace engine
- Goal 4: Closed-form canonical ideals give Gorenstein quotients
"""

from itertools import chain, combinations, permutations, product

import pytest

from levelness.analysis import run_analysis
from levelness.complexes import (
    SimplicialComplex,
    almost_gorenstein_1dim,
    canonical_gens_known,
    classify_1dim,
    is_gorenstein_complex,
    link,
    locally_gorenstein,
    path_complex,
    points_complex,
    sr_ideal,
)
from levelness.errors import InputError

from .conftest import SAMPLE_RP2, SAMPLE_STAR


def _complex(sample: dict) -> SimplicialComplex:
    return SimplicialComplex.from_facets(sample["vertices"], sample["facets"])


def _cycle(n: int) -> SimplicialComplex:
    return SimplicialComplex.from_facets(
        n, [[i, i % n + 1] for i in range(1, n + 1)]
    )


def _canonical(n: int, edges) -> tuple[tuple[int, int], ...]:
    """Smallest relabelled edge list over relabellings that order vertices by
    degree and neighbour degrees."""
    neighbours = {v: set() for v in range(1, n + 1)}
    for a, b in edges:
        neighbours[a].add(b)
        neighbours[b].add(a)
    key = {
        v: (len(neighbours[v]), tuple(sorted(len(neighbours[w]) for w in neighbours[v])))
        for v in neighbours
    }
    classes = [[v for v in neighbours if key[v] == k] for k in sorted(set(key.values()))]
    best = None
    for choice in product(*(permutations(c) for c in classes)):
        label = {v: i for i, v in enumerate(chain.from_iterable(choice), start=1)}
        form = tuple(sorted(tuple(sorted((label[a], label[b]))) for a, b in edges))
        if best is None or form < best:
            best = form
    return best


def connected_graphs(n: int):
    """Connected graphs on vertices 1..n, one per isomorphism class, grown by
    attaching a new vertex to a nonempty set of old ones."""
    level = {()}
    for m in range(2, n + 1):
        grown = set()
        for edges in level:
            for size in range(1, m):
                for attach in combinations(range(1, m), size):
                    grown.add(_canonical(m, edges + tuple((v, m) for v in attach)))
        level = grown
    for edges in sorted(level):
        yield SimplicialComplex.from_facets(n, edges)


class TestValidation:
    """Tests for complex construction."""

    def test_nested_facets_rejected(self):
        """Goal: A facet inside another is an input error."""
        with pytest.raises(InputError, match="nested"):
            SimplicialComplex.from_facets(3, [[1, 2], [1, 2, 3]])

    def test_uncovered_vertex_rejected(self):
        """Goal: Every vertex must lie in some facet."""
        with pytest.raises(InputError, match="no facet"):
            SimplicialComplex.from_facets(3, [[1, 2]])

    def test_labels_out_of_range_rejected(self):
        """Goal: Labels must be in 1..n."""
        with pytest.raises(InputError):
            SimplicialComplex.from_facets(2, [[1, 3]])


class TestStanleyReisner:
    """Tests for Stanley-Reisner ideals."""

    def test_three_points(self):
        """Goal: Three points have ideal (x1x2, x1x3, x2x3)."""
        assert sr_ideal(points_complex(3)).formatted() == ["x1*x2", "x1*x3", "x2*x3"]

    def test_hollow_triangle(self):
        """Goal: The boundary of a triangle has the single nonface x1x2x3."""
        assert sr_ideal(_cycle(3)).formatted() == ["x1*x2*x3"]

    def test_rp2_has_ten_cubic_nonfaces(self):
        """Goal: The six-vertex projective plane has ten missing triangles."""
        ideal = sr_ideal(_complex(SAMPLE_RP2))
        assert len(ideal.generators) == 10
        assert all(sum(next(iter(g.keys()))) == 3 for g in ideal.generators)


class TestLinks:
    """Tests for links and local Gorensteinness."""

    def test_link_of_path_interior_vertex(self):
        """Goal: The link of vertex 2 in 1-2-3 is two points."""
        lk = link(path_complex(2), {2})
        assert lk.facets == (frozenset({1}), frozenset({3}))

    def test_link_of_facet_is_empty_complex(self):
        """Goal: The link of a facet is the complex {∅}."""
        lk = link(path_complex(2), {1, 2})
        assert lk.vertices == ()
        assert is_gorenstein_complex(lk)

    def test_link_of_nonface_rejected(self):
        """Goal: Links are only taken at faces."""
        with pytest.raises(InputError):
            link(path_complex(2), {1, 3})

    def test_rp2_is_locally_gorenstein(self):
        """Goal: Every vertex link of the projective plane is a pentagon."""
        local, links = locally_gorenstein(_complex(SAMPLE_RP2))
        assert local
        assert all(len(r.link_facets) == 5 for r in links)

    def test_star_is_not_locally_gorenstein(self):
        """Goal: The center of a star links to three points."""
        local, _ = locally_gorenstein(_complex(SAMPLE_STAR))
        assert not local


class TestOneDimensional:
    """Tests for graph classifications."""

    def test_classifications(self):
        """Goal: Paths, cycles and everything else are told apart."""
        assert classify_1dim(path_complex(3)) == ("path", True, False)
        assert classify_1dim(path_complex(1)) == ("path", True, True)
        assert classify_1dim(_cycle(5)) == ("cycle", True, True)
        assert classify_1dim(_complex(SAMPLE_STAR)) == ("other", False, False)
        assert classify_1dim(points_complex(3))[0] == "not-1-dim"

    def test_two_edge_path_is_gorenstein(self):
        """Goal: The path 1-2-3 has ring k[x1,x2,x3]/(x1x3), a hypersurface."""
        assert classify_1dim(path_complex(2)) == ("path", True, True)
        report = run_analysis({"type": "complex", "vertices": 3, "facets": [[1, 2], [2, 3]]})
        assert report.is_gorenstein
        assert report.complex.predicted_gorenstein is True

    def test_disconnected_graph_has_no_prediction(self):
        """Goal: Disconnected graphs are classified without predictions."""
        two_edges = SimplicialComplex.from_facets(4, [[1, 2], [3, 4]])
        assert classify_1dim(two_edges) == ("other", None, None)

    def test_almost_gorenstein(self):
        """Goal: Trees and cactus graphs of cycles qualify; K4 does not."""
        assert almost_gorenstein_1dim(_complex(SAMPLE_STAR))
        bowtie = SimplicialComplex.from_facets(
            5, [[1, 2], [2, 3], [1, 3], [3, 4], [4, 5], [3, 5]]
        )
        assert almost_gorenstein_1dim(bowtie)
        k4 = SimplicialComplex.from_facets(4, list(combinations(range(1, 5), 2)))
        assert not almost_gorenstein_1dim(k4)

    def test_graph_count(self):
        """Goal: There are 6 connected graphs on four vertices."""
        assert sum(1 for _ in connected_graphs(4)) == 6

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_nearly_gorenstein_iff_path_or_cycle(self, n):
        """Goal: On small graphs NG holds exactly for paths and cycles."""
        for complex_ in connected_graphs(n):
            report = run_analysis(
                {"type": "complex", "vertices": n, "facets": complex_.format()}
            )
            expected = report.complex.classification_1d in ("path", "cycle")
            assert report.is_nearly_gorenstein is expected, complex_.format()

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [6, 7])
    def test_nearly_gorenstein_iff_path_or_cycle_large(self, n):
        """Goal: The path-or-cycle characterization holds on six and seven vertices."""
        for complex_ in connected_graphs(n):
            report = run_analysis(
                {"type": "complex", "vertices": n, "facets": complex_.format()}
            )
            expected = report.complex.classification_1d in ("path", "cycle")
            assert report.is_nearly_gorenstein is expected, complex_.format()


class TestCanonicalIdeals:
    """Tests for closed-form canonical ideal generators."""

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_points(self, n):
        """Goal: x1 - xk cut n points down to a Gorenstein ring of dimension 0."""
        report = canonical_gens_known("points", n)
        assert report.verified
        assert report.quotient_dim == 0

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_paths(self, n):
        """Goal: The path generators give a Gorenstein quotient of dimension 1."""
        report = canonical_gens_known("path", n)
        assert report.verified
        assert len(report.generators) == n - 1

    @pytest.mark.parametrize("n", [2, 4, 6])
    def test_points_and_paths_are_nearly_gorenstein_and_level(self, n):
        """Goal: Points and paths are NG and level."""
        for complex_ in (points_complex(n), path_complex(n)):
            report = run_analysis(
                {
                    "type": "complex",
                    "vertices": len(complex_.vertices),
                    "facets": complex_.format(),
                }
            )
            assert report.is_nearly_gorenstein
            assert report.is_level

    def test_unknown_family_rejected(self):
        """Goal: Only points and paths have closed forms."""
        with pytest.raises(InputError):
            canonical_gens_known("cycle", 4)
