from itertools import combinations

import numpy as np
import pytest

from psr.errors import InvalidComplexError
from psr.models.complex_model import SimplicialComplex
from psr.models.simplex import Simplex
from psr.services.complex_service import complex_service
from psr.services.hochster_service import hochster_service


class TestSimplex:
    def test_of_sorts_vertices(self):
        assert Simplex.of([3, 1, 2]).vertices == (1, 2, 3)

    def test_duplicate_vertex_rejected(self):
        with pytest.raises(InvalidComplexError):
            Simplex.of([1, 1])

    def test_empty_simplex_rejected(self):
        with pytest.raises(InvalidComplexError):
            Simplex(())

    def test_boundary_and_subfaces(self):
        triangle = Simplex((0, 1, 2))
        assert triangle.boundary() == [Simplex((0, 1)), Simplex((0, 2)), Simplex((1, 2))]
        assert len(triangle.subfaces()) == 7
        assert Simplex((4,)).boundary() == []


class TestSimplicialComplex:
    def test_closure_of_pyramid(self, pyramid):
        assert pyramid.n_vertices == 6
        assert pyramid.dim == 2
        assert pyramid.krull_dim == 3
        assert complex_service.f_vector(pyramid) == (1, 6, 10, 4)

    def test_non_hereditary_family_rejected(self):
        with pytest.raises(InvalidComplexError, match="not hereditary"):
            SimplicialComplex((0, 1), frozenset({Simplex((0, 1))}))

    def test_face_outside_vertex_set_rejected(self):
        with pytest.raises(InvalidComplexError):
            SimplicialComplex.from_facets([[0, 5]], n_vertices=3)

    def test_void_complex(self):
        void = SimplicialComplex.empty(3)
        assert void.dim == -1
        assert not void.full_vertex
        assert complex_service.f_vector(void) == (1,)

    def test_membership_accepts_vertex_lists(self, pyramid):
        assert [0, 1, 2] in pyramid
        assert [0, 1, 4] not in pyramid


class TestComplexService:
    def test_insert_face_adds_closure(self):
        complex = SimplicialComplex.empty(3)
        grown = complex_service.insert_face(complex, Simplex((0, 1, 2)))
        assert len(grown) == 7
        assert complex_service.insert_face(grown, Simplex((0, 1))) is grown

    def test_insert_face_outside_vertex_set(self):
        with pytest.raises(InvalidComplexError):
            complex_service.insert_face(SimplicialComplex.empty(2), Simplex((0, 3)))

    def test_facets_of_pyramid(self, pyramid):
        facets = {face.vertices for face in complex_service.facets(pyramid)}
        assert facets == {
            (0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3), (0, 4), (1, 4), (1, 5), (2, 5),
        }

    def test_stanley_reisner_generators_of_pyramid(self, pyramid):
        generators = [g.vertices for g in complex_service.stanley_reisner_ideal(pyramid)]
        assert generators == [
            (0, 5), (2, 4), (3, 4), (3, 5), (4, 5), (0, 1, 4), (1, 2, 5), (0, 1, 2, 3),
        ]

    def test_minimal_nonfaces_of_boundary_triangle(self):
        boundary = SimplicialComplex.from_facets([[0, 1], [0, 2], [1, 2]])
        assert complex_service.minimal_nonfaces(boundary) == {Simplex((0, 1, 2))}

    def test_ghost_vertex_is_a_generator(self):
        complex = SimplicialComplex.from_facets([[0, 1]], n_vertices=3)
        assert Simplex((2,)) in complex_service.minimal_nonfaces(complex)

    @pytest.mark.parametrize(
        "support, expected",
        [((), False), ((0, 1), False), ((0, 5), True), ((0, 1, 4), True), ((4, 5, 0), True)],
    )
    def test_ideal_membership(self, pyramid, support, expected):
        assert complex_service.in_stanley_reisner_ideal(pyramid, support) is expected

    def test_induced_subcomplex(self, pyramid):
        induced = complex_service.induced_subcomplex(pyramid, [0, 1, 4])
        assert induced.vertex_set == (0, 1, 4)
        assert {face.vertices for face in induced.by_dim[1]} == {(0, 1), (0, 4), (1, 4)}
        assert 2 not in induced.by_dim

    def test_face_ring_dimension(self, pyramid):
        assert complex_service.face_ring_dimension(pyramid, 0) == 1
        assert complex_service.face_ring_dimension(pyramid, 1) == 6
        assert complex_service.face_ring_dimension(pyramid, 2) == 16

    def test_components(self, pyramid, five_vertices):
        assert complex_service.component_count(pyramid) == 1
        assert complex_service.component_count(five_vertices) == 5

    def test_linear_strand_of_pyramid(self, pyramid):
        assert complex_service.linear_strand(pyramid) == {1: 5, 2: 6, 3: 2}

    def test_linear_strand_needs_every_vertex(self):
        complex = SimplicialComplex.from_facets([[0, 1]], n_vertices=3)
        with pytest.raises(InvalidComplexError):
            complex_service.linear_strand(complex)


def _subsets(vertices):
    for size in range(1, len(vertices) + 1):
        yield from combinations(vertices, size)


class TestRandomComplexes:
    def test_facets_and_minimal_nonfaces_match_brute_force(self, random_complex):
        rng = np.random.default_rng(31)
        for _ in range(60):
            complex = random_complex(rng, int(rng.integers(1, 11)))
            faces = {face.vertices for face in complex.faces}
            maximal = {
                face for face in faces if not any(set(face) < set(other) for other in faces)
            }
            missing = {
                support
                for support in _subsets(complex.vertex_set)
                if support not in faces
                and all(sub in faces for sub in combinations(support, len(support) - 1) if sub)
            }
            assert {f.vertices for f in complex_service.facets(complex)} == maximal
            assert {g.vertices for g in complex_service.minimal_nonfaces(complex)} == missing

    def test_induced_subcomplex_composes(self, random_complex):
        rng = np.random.default_rng(32)
        for _ in range(100):
            n = int(rng.integers(1, 9))
            complex = random_complex(rng, n)
            outer = sorted(rng.choice(n, size=int(rng.integers(0, n + 1)), replace=False).tolist())
            inner = [v for v in outer if rng.random() < 0.5]
            twice = complex_service.induced_subcomplex(
                complex_service.induced_subcomplex(complex, outer), inner
            )
            assert twice == complex_service.induced_subcomplex(complex, inner)

    def test_insert_sequences_stay_hereditary(self):
        rng = np.random.default_rng(33)
        for _ in range(50):
            n = int(rng.integers(1, 8))
            complex = SimplicialComplex.empty(n)
            inserted = []
            for _ in range(int(rng.integers(1, 8))):
                size = int(rng.integers(1, n + 1))
                simplex = Simplex.of(rng.choice(n, size=size, replace=False).tolist())
                inserted.append(simplex)
                complex = complex_service.insert_face(complex, simplex)
                for face in complex.faces:
                    assert all(sub in complex.faces for sub in face.boundary())
            assert complex.faces == {sub for simplex in inserted for sub in simplex.subfaces()}

    def test_f_vector_counts_every_face(self, random_complex):
        rng = np.random.default_rng(34)
        for _ in range(100):
            complex = random_complex(rng, int(rng.integers(1, 11)))
            f = complex_service.f_vector(complex)
            # f_{-1} is the empty face
            assert sum(f) == len(complex) + 1
            assert f[1:] == tuple(len(complex.by_dim[q]) for q in range(complex.dim + 1))

    def test_linear_strand_matches_hochster(self, random_complex):
        rng = np.random.default_rng(35)
        for _ in range(60):
            complex = random_complex(rng, int(rng.integers(1, 9)))
            table = hochster_service.hochster_table(complex)
            strand = complex_service.linear_strand(complex)
            diagonal = {i: table[(i, i + 1)] for i in range(1, complex.n_vertices) if table[(i, i + 1)]}
            assert {i: v for i, v in strand.items() if v} == diagonal
