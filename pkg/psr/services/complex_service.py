from itertools import combinations
from math import comb
from typing import Iterable

import networkx as nx

from psr.errors import InvalidComplexError
from psr.logger import get_logger
from psr.models.complex_model import SimplicialComplex
from psr.models.simplex import Simplex

logger = get_logger(__name__)


class ComplexService:
    @staticmethod
    def insert_face(complex: SimplicialComplex, simplex: Simplex) -> SimplicialComplex:
        """Return a new complex containing simplex and all its non-empty subsets."""
        allowed = set(complex.vertex_set)
        outside = [v for v in simplex.vertices if v not in allowed]
        if outside:
            raise InvalidComplexError(
                f"Vertex {outside[0]} of {simplex} is outside the vertex set {list(complex.vertex_set)}"
            )
        if simplex in complex.faces:
            return complex
        # hereditary: every subface comes along
        return SimplicialComplex(complex.vertex_set, complex.faces | frozenset(simplex.subfaces()))

    @staticmethod
    def is_facet(complex: SimplicialComplex, face: Simplex) -> bool:
        """A face is a facet when none of its codimension-1 cofaces is a face."""
        members = set(face.vertices)
        for v in complex.vertex_set:
            if v in members:
                continue
            if Simplex.of((*face.vertices, v)) in complex.faces:
                return False
        return True

    @staticmethod
    def facets(complex: SimplicialComplex) -> set[Simplex]:
        return {face for face in complex.faces if ComplexService.is_facet(complex, face)}

    @staticmethod
    def minimal_nonfaces(complex: SimplicialComplex) -> set[Simplex]:
        """Minimal non-faces; their monomials generate the Stanley-Reisner ideal."""
        result: set[Simplex] = set()
        # every minimal non-face is a face (or the empty face) plus one vertex
        candidates: set[Simplex] = {Simplex((v,)) for v in complex.vertex_set}
        for face in complex.faces:
            members = set(face.vertices)
            for v in complex.vertex_set:
                if v not in members:
                    candidates.add(Simplex.of((*face.vertices, v)))
        for candidate in candidates:
            if candidate in complex.faces:
                continue
            # minimal: all proper faces present
            if all(sub in complex.faces for sub in candidate.boundary()):
                result.add(candidate)
        return result

    @staticmethod
    def stanley_reisner_ideal(complex: SimplicialComplex) -> list[Simplex]:
        """Supports of the minimal monomial generators, by degree then lexicographically."""
        return sorted(ComplexService.minimal_nonfaces(complex), key=lambda s: (len(s), s.vertices))

    @staticmethod
    def in_stanley_reisner_ideal(complex: SimplicialComplex, support: Iterable[int]) -> bool:
        """Whether the squarefree monomial with this support lies in I(complex)."""
        support = tuple(sorted(set(support)))
        if not support:
            return False
        return Simplex(support) not in complex.faces

    @staticmethod
    def induced_subcomplex(complex: SimplicialComplex, vertices: Iterable[int]) -> SimplicialComplex:
        subset = tuple(sorted(set(vertices)))
        outside = [v for v in subset if v not in set(complex.vertex_set)]
        if outside:
            raise InvalidComplexError(f"Vertex {outside[0]} is outside the vertex set")
        mask = 0
        for v in subset:
            mask |= 1 << v
        # faces whose vertices all lie in the subset
        faces = frozenset(face for face in complex.faces if face.mask & ~mask == 0)
        return SimplicialComplex(subset, faces)

    @staticmethod
    def f_vector(complex: SimplicialComplex) -> tuple[int, ...]:
        """(f_{-1}, f_0, ..., f_{d-1}) with f_{-1} = 1 for the implicit empty face."""
        return (1, *(len(complex.by_dim.get(k, [])) for k in range(complex.dim + 1)))

    @staticmethod
    def face_ring_dimension(complex: SimplicialComplex, degree: int) -> int:
        """dim_k of the degree-`degree` part of k[complex]."""
        if degree == 0:
            return 1
        # a face with s vertices supports C(degree - 1, s - 1) monomials
        return sum(
            len(faces) * comb(degree - 1, dim)
            for dim, faces in complex.by_dim.items()
            if dim + 1 <= degree
        )

    @staticmethod
    def component_count(complex: SimplicialComplex) -> int:
        graph = nx.Graph()
        graph.add_nodes_from(face.vertices[0] for face in complex.by_dim.get(0, []))
        graph.add_edges_from(face.vertices for face in complex.by_dim.get(1, []))
        return nx.number_connected_components(graph)

    @staticmethod
    def linear_strand(complex: SimplicialComplex) -> dict[int, int]:
        """beta_{i,i+1} = sum over |W| = i+1 of (components of Delta_W) - 1, from the 1-skeleton alone."""
        if not complex.full_vertex:
            raise InvalidComplexError("The linear strand formula needs every vertex to be a face")
        graph = nx.Graph()
        graph.add_nodes_from(complex.vertex_set)
        graph.add_edges_from(face.vertices for face in complex.by_dim.get(1, []))
        strand: dict[int, int] = {}
        for size in range(2, complex.n_vertices + 1):
            total = 0
            for subset in combinations(complex.vertex_set, size):
                total += nx.number_connected_components(graph.subgraph(subset)) - 1
            if total:
                strand[size - 1] = total
        logger.debug(f"Linear strand over {complex.n_vertices} vertices: {strand}")
        return strand


complex_service = ComplexService()
