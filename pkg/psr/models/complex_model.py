from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

from psr.errors import InvalidComplexError
from psr.models.simplex import Simplex, sort_key


@dataclass(frozen=True)
class SimplicialComplex:
    """A finite abstract simplicial complex on an ordered vertex set.

    The empty face is implicit. A complex is *full-vertex* when every vertex of
    ``vertex_set`` is a face; sublevel complexes of a filtration need not be.
    """

    vertex_set: tuple[int, ...]
    faces: frozenset[Simplex]

    def __post_init__(self):
        if any(a >= b for a, b in zip(self.vertex_set, self.vertex_set[1:])):
            raise InvalidComplexError("vertex_set must be strictly increasing")
        allowed = set(self.vertex_set)
        for face in self.faces:
            outside = [v for v in face.vertices if v not in allowed]
            if outside:
                raise InvalidComplexError(
                    f"Face {face} uses vertex {outside[0]} outside the vertex set"
                )
            for sub in face.boundary():
                if sub not in self.faces:
                    raise InvalidComplexError(
                        f"Complex is not hereditary: {face} is a face but {sub} is not"
                    )

    @classmethod
    def empty(cls, n_vertices: int) -> "SimplicialComplex":
        return cls(tuple(range(n_vertices)), frozenset())

    @classmethod
    def from_facets(
        cls,
        facets: Iterable[Iterable[int]],
        n_vertices: Optional[int] = None,
        vertex_set: Optional[Iterable[int]] = None,
    ) -> "SimplicialComplex":
        """Hereditary closure of the given faces.

        Without an explicit vertex set the complex lives on 0..n-1 where n is
        ``n_vertices`` or one more than the largest vertex id used.
        """
        simplices = [Simplex.of(f) for f in facets]
        if vertex_set is not None:
            vertices = tuple(sorted(set(vertex_set)))
        else:
            if n_vertices is None:
                n_vertices = 1 + max((s.vertices[-1] for s in simplices), default=-1)
            vertices = tuple(range(n_vertices))
        allowed = set(vertices)
        closed: set[Simplex] = set()
        for simplex in simplices:
            outside = [v for v in simplex.vertices if v not in allowed]
            if outside:
                raise InvalidComplexError(
                    f"Face {simplex} uses vertex {outside[0]} outside the vertex set"
                )
            if simplex in closed:
                continue
            closed.update(simplex.subfaces())
        return cls(vertices, frozenset(closed))

    @cached_property
    def by_dim(self) -> dict[int, list[Simplex]]:
        index: dict[int, list[Simplex]] = {}
        for face in sorted(self.faces, key=sort_key):
            index.setdefault(face.dim, []).append(face)
        return index

    @cached_property
    def dim(self) -> int:
        return max(self.by_dim, default=-1)

    @property
    def krull_dim(self) -> int:
        return self.dim + 1

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_set)

    @cached_property
    def full_vertex(self) -> bool:
        return all(Simplex((v,)) in self.faces for v in self.vertex_set)

    def __contains__(self, item) -> bool:
        if not isinstance(item, Simplex):
            item = Simplex.of(item)
        return item in self.faces

    def __len__(self) -> int:
        return len(self.faces)
