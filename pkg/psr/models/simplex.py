from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from psr.errors import InvalidComplexError


@dataclass(frozen=True, order=True)
class Simplex:
    vertices: tuple[int, ...]

    def __post_init__(self):
        if not self.vertices:
            raise InvalidComplexError("A simplex needs at least one vertex")
        if any(v < 0 for v in self.vertices):
            raise InvalidComplexError(f"Negative vertex id in {list(self.vertices)}")
        if any(a >= b for a, b in zip(self.vertices, self.vertices[1:])):
            raise InvalidComplexError(
                f"Simplex vertices must be strictly increasing, got {list(self.vertices)}"
            )

    @classmethod
    def of(cls, vertices: Iterable[int]) -> "Simplex":
        """Build a simplex from vertex ids in any order; duplicates are rejected."""
        ordered = tuple(sorted(int(v) for v in vertices))
        if len(set(ordered)) != len(ordered):
            raise InvalidComplexError(f"Duplicate vertex in {list(ordered)}")
        return cls(ordered)

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    @property
    def mask(self) -> int:
        bits = 0
        for v in self.vertices:
            bits |= 1 << v
        return bits

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def boundary(self) -> list["Simplex"]:
        """Codimension-1 faces, in lexicographic order."""
        if len(self.vertices) == 1:
            return []
        return [Simplex(sub) for sub in combinations(self.vertices, len(self.vertices) - 1)]

    def subfaces(self) -> list["Simplex"]:
        """All non-empty subsets, the simplex itself included."""
        return [
            Simplex(sub)
            for size in range(1, len(self.vertices) + 1)
            for sub in combinations(self.vertices, size)
        ]

    def __str__(self) -> str:
        return "{" + ",".join(str(v) for v in self.vertices) + "}"


def sort_key(simplex: Simplex) -> tuple[int, tuple[int, ...]]:
    return (simplex.dim, simplex.vertices)
