import math
from collections import Counter
from dataclasses import dataclass, field

from psr.errors import InvalidParameterError
from psr.models.simplex import Simplex


@dataclass(frozen=True, order=True)
class FacetPrime:
    """The prime monomial ideal P_A = (x_i | x_i not in A) of a face A."""

    support: Simplex
    vertex_set: tuple[int, ...] = field(compare=False)

    @property
    def generators(self) -> tuple[int, ...]:
        inside = set(self.support.vertices)
        return tuple(v for v in self.vertex_set if v not in inside)

    def contains_monomial(self, support) -> bool:
        """A squarefree monomial lies in P_A iff it uses some variable outside A."""
        return any(v not in self.support.vertices for v in support)

    def __str__(self) -> str:
        return "(" + ", ".join(f"x{v}" for v in self.generators) + ")"


@dataclass(frozen=True, order=True)
class FacetInterval:
    birth: float
    death: float
    face: Simplex

    def __post_init__(self):
        if self.death < self.birth:
            raise InvalidParameterError(f"Facet interval for {self.face} dies before it is born")

    @property
    def dim(self) -> int:
        return self.face.dim

    @property
    def is_empty(self) -> bool:
        return self.death <= self.birth

    def alive_at(self, t: float) -> bool:
        return self.birth <= t < self.death


@dataclass(frozen=True)
class FacetBarcode:
    intervals: tuple[FacetInterval, ...]

    def __len__(self) -> int:
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def by_dimension(self, q: int) -> "FacetBarcode":
        return FacetBarcode(tuple(iv for iv in self.intervals if iv.dim == q))

    def alive_at(self, t: float) -> list[FacetInterval]:
        return [iv for iv in self.intervals if iv.alive_at(t)]

    def dimension_count(self, q: int, lo: float = -math.inf, hi: float = math.inf) -> int:
        """Non-empty bars of facet dimension q born inside [lo, hi]."""
        return sum(
            1 for iv in self.intervals if iv.dim == q and not iv.is_empty and lo <= iv.birth <= hi
        )

    def endpoints(self) -> Counter:
        return Counter((iv.birth, iv.death) for iv in self.intervals if not iv.is_empty)


@dataclass(frozen=True)
class FacetDiagram:
    """Off-diagonal points (birth, death) with multiplicity; death may be +inf."""

    points: dict[tuple[float, float], int] = field(hash=False)

    def as_counter(self) -> Counter:
        return Counter({point: mult for point, mult in self.points.items() if mult})

    def expanded(self) -> list[tuple[float, float]]:
        out = []
        for point in sorted(self.points):
            out.extend([point] * self.points[point])
        return out
