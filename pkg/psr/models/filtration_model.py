import math
from dataclasses import dataclass, field
from typing import Iterator, Mapping

import numpy as np

from psr.errors import InvalidParameterError
from psr.models.complex_model import SimplicialComplex
from psr.models.simplex import Simplex


@dataclass(frozen=True)
class Filtration:
    """A monotone function on the faces of ``complex``.

    Build instances through ``filtration_service.from_explicit`` or
    ``filtration_service.vietoris_rips``; both validate monotonicity.
    """

    complex: SimplicialComplex
    values: Mapping[Simplex, float] = field(hash=False)

    def __getitem__(self, face: Simplex) -> float:
        return self.values[face]

    def __iter__(self) -> Iterator[Simplex]:
        return iter(self.values)

    def ordered_faces(self) -> list[Simplex]:
        """Faces sorted by (value, dimension, lexicographic vertices)."""
        return sorted(self.values, key=lambda s: (self.values[s], s.dim, s.vertices))

    @property
    def min_value(self) -> float:
        return min(self.values.values(), default=math.inf)

    @property
    def max_value(self) -> float:
        return max(self.values.values(), default=-math.inf)


@dataclass(frozen=True)
class CriticalValues:
    values: tuple[float, ...]

    def __post_init__(self):
        if any(not math.isfinite(v) for v in self.values):
            raise InvalidParameterError("Critical values must be finite")
        if any(a >= b for a, b in zip(self.values, self.values[1:])):
            raise InvalidParameterError("Critical values must be strictly increasing")

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[float]:
        return iter(self.values)

    def midpoints(self) -> list[float]:
        """One sample strictly inside every open gap, plus one below and one above."""
        if not self.values:
            return [0.0]
        inner = [(a + b) / 2 for a, b in zip(self.values, self.values[1:])]
        return [self.values[0] - 1.0, *inner, self.values[-1] + 1.0]

    def clip(self, lo: float, hi: float) -> "CriticalValues":
        return CriticalValues(tuple(v for v in self.values if lo <= v <= hi))


@dataclass(frozen=True, eq=False)
class PointCloud:
    labels: tuple[str, ...]
    coordinates: np.ndarray

    def __post_init__(self):
        coords = np.asarray(self.coordinates, dtype=float).reshape(-1, 3)
        if coords.shape[0] != len(self.labels):
            raise InvalidParameterError(
                f"{len(self.labels)} labels for {coords.shape[0]} coordinate rows"
            )
        if not np.all(np.isfinite(coords)):
            raise InvalidParameterError("Point coordinates must be finite")
        object.__setattr__(self, "coordinates", coords)

    def __len__(self) -> int:
        return len(self.labels)

    def select(self, elements) -> "PointCloud":
        """Keep only the points whose label is in ``elements`` (None keeps all)."""
        if elements is None:
            return self
        wanted = {e.capitalize() for e in elements}
        keep = [i for i, label in enumerate(self.labels) if label.capitalize() in wanted]
        return PointCloud(tuple(self.labels[i] for i in keep), self.coordinates[keep])
