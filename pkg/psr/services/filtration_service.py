from typing import Iterable, Mapping, Optional

import numpy as np
from scipy.spatial.distance import pdist, squareform

from psr.config import RunConfig, Scale
from psr.errors import (
    EmptyCloudError,
    InvalidParameterError,
    MissingFaceValueError,
    MonotonicityError,
)
from psr.logger import get_logger
from psr.models.complex_model import SimplicialComplex
from psr.models.filtration_model import CriticalValues, Filtration, PointCloud
from psr.models.simplex import Simplex, sort_key

logger = get_logger(__name__)


def _as_simplex(face) -> Simplex:
    return face if isinstance(face, Simplex) else Simplex.of(face)


class FiltrationService:
    @staticmethod
    def from_explicit(
        values: Mapping,
        n_vertices: Optional[int] = None,
        vertex_set: Optional[Iterable[int]] = None,
    ) -> Filtration:
        """Validate an explicit face -> value map (Simplex or vertex-sequence keys) into a Filtration."""
        table = {_as_simplex(face): float(value) for face, value in values.items()}
        # closed under subfaces and monotone along inclusions
        for face in sorted(table, key=sort_key):
            for sub in face.boundary():
                if sub not in table:
                    raise MissingFaceValueError(sub)
                if table[sub] > table[face]:
                    raise MonotonicityError(sub, face, table[sub], table[face])
        if vertex_set is None:
            top = max((face.vertices[-1] for face in table), default=-1)
            vertex_set = range(max(top + 1, n_vertices or 0))
        complex = SimplicialComplex(tuple(sorted(set(vertex_set))), frozenset(table))
        return Filtration(complex, table)

    @staticmethod
    def monotone_closure(values: Mapping) -> Filtration:
        """Raise every value to the maximum over its subfaces so the result is monotone."""
        table = {_as_simplex(face): float(value) for face, value in values.items()}
        for face in sorted(table, key=sort_key):
            for sub in face.boundary():
                if sub not in table:
                    raise MissingFaceValueError(sub)
                table[face] = max(table[face], table[sub])
        return FiltrationService.from_explicit(table)

    @staticmethod
    def sublevel(filtration: Filtration, t: float) -> SimplicialComplex:
        faces = frozenset(face for face, value in filtration.values.items() if value <= t)
        return SimplicialComplex(filtration.complex.vertex_set, faces)

    @staticmethod
    def restrict(filtration: Filtration, vertices: Iterable[int]) -> Filtration:
        """Induced subcomplex filtration: the same values on faces inside `vertices`."""
        subset = tuple(sorted(set(vertices)))
        mask = 0
        for v in subset:
            mask |= 1 << v
        table = {face: value for face, value in filtration.values.items() if face.mask & ~mask == 0}
        return Filtration(SimplicialComplex(subset, frozenset(table)), table)

    @staticmethod
    def vietoris_rips(
        cloud: PointCloud,
        max_dim: int,
        max_radius: float,
        element_filter: Optional[Iterable[str]] = None,
        scale: Scale = Scale.diameter,
        precision: int = 9,
    ) -> Filtration:
        """Vietoris-Rips filtration: a simplex enters at its diameter (half of it with scale=radius)."""
        if max_dim < 0:
            raise InvalidParameterError(f"max_dim must be >= 0, got {max_dim}")
        if max_radius <= 0:
            raise InvalidParameterError(f"max_radius must be > 0, got {max_radius}")
        points = cloud.select(element_filter)
        if len(points) == 0:
            raise EmptyCloudError(
                f"No points left after filtering on {sorted(element_filter or [])}"
            )

        n = len(points)
        distances = squareform(pdist(points.coordinates)) if n > 1 else np.zeros((1, 1))
        distances = np.round(distances, precision)
        factor = 0.5 if scale == Scale.radius else 1.0
        # edges longer than twice the radius never enter
        threshold = 2 * max_radius

        values: dict[Simplex, float] = {Simplex((v,)): 0.0 for v in range(n)}
        neighbors = [
            {u for u in range(n) if u != v and distances[v, u] <= threshold} for v in range(n)
        ]
        layer: list[tuple[tuple[int, ...], float]] = [((v,), 0.0) for v in range(n)]
        # grow one dimension at a time from common neighbours
        for _ in range(max_dim):
            next_layer = []
            for vertices, diameter in layer:
                common = set.intersection(*(neighbors[v] for v in vertices))
                for u in sorted(w for w in common if w > vertices[-1]):
                    grown = max(diameter, *(float(distances[v, u]) for v in vertices))
                    next_layer.append(((*vertices, u), grown))
            for vertices, diameter in next_layer:
                values[Simplex(vertices)] = round(diameter * factor, precision)
            layer = next_layer

        logger.info(
            f"Vietoris-Rips on {n} points (max_dim={max_dim}, max_radius={max_radius}): "
            f"{len(values)} simplices"
        )
        complex = SimplicialComplex(tuple(range(n)), frozenset(values))
        return Filtration(complex, values)

    @staticmethod
    def from_config(cloud: PointCloud, config: RunConfig, max_dim: Optional[int] = None) -> Filtration:
        """Rips filtration with the radius range, scale, element filter and precision of a run."""
        max_radius = config.radius_max / 2 if config.scale == Scale.diameter else config.radius_max
        return FiltrationService.vietoris_rips(
            cloud,
            max_dim=config.max_dim if max_dim is None else max_dim,
            max_radius=max_radius,
            element_filter=config.elements,
            scale=config.scale,
            precision=config.precision,
        )

    @staticmethod
    def critical_values(filtration: Filtration, precision: int = 9) -> CriticalValues:
        """Distinct attained values; each one strictly shrinks the Stanley-Reisner ideal."""
        # rounded so near-equal distances collapse
        rounded = np.round(np.fromiter(filtration.values.values(), dtype=float), precision)
        return CriticalValues(tuple(float(v) for v in np.unique(rounded)))


filtration_service = FiltrationService()
