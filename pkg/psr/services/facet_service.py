import math
from collections import Counter
from typing import Iterable, Optional

import numpy as np

from psr.errors import InvalidParameterError
from psr.logger import get_logger
from psr.models.complex_model import SimplicialComplex
from psr.models.facet_model import FacetBarcode, FacetDiagram, FacetInterval, FacetPrime
from psr.models.filtration_model import CriticalValues, Filtration
from psr.models.simplex import Simplex
from psr.services.complex_service import complex_service
from psr.services.filtration_service import filtration_service
from psr.utils.linalg import rank_mod_p

logger = get_logger(__name__)


def _check_window(t: float, t_prime: float):
    if t > t_prime:
        raise InvalidParameterError(f"Facet persistence needs t <= t', got t={t}, t'={t_prime}")


def _sublevel_facets(filtration: Filtration, t: float) -> set[Simplex]:
    return complex_service.facets(filtration_service.sublevel(filtration, t))


class FacetService:
    @staticmethod
    def facet_prime_decomposition(complex: SimplicialComplex) -> set[FacetPrime]:
        """One prime P_sigma per facet; their intersection is the Stanley-Reisner ideal."""
        return {FacetPrime(facet, complex.vertex_set) for facet in complex_service.facets(complex)}

    @staticmethod
    def in_prime_intersection(primes: Iterable[FacetPrime], support: Iterable[int]) -> bool:
        """Membership of a squarefree monomial in the intersection of the given primes."""
        support = tuple(sorted(set(support)))
        # 1 lies in no proper ideal
        if not support:
            return False
        # no primes: the void complex, whose ideal is maximal
        return all(prime.contains_monomial(support) for prime in primes)

    @staticmethod
    def facet_barcode(filtration: Filtration, keep_empty: bool = False) -> FacetBarcode:
        """Lifespan [f(sigma), d) of every facet prime, d the first codimension-1 coface value."""
        death: dict[Simplex, float] = {}
        # earliest coface per face
        for face, value in filtration.values.items():
            for sub in face.boundary():
                death[sub] = min(death.get(sub, math.inf), value)

        intervals = []
        for face in filtration.ordered_faces():
            birth = filtration[face]
            end = death.get(face, math.inf)
            # coface arrives with sigma: never minimal
            if end <= birth and not keep_empty:
                continue
            intervals.append(FacetInterval(birth, max(end, birth), face))
        intervals.sort()
        logger.debug(f"Facet barcode: {len(filtration.values)} faces, {len(intervals)} bars")
        return FacetBarcode(tuple(intervals))

    @staticmethod
    def facet_persistent_betti(barcode: FacetBarcode, t: float, t_prime: float) -> int:
        """Facet primes minimal over I(sublevel t) that stay minimal over I(sublevel t')."""
        _check_window(t, t_prime)
        return sum(1 for iv in barcode if iv.birth <= t and iv.death > t_prime)

    @staticmethod
    def module_map(
        filtration: Filtration, t: float, t_prime: float
    ) -> tuple[list[Simplex], list[Simplex], np.ndarray]:
        """The structure map V_t -> V_t' on facet-prime bases, as an explicit 0/1 matrix."""
        _check_window(t, t_prime)
        source = sorted(_sublevel_facets(filtration, t))
        target = sorted(_sublevel_facets(filtration, t_prime))
        row = {face: r for r, face in enumerate(target)}
        matrix = np.zeros((len(target), len(source)), dtype=np.int64)
        for c, face in enumerate(source):
            # still a facet at t', otherwise sent to 0
            if face in row:
                matrix[row[face], c] = 1
        return source, target, matrix

    @staticmethod
    def module_rank_oracle(filtration: Filtration, t: float, t_prime: float) -> int:
        _, _, matrix = FacetService.module_map(filtration, t, t_prime)
        return rank_mod_p(matrix, 2)

    @staticmethod
    def multiplicities(
        filtration: Filtration, critical: Optional[CriticalValues] = None
    ) -> FacetDiagram:
        """Diagram points (alpha_i, alpha_j) with multiplicities, from sublevel facet sets only."""
        if critical is None:
            critical = CriticalValues(tuple(sorted(set(filtration.values.values()))))
        alphas = list(critical.values)
        n = len(alphas)
        if n == 0:
            return FacetDiagram({})
        # one sample strictly inside each gap between critical values
        samples = critical.midpoints()
        facets = [_sublevel_facets(filtration, b) for b in samples]

        def beta(i: int, j: int) -> int:
            # i, j index samples; j == n + 1 stands for +inf
            if j > n:
                return 0
            return len(facets[i] & facets[j])

        points: dict[tuple[float, float], int] = {}
        deaths = alphas + [math.inf]
        for i in range(1, n + 1):
            for j in range(i + 1, n + 2):
                mu = beta(i, j - 1) - beta(i - 1, j - 1) - beta(i, j) + beta(i - 1, j)
                if mu < 0:
                    raise InvalidParameterError(
                        f"Negative multiplicity {mu} at ({alphas[i - 1]}, {deaths[j - 1]})"
                    )
                if mu:
                    points[(alphas[i - 1], deaths[j - 1])] = mu
        logger.debug(f"Facet diagram over {n} critical values: {sum(points.values())} points")
        return FacetDiagram(points)

    @staticmethod
    def diagram_from_barcode(barcode: FacetBarcode) -> FacetDiagram:
        return FacetDiagram(dict(barcode.endpoints()))

    @staticmethod
    def alive_partition(barcode: FacetBarcode, t: float) -> Counter:
        """Number of alive facet primes per facet dimension at t."""
        return Counter(iv.dim for iv in barcode.alive_at(t))


facet_service = FacetService()
