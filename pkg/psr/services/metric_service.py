import math
from typing import Iterable, Optional

import numpy as np
from joblib import Parallel, delayed
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching
from scipy.spatial.distance import directed_hausdorff

from psr.errors import InvalidComplexError, InvalidParameterError
from psr.logger import get_logger
from psr.models.complex_model import SimplicialComplex
from psr.models.facet_model import FacetDiagram
from psr.models.filtration_model import Filtration
from psr.models.metric_model import Component, ExtendedPoint, Matching, StabilityReport
from psr.services.facet_service import facet_service
from psr.services.filtration_service import filtration_service

logger = get_logger(__name__)

STABILITY_TOLERANCE = 1e-9


def _as_point(point) -> ExtendedPoint:
    return point if isinstance(point, ExtendedPoint) else ExtendedPoint(float(point[0]), float(point[1]))


def _perfect_matching(
    a: list[ExtendedPoint], b: list[ExtendedPoint], delta: float
) -> Optional[list[tuple[int, int]]]:
    """Pairs (i, j) of a delta-matching between a and b, or None if there is none."""
    # left: a + diagonal copies of b; right: b + diagonal copies of a
    m, n = len(a), len(b)
    size = m + n
    if size == 0:
        return []
    rows, cols = [], []
    for i, u in enumerate(a):
        for j, v in enumerate(b):
            if MetricService.dist_inf(u, v) <= delta:
                rows.append(i)
                cols.append(j)
        if MetricService.diagonal_distance(u) <= delta:
            rows.append(i)
            cols.append(n + i)
    for j, v in enumerate(b):
        if MetricService.diagonal_distance(v) <= delta:
            rows.append(m + j)
            cols.append(j)
        for i in range(m):
            rows.append(m + j)
            cols.append(n + i)
    graph = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(size, size))
    match = maximum_bipartite_matching(graph, perm_type="column")
    if np.any(match < 0):
        return None
    return [(i, int(match[i])) for i in range(m) if match[i] < n]


def _component_bottleneck(
    a: list[ExtendedPoint], b: list[ExtendedPoint]
) -> tuple[float, list[tuple[int, int]]]:
    candidates = {0.0}
    for u in a:
        candidates.add(MetricService.diagonal_distance(u))
        for v in b:
            candidates.add(MetricService.dist_inf(u, v))
    for v in b:
        candidates.add(MetricService.diagonal_distance(v))
    ordered = sorted(c for c in candidates if math.isfinite(c))

    best: Optional[tuple[float, list[tuple[int, int]]]] = None
    lo, hi = 0, len(ordered) - 1
    while lo <= hi:
        mid = (lo + hi) // 2
        pairs = _perfect_matching(a, b, ordered[mid])
        if pairs is not None:
            best = (ordered[mid], pairs)
            hi = mid - 1
        else:
            lo = mid + 1
    if best is None:
        return math.inf, []
    return best


def _stability_trial(filtration: Filtration, epsilon: float, seed: int) -> StabilityReport:
    rng = np.random.default_rng(seed)
    noisy = {face: value + rng.uniform(-epsilon, epsilon) for face, value in filtration.values.items()}
    perturbed = filtration_service.monotone_closure(noisy)
    return MetricService.stability_check(filtration.complex, filtration, perturbed)


class MetricService:
    @staticmethod
    def dist_inf(u: ExtendedPoint, v: ExtendedPoint) -> float:
        """Max-norm distance in the extended half-plane; +inf across components."""
        u, v = _as_point(u), _as_point(v)
        if u.component != v.component:
            return math.inf
        if u.component == Component.both_infinite:
            return 0.0
        if u.component == Component.plus_inf_death:
            return abs(u.birth - v.birth)
        if u.component == Component.minus_inf_birth:
            return abs(u.death - v.death)
        return max(abs(u.birth - v.birth), abs(u.death - v.death))

    @staticmethod
    def diagonal_distance(u: ExtendedPoint) -> float:
        u = _as_point(u)
        if u.component != Component.interior:
            return math.inf
        return (u.death - u.birth) / 2

    @staticmethod
    def bottleneck_matching(
        a: Iterable[ExtendedPoint], b: Iterable[ExtendedPoint]
    ) -> tuple[float, Matching]:
        """Bottleneck distance and an optimal matching (indices into a and b)."""
        # components never mix, so each is solved on its own
        a = [_as_point(u) for u in a]
        b = [_as_point(v) for v in b]
        distance = 0.0
        pairs: set[tuple[int, int]] = set()
        for component in Component:
            a_idx = [i for i, u in enumerate(a) if u.component == component]
            b_idx = [j for j, v in enumerate(b) if v.component == component]
            if not a_idx and not b_idx:
                continue
            part, local = _component_bottleneck([a[i] for i in a_idx], [b[j] for j in b_idx])
            distance = max(distance, part)
            pairs.update((a_idx[i], b_idx[j]) for i, j in local)
        return distance, Matching(frozenset(pairs))

    @staticmethod
    def bottleneck(a: Iterable[ExtendedPoint], b: Iterable[ExtendedPoint]) -> float:
        return MetricService.bottleneck_matching(a, b)[0]

    @staticmethod
    def hausdorff(a: Iterable[float], b: Iterable[float]) -> float:
        a = np.asarray(list(a), dtype=float).reshape(-1, 1)
        b = np.asarray(list(b), dtype=float).reshape(-1, 1)
        if a.size == 0 or b.size == 0:
            raise InvalidParameterError("Hausdorff distance needs two non-empty sets")
        # max of the two directed distances
        return float(max(directed_hausdorff(a, b)[0], directed_hausdorff(b, a)[0]))

    @staticmethod
    def sup_norm(f: Filtration, g: Filtration) -> float:
        if set(f.values) != set(g.values):
            raise InvalidComplexError("Filtrations are defined on different complexes")
        return max((abs(f[face] - g[face]) for face in f.values), default=0.0)

    @staticmethod
    def diagram_points(diagram: FacetDiagram) -> list[ExtendedPoint]:
        return [ExtendedPoint(birth, death) for birth, death in diagram.expanded()]

    @staticmethod
    def stability_check(
        complex: SimplicialComplex,
        f: Filtration,
        g: Filtration,
        tolerance: float = STABILITY_TOLERANCE,
    ) -> StabilityReport:
        """Compare d_b(dgm f, dgm g) against the sup-norm distance of f and g."""
        for h in (f, g):
            if h.complex.faces != complex.faces:
                raise InvalidComplexError("Both filtrations must live on the given complex")
        dgm_f = MetricService.diagram_points(facet_service.multiplicities(f))
        dgm_g = MetricService.diagram_points(facet_service.multiplicities(g))
        report = StabilityReport(
            MetricService.bottleneck(dgm_f, dgm_g), MetricService.sup_norm(f, g), tolerance
        )
        if not report.passed:
            logger.warning(f"Stability violated: d_b={report.bottleneck} > sup={report.sup_norm}")
        return report

    @staticmethod
    def stability_campaign(
        filtration: Filtration,
        trials: int,
        epsilon: float,
        seed: int = 0,
        threads: int = 1,
    ) -> list[StabilityReport]:
        """Random +-epsilon perturbations, re-monotonized, each checked for stability."""
        if trials < 1 or epsilon < 0:
            raise InvalidParameterError("Need trials >= 1 and epsilon >= 0")
        seeds = [int(s.generate_state(1)[0]) for s in np.random.SeedSequence(seed).spawn(trials)]
        if threads > 1:
            reports = Parallel(n_jobs=threads)(
                delayed(_stability_trial)(filtration, epsilon, s) for s in seeds
            )
        else:
            reports = [_stability_trial(filtration, epsilon, s) for s in seeds]
        failures = sum(1 for r in reports if not r.passed)
        logger.info(f"Stability campaign: {trials} trials, {failures} failures")
        return list(reports)


metric_service = MetricService()
