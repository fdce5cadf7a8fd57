import math

import numpy as np
import pytest

from psr.errors import InvalidComplexError, InvalidParameterError
from psr.models.metric_model import Component, ExtendedPoint, Matching
from psr.services.filtration_service import filtration_service
from psr.services.metric_service import metric_service

INF = math.inf


def _points(*pairs):
    return [ExtendedPoint(float(b), float(d)) for b, d in pairs]


def _exhaustive_bottleneck(a, b) -> float:
    """Try every partial injection of a into b; unmatched points go to the diagonal."""
    best = INF

    def visit(i: int, used: frozenset, worst: float):
        nonlocal best
        if worst >= best:
            return
        if i == len(a):
            rest = [metric_service.diagonal_distance(b[j]) for j in range(len(b)) if j not in used]
            best = min(best, max([worst, *rest]))
            return
        visit(i + 1, used, max(worst, metric_service.diagonal_distance(a[i])))
        for j in range(len(b)):
            if j not in used:
                visit(i + 1, used | {j}, max(worst, metric_service.dist_inf(a[i], b[j])))

    visit(0, frozenset(), 0.0)
    return best


def _random_diagram(rng, size: int):
    points = []
    for _ in range(size):
        birth = float(rng.integers(0, 10))
        if rng.random() < 0.2:
            points.append(ExtendedPoint(birth, INF))
        else:
            points.append(ExtendedPoint(birth, birth + float(rng.integers(0, 6))))
    return points


class TestExtendedPoint:
    @pytest.mark.parametrize(
        "pair, component",
        [
            ((0, 1), Component.interior),
            ((0, INF), Component.plus_inf_death),
            ((-INF, 2), Component.minus_inf_birth),
            ((-INF, INF), Component.both_infinite),
        ],
    )
    def test_components(self, pair, component):
        assert ExtendedPoint(*pair).component == component

    @pytest.mark.parametrize("pair", [(2, 1), (INF, INF), (math.nan, 1)])
    def test_invalid_points(self, pair):
        with pytest.raises(InvalidParameterError):
            ExtendedPoint(*pair)

    def test_matching_is_injective(self):
        with pytest.raises(InvalidParameterError):
            Matching(frozenset({(0, 1), (0, 2)}))


class TestDistances:
    def test_dist_inf(self):
        assert metric_service.dist_inf(ExtendedPoint(0, 2), ExtendedPoint(1, 5)) == 3
        assert metric_service.dist_inf(ExtendedPoint(0, INF), ExtendedPoint(1, INF)) == 1
        assert metric_service.dist_inf(ExtendedPoint(-INF, 3), ExtendedPoint(-INF, 1)) == 2
        assert metric_service.dist_inf(ExtendedPoint(-INF, INF), ExtendedPoint(-INF, INF)) == 0
        assert metric_service.dist_inf(ExtendedPoint(0, 2), ExtendedPoint(0, INF)) == INF

    def test_diagonal_distance(self):
        assert metric_service.diagonal_distance(ExtendedPoint(0, 2)) == 1
        assert metric_service.diagonal_distance(ExtendedPoint(0, INF)) == INF

    @pytest.mark.parametrize(
        "a, b, expected",
        [
            ([(0, 2)], [(0, 1)], 1),
            ([(0, 2)], [], 1),
            ([(0, INF)], [(1, INF)], 1),
            ([(0, INF)], [], INF),
            ([], [], 0),
            ([(0, 1), (0, 1)], [(0, 1)], 0.5),
        ],
    )
    def test_bottleneck_examples(self, a, b, expected):
        assert metric_service.bottleneck(_points(*a), _points(*b)) == expected

    def test_bottleneck_is_symmetric_with_matching(self):
        a, b = _points((0, 4), (1, 2)), _points((0, 5))
        distance, matching = metric_service.bottleneck_matching(a, b)
        assert distance == metric_service.bottleneck(b, a) == 1
        assert matching.pairs == frozenset({(0, 0)})

    def test_bottleneck_agrees_with_exhaustive_search(self):
        rng = np.random.default_rng(100)
        for _ in range(100):
            a = _random_diagram(rng, int(rng.integers(0, 7)))
            b = _random_diagram(rng, int(rng.integers(0, 7)))
            assert metric_service.bottleneck(a, b) == _exhaustive_bottleneck(a, b)

    @pytest.mark.parametrize("a, b, expected", [([0, 2], [1], 1), ([0], [5], 5), ([0, 1], [0, 1], 0)])
    def test_hausdorff(self, a, b, expected):
        assert metric_service.hausdorff(a, b) == expected

    def test_hausdorff_needs_points(self):
        with pytest.raises(InvalidParameterError):
            metric_service.hausdorff([], [1.0])


class TestStability:
    def test_sup_norm_needs_same_complex(self, triangle_filtration):
        other = filtration_service.from_explicit({(0,): 0, (1,): 0})
        with pytest.raises(InvalidComplexError):
            metric_service.sup_norm(triangle_filtration, other)

    def test_constant_shift_is_tight(self, bipyramid_filtration):
        shifted = filtration_service.from_explicit(
            {face: value + 0.25 for face, value in bipyramid_filtration.values.items()}
        )
        report = metric_service.stability_check(bipyramid_filtration.complex, bipyramid_filtration, shifted)
        assert report.bottleneck == pytest.approx(0.25)
        assert report.sup_norm == pytest.approx(0.25)
        assert report.passed

    def test_random_perturbations(self, random_filtration):
        rng = np.random.default_rng(1000)
        reports = []
        for trial in range(20):
            filtration = random_filtration(rng, int(rng.integers(1, 11)))
            reports.extend(metric_service.stability_campaign(filtration, 50, 0.75, seed=trial))
        assert len(reports) == 1000
        assert all(report.passed for report in reports)

    def test_campaign_is_reproducible(self, bipyramid_filtration):
        first = metric_service.stability_campaign(bipyramid_filtration, 5, 0.3, seed=9)
        second = metric_service.stability_campaign(bipyramid_filtration, 5, 0.3, seed=9, threads=2)
        assert first == second

    def test_campaign_parameters(self, bipyramid_filtration):
        with pytest.raises(InvalidParameterError):
            metric_service.stability_campaign(bipyramid_filtration, 0, 0.1)


class TestMetricAxioms:
    def test_dist_inf_triangle_inequality(self):
        rng = np.random.default_rng(81)
        pool = [ExtendedPoint(-INF, INF), *_random_diagram(rng, 30)]
        pool += [ExtendedPoint(-INF, float(d)) for d in rng.integers(0, 10, size=5)]
        for _ in range(2000):
            u, v, w = (pool[int(k)] for k in rng.integers(0, len(pool), size=3))
            assert metric_service.dist_inf(u, w) <= metric_service.dist_inf(u, v) + metric_service.dist_inf(v, w)
            assert metric_service.dist_inf(u, v) == metric_service.dist_inf(v, u)

    def test_bottleneck_symmetry_and_triangle_inequality(self):
        rng = np.random.default_rng(82)
        for _ in range(150):
            a, b, c = (_random_diagram(rng, int(rng.integers(0, 6))) for _ in range(3))
            ab = metric_service.bottleneck(a, b)
            assert ab == metric_service.bottleneck(b, a)
            assert metric_service.bottleneck(a, c) <= ab + metric_service.bottleneck(b, c)
            assert metric_service.bottleneck(a, a) == 0

    def test_hausdorff_to_a_superset(self):
        rng = np.random.default_rng(83)
        for _ in range(200):
            a = rng.uniform(0, 10, size=int(rng.integers(1, 8))).tolist()
            b = rng.uniform(0, 10, size=int(rng.integers(1, 8))).tolist()
            assert metric_service.hausdorff(a, a + b) <= metric_service.hausdorff(a, b)
            assert metric_service.hausdorff(a, b) == metric_service.hausdorff(b, a)
