import math
from collections import Counter
from itertools import combinations

import numpy as np
import pytest

from psr.config import RunConfig
from psr.errors import InvalidParameterError
from psr.models.facet_model import FacetInterval
from psr.models.simplex import Simplex
from psr.services.complex_service import complex_service
from psr.services.facet_service import facet_service
from psr.services.filtration_service import filtration_service
from psr.utils.xyz_parser import parse_xyz


class TestFacetPrimes:
    def test_one_prime_per_facet(self, pyramid):
        primes = facet_service.facet_prime_decomposition(pyramid)
        assert len(primes) == 8
        by_support = {p.support.vertices: p.generators for p in primes}
        assert by_support[(0, 4)] == (1, 2, 3, 5)
        assert by_support[(0, 1, 2)] == (3, 4, 5)

    def test_intersection_is_the_stanley_reisner_ideal(self, pyramid):
        primes = facet_service.facet_prime_decomposition(pyramid)
        for size in range(pyramid.n_vertices + 1):
            for support in combinations(pyramid.vertex_set, size):
                expected = complex_service.in_stanley_reisner_ideal(pyramid, support)
                assert facet_service.in_prime_intersection(primes, support) == expected

    def test_void_complex_gives_maximal_ideal(self):
        assert facet_service.in_prime_intersection([], (0,))
        assert not facet_service.in_prime_intersection([], ())

    def test_prime_printing(self, bipyramid):
        primes = sorted(facet_service.facet_prime_decomposition(bipyramid))
        assert str(primes[0]) == "(x2, x4)"


class TestFacetBarcode:
    def test_triangle_bars(self, triangle_filtration):
        barcode = facet_service.facet_barcode(triangle_filtration)
        assert barcode.intervals == (
            FacetInterval(0.0, 1.0, Simplex((0,))),
            FacetInterval(0.0, 1.0, Simplex((1,))),
            FacetInterval(0.0, 1.0, Simplex((2,))),
            FacetInterval(1.0, math.inf, Simplex((0, 1, 2))),
        )

    def test_zero_length_bars_kept_on_request(self, triangle_filtration):
        barcode = facet_service.facet_barcode(triangle_filtration, keep_empty=True)
        assert len(barcode) == 7
        assert sum(1 for iv in barcode if iv.is_empty) == 3
        assert barcode.dimension_count(1) == 0

    def test_equilateral_point_cloud(self, fixtures_dir):
        cloud = parse_xyz(fixtures_dir / "equilateral.xyz")
        filtration = filtration_service.from_config(cloud, RunConfig())
        barcode = facet_service.facet_barcode(filtration)
        assert barcode.endpoints() == Counter({(0.0, 1.0): 3, (1.0, math.inf): 1})

    def test_bipyramid_bars(self, bipyramid_filtration):
        barcode = facet_service.facet_barcode(bipyramid_filtration)
        assert barcode.endpoints() == Counter({(0.0, 1.0): 5, (1.0, 2.0): 9, (2.0, math.inf): 6})
        assert facet_service.alive_partition(barcode, 1.5) == Counter({1: 9})
        edges = barcode.by_dimension(1)
        assert len(edges) == 9
        assert all(iv.face.dim == 1 for iv in edges)

    @pytest.mark.parametrize("t, t_prime, expected", [(0.5, 0.5, 3), (0.5, 1.5, 0), (1.5, 1.5, 1), (-1, 2, 0)])
    def test_facet_persistent_betti(self, triangle_filtration, t, t_prime, expected):
        barcode = facet_service.facet_barcode(triangle_filtration)
        assert facet_service.facet_persistent_betti(barcode, t, t_prime) == expected
        assert facet_service.module_rank_oracle(triangle_filtration, t, t_prime) == expected

    def test_window_must_be_ordered(self, triangle_filtration):
        barcode = facet_service.facet_barcode(triangle_filtration)
        with pytest.raises(InvalidParameterError):
            facet_service.facet_persistent_betti(barcode, 2, 1)
        with pytest.raises(InvalidParameterError):
            facet_service.module_map(triangle_filtration, 2, 1)

    def test_module_map_drops_dead_facets(self, triangle_filtration):
        source, target, matrix = facet_service.module_map(triangle_filtration, 0.5, 1.5)
        assert [s.vertices for s in source] == [(0,), (1,), (2,)]
        assert [s.vertices for s in target] == [(0, 1, 2)]
        assert matrix.tolist() == [[0, 0, 0]]


class TestFacetDiagram:
    def test_triangle_diagram(self, triangle_filtration):
        diagram = facet_service.multiplicities(triangle_filtration)
        assert diagram.as_counter() == Counter({(0.0, 1.0): 3, (1.0, math.inf): 1})

    def test_single_vertex(self):
        filtration = filtration_service.from_explicit({(0,): 0.5})
        assert facet_service.multiplicities(filtration).points == {(0.5, math.inf): 1}

    def test_diagram_from_barcode(self, bipyramid_filtration):
        barcode = facet_service.facet_barcode(bipyramid_filtration)
        assert facet_service.diagram_from_barcode(barcode).as_counter() == barcode.endpoints()

    def test_diagram_equals_barcode_on_random_filtrations(self, random_filtration):
        rng = np.random.default_rng(49)
        for _ in range(200):
            filtration = random_filtration(rng, int(rng.integers(1, 11)))
            barcode = facet_service.facet_barcode(filtration)
            assert facet_service.multiplicities(filtration).as_counter() == barcode.endpoints()

            samples = filtration_service.critical_values(filtration).midpoints()
            for a, t in enumerate(samples):
                for t_prime in samples[a:]:
                    assert facet_service.facet_persistent_betti(
                        barcode, t, t_prime
                    ) == facet_service.module_rank_oracle(filtration, t, t_prime)


class TestIsomerDiscrimination:
    @pytest.mark.parametrize("name, expected", [("isomer_single.xyz", 1), ("isomer_triple.xyz", 3)])
    def test_edge_facet_count_in_window(self, fixtures_dir, name, expected):
        config = RunConfig(elements="B", radius_min=1.5, radius_max=2.5)
        cloud = parse_xyz(fixtures_dir / name)
        assert len(cloud.select(config.elements)) == 9
        barcode = facet_service.facet_barcode(filtration_service.from_config(cloud, config))
        assert barcode.dimension_count(1, config.radius_min, config.radius_max) == expected


class TestRandomFacetPersistence:
    def test_alive_bars_are_the_sublevel_facets(self, random_filtration):
        rng = np.random.default_rng(71)
        for _ in range(100):
            filtration = random_filtration(rng, int(rng.integers(1, 11)))
            barcode = facet_service.facet_barcode(filtration)
            for alpha in filtration_service.critical_values(filtration).values:
                for t in (alpha - 0.25, alpha, alpha + 0.25):
                    facets = complex_service.facets(filtration_service.sublevel(filtration, t))
                    assert {iv.face for iv in barcode.alive_at(t)} == facets
                    assert len(barcode.alive_at(t)) == len(facets)

    def test_structure_maps_compose(self, random_filtration):
        rng = np.random.default_rng(72)
        for _ in range(40):
            filtration = random_filtration(rng, int(rng.integers(1, 9)))
            samples = filtration_service.critical_values(filtration).midpoints()
            for a, r in enumerate(samples):
                for b in range(a, len(samples)):
                    s = samples[b]
                    for t in samples[b:]:
                        _, _, first = facet_service.module_map(filtration, r, s)
                        _, _, second = facet_service.module_map(filtration, s, t)
                        _, _, direct = facet_service.module_map(filtration, r, t)
                        assert np.array_equal(second @ first, direct)

    def test_dimension_strata_rebuild_the_barcode(self, random_filtration):
        rng = np.random.default_rng(73)
        for _ in range(100):
            filtration = random_filtration(rng, int(rng.integers(1, 11)))
            barcode = facet_service.facet_barcode(filtration)
            strata = [barcode.by_dimension(q) for q in range(filtration.complex.dim + 1)]
            assert sum(len(stratum) for stratum in strata) == len(barcode)
            assert sum((stratum.endpoints() for stratum in strata), Counter()) == barcode.endpoints()
            for q, stratum in enumerate(strata):
                assert all(iv.dim == q for iv in stratum)
