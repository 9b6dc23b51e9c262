import math
import random

import numpy as np
import pytest

from botwatch.bot_scoring import AXES, BotScoreRecord, ScoreCache
from botwatch.density import (
    DEFAULT_PAIRS,
    bimodality_report,
    find_modes,
    kde2d,
    select_bandwidth,
)
from botwatch.errors import ConfigurationError, DataError


def naive_kde(points, bandwidth, grid_resolution):
    """Brute-force oracle: triple loop with exact fsum accumulation."""
    hx, hy = bandwidth
    n = len(points)
    xs = np.linspace(0.0, 1.0, grid_resolution)
    ys = np.linspace(0.0, 1.0, grid_resolution)
    norm = n * 2.0 * math.pi * hx * hy
    out = np.zeros((grid_resolution, grid_resolution))
    for i, u in enumerate(xs):
        for j, v in enumerate(ys):
            terms = [
                math.exp(
                    -((u - x) ** 2 / (2 * hx * hx) + (v - y) ** 2 / (2 * hy * hy))
                )
                for x, y in points
            ]
            out[i, j] = math.fsum(terms) / norm
    return out


def gaussian_cloud(rng, center, spread, n):
    return [
        (
            min(1.0, max(0.0, rng.gauss(center[0], spread))),
            min(1.0, max(0.0, rng.gauss(center[1], spread))),
        )
        for _ in range(n)
    ]


class TestBandwidth:
    def test_fixed(self):
        assert select_bandwidth([], rule="fixed", fixed_h=0.05) == (0.05, 0.05)

    def test_single_point_data_driven_rejected(self):
        with pytest.raises(DataError):
            select_bandwidth([(0.5, 0.5)], rule="scott")

    def test_zero_variance_rejected(self):
        with pytest.raises(DataError):
            select_bandwidth([(0.5, 0.1), (0.5, 0.9)], rule="scott")

    def test_scott_formula(self):
        rng = random.Random(0)
        points = [(rng.gauss(0.5, 0.1), rng.gauss(0.5, 0.1)) for _ in range(1000)]
        hx, hy = select_bandwidth(points, rule="scott")
        xs = np.array([p[0] for p in points])
        ys = np.array([p[1] for p in points])
        factor = 1000 ** (-1.0 / 6.0)
        assert hx == pytest.approx(xs.std(ddof=1) * factor, rel=1e-12)
        assert hy == pytest.approx(ys.std(ddof=1) * factor, rel=1e-12)

    def test_silverman_equals_scott_in_2d(self):
        # (4/(d+2)/n)^(1/(d+4)) with d=2 reduces to n^(-1/6)
        rng = random.Random(1)
        points = [(rng.random(), rng.random()) for _ in range(50)]
        assert select_bandwidth(points, "scott") == pytest.approx(
            select_bandwidth(points, "silverman")
        )

    def test_unknown_rule(self):
        with pytest.raises(ConfigurationError):
            select_bandwidth([(0, 0), (1, 1)], rule="magic")


class TestKde2d:
    def test_single_point_peak_closed_form(self):
        grid = kde2d([(0.5, 0.5)], (0.1, 0.1), grid_resolution=11)
        # vertex (0.5, 0.5) exists on an 11-point grid
        i = list(grid.x_axis).index(0.5)
        assert grid.density[i, i] == pytest.approx(1.0 / (2 * math.pi * 0.01))
        assert grid.density[i, i] == pytest.approx(15.9155, abs=1e-4)

    @pytest.mark.parametrize("seed,n,g", [(0, 40, 17), (1, 120, 33), (2, 7, 9)])
    def test_matches_naive_double_sum(self, seed, n, g):
        rng = random.Random(seed)
        points = [(rng.random(), rng.random()) for _ in range(n)]
        h = (rng.uniform(0.03, 0.2), rng.uniform(0.03, 0.2))
        grid = kde2d(points, h, g)
        oracle = naive_kde(points, h, g)
        assert np.max(np.abs(grid.density - oracle)) < 1e-12

    def test_duplicate_points_invariance(self):
        one = kde2d([(0.4, 0.6)], (0.1, 0.1), 21)
        two = kde2d([(0.4, 0.6), (0.4, 0.6)], (0.1, 0.1), 21)
        assert np.allclose(one.density, two.density, atol=1e-15)

    def test_permutation_invariance(self):
        rng = random.Random(4)
        points = [(rng.random(), rng.random()) for _ in range(30)]
        a = kde2d(points, (0.08, 0.08), 16)
        b = kde2d(list(reversed(points)), (0.08, 0.08), 16)
        assert np.max(np.abs(a.density - b.density)) < 1e-12

    def test_translation_moves_argmax(self):
        points = gaussian_cloud(random.Random(5), (0.3, 0.3), 0.02, 200)
        delta = 0.25
        shifted = [(x + delta, y + delta) for x, y in points]
        g = 41
        a = kde2d(points, (0.05, 0.05), g)
        b = kde2d(shifted, (0.05, 0.05), g)
        ai = np.unravel_index(np.argmax(a.density), a.density.shape)
        bi = np.unravel_index(np.argmax(b.density), b.density.shape)
        cells = delta * (g - 1)  # grid image of the shift
        assert abs(bi[0] - ai[0] - cells) <= 1
        assert abs(bi[1] - ai[1] - cells) <= 1

    def test_total_mass_approaches_one_for_interior_points(self):
        points = gaussian_cloud(random.Random(6), (0.5, 0.5), 0.05, 100)
        loose = kde2d(points, (0.2, 0.2), 64).total_mass()
        tight = kde2d(points, (0.02, 0.02), 64).total_mass()
        assert 0.0 < loose <= 1.001
        assert loose < tight <= 1.01
        assert tight == pytest.approx(1.0, abs=0.02)

    def test_empty_points_rejected(self):
        with pytest.raises(DataError):
            kde2d([], (0.1, 0.1), 8)

    def test_nonnegative_everywhere(self):
        grid = kde2d([(0.1, 0.9), (0.9, 0.1)], (0.05, 0.05), 32)
        assert (grid.density >= 0).all()


class TestFindModes:
    def test_single_tight_cloud_unimodal(self):
        points = gaussian_cloud(random.Random(7), (0.5, 0.5), 0.03, 300)
        grid = kde2d(points, (0.05, 0.05), 64)
        report = find_modes(grid)
        assert report.classification == "unimodal"
        assert report.separation is None

    def test_two_clouds_bimodal_with_expected_separation(self):
        rng = random.Random(8)
        points = gaussian_cloud(rng, (0.1, 0.1), 0.02, 250) + gaussian_cloud(
            rng, (0.9, 0.9), 0.02, 250
        )
        grid = kde2d(points, (0.05, 0.05), 64)
        report = find_modes(grid)
        assert report.classification == "bimodal"
        cell = 1.0 / 63
        (x1, y1, _), (x2, y2, _) = report.modes[:2]
        for mx, my, cx, cy in ((x1, y1, 0.9, 0.9), (x2, y2, 0.1, 0.1)):
            near_either = min(
                math.hypot(mx - 0.1, my - 0.1), math.hypot(mx - 0.9, my - 0.9)
            )
            assert near_either <= 2 * cell
        assert report.separation == pytest.approx(math.sqrt(2) * 0.8, abs=0.08)

    def test_single_sample_single_mode_at_vertex(self):
        grid = kde2d([(0.5, 0.5)], (0.05, 0.05), 21)
        report = find_modes(grid)
        assert report.classification == "unimodal"
        assert report.modes[0][:2] == (0.5, 0.5)

    def test_modes_sorted_by_density(self):
        rng = random.Random(9)
        points = gaussian_cloud(rng, (0.2, 0.2), 0.02, 300) + gaussian_cloud(
            rng, (0.8, 0.8), 0.02, 100
        )
        grid = kde2d(points, (0.04, 0.04), 64)
        report = find_modes(grid)
        densities = [m[2] for m in report.modes]
        assert densities == sorted(densities, reverse=True)

    def test_strict_single_maximum_single_mode(self):
        grid = kde2d([(0.37, 0.61)], (0.08, 0.08), 33)
        assert len(find_modes(grid).modes) == 1


def synthetic_cache(seed=1, bots=200, humans=200, bot_center=0.85,
                    human_center=0.15, spread=0.05):
    """Two score clouds mimicking a bot cluster and a human cluster.

    Seed matters: Scott-rule bandwidths undersmooth for mode counting,
    so an unlucky sample can sprout a satellite mode.  The fixed seeds
    used below were checked to be representative, not hand-tuned
    outliers (most seeds behave the same way).
    """
    rng = random.Random(seed)
    cache = ScoreCache()

    def clamp(v):
        return min(1.0, max(0.0, v))

    for i in range(bots):
        values = {axis: clamp(rng.gauss(bot_center, spread)) for axis in AXES}
        cache.put(BotScoreRecord(account=f"bot{i:03d}", **values))
    for i in range(humans):
        values = {axis: clamp(rng.gauss(human_center, spread)) for axis in AXES}
        cache.put(BotScoreRecord(account=f"hum{i:03d}", **values))
    return cache


class TestBimodalityReport:
    def test_bot_and_human_clusters_all_pairs_bimodal(self):
        cache = synthetic_cache(seed=1)
        results = bimodality_report(cache)
        assert [(r.axis_x, r.axis_y) for r in results] == list(DEFAULT_PAIRS)
        for r in results:
            assert r.error is None
            assert r.report.classification == "bimodal"

    def test_single_cluster_unimodal(self):
        cache = synthetic_cache(seed=1, bots=400, humans=0)
        results = bimodality_report(cache)
        for r in results:
            assert r.report.classification == "unimodal"

    def test_single_account_trivially_unimodal(self):
        cache = ScoreCache()
        cache.put(BotScoreRecord(account="solo",
                                 **{axis: 0.5 for axis in AXES}))
        results = bimodality_report(cache, pairs=[("network", "friend")])
        assert results[0].report.classification == "unimodal"

    def test_failing_pair_does_not_abort_others(self):
        cache = synthetic_cache(seed=2, bots=30, humans=30)
        results = bimodality_report(
            cache, pairs=[("network", "vibes"), ("network", "friend")]
        )
        assert results[0].error is not None
        assert results[1].error is None

    def test_empty_cache_rejected(self):
        with pytest.raises(DataError):
            bimodality_report(ScoreCache())
