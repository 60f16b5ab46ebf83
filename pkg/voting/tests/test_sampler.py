from fractions import Fraction

import numpy as np
from django.test import SimpleTestCase, override_settings, tag

from voting.census import catalog_up_to
from voting.exceptions import DegeneratePolytopeError, InvalidInputError
from voting.games import format_game, parse_game
from voting.indices import IndexKind, average_polytope, compute_index
from voting.sampler import (
    ChainConfig,
    _rounding_transform,
    chebyshev_center,
    hit_and_run_chains,
    hit_and_run_estimate,
)


class ChainConfigTests(SimpleTestCase):

    def test_validation(self):
        for bad in ({'samples': 0}, {'burn_in': -1}, {'thinning': 0}):
            with self.subTest(**bad):
                with self.assertRaises(InvalidInputError):
                    ChainConfig(**bad)

    @override_settings(POWERPOLY_MC_SAMPLES=500, POWERPOLY_MC_BURN_IN=10)
    def test_from_settings(self):
        config = ChainConfig.from_settings(seed=7, thinning=None)
        self.assertEqual(config, ChainConfig(seed=7, burn_in=10, thinning=1, samples=500))
        self.assertEqual(ChainConfig.from_settings(samples=20).samples, 20)


class ChebyshevCenterTests(SimpleTestCase):

    def test_center_of_representation_interval(self):
        polytope, _ = average_polytope(parse_game('[1;1]'), IndexKind.ARI)
        ball = chebyshev_center(polytope)
        self.assertEqual(ball.center, (Fraction(1, 2),))

    def test_single_point_reports_the_point(self):
        polytope, _ = average_polytope(parse_game('[2;1,1]'), IndexKind.AWTI)
        with self.assertRaises(DegeneratePolytopeError) as ctx:
            chebyshev_center(polytope)
        self.assertEqual(ctx.exception.point, (Fraction(1, 2), Fraction(1, 2)))


class HitAndRunTests(SimpleTestCase):

    def test_estimate_close_to_exact_centroid(self):
        game = parse_game('[3;2,1,1]')
        estimate = hit_and_run_estimate(game, IndexKind.AWI, ChainConfig(seed=1, samples=100000))
        exact = compute_index(game, IndexKind.AWI)
        self.assertEqual(estimate.samples, 100000)
        self.assertIsNone(estimate.quota)
        for mean, value in zip(estimate.mean, exact):
            self.assertAlmostEqual(mean, float(value), delta=0.01)
        self.assertAlmostEqual(sum(estimate.mean), 1.0, places=9)

    def test_representation_estimate_has_quota(self):
        game = parse_game('[3;2,1,1]')
        estimate = hit_and_run_estimate(game, 'ari', ChainConfig(seed=3, samples=50000))
        exact = compute_index(game, IndexKind.ARI)
        self.assertAlmostEqual(estimate.quota, float(exact.average.quota_bar), delta=0.02)
        self.assertAlmostEqual(estimate.mean[0], float(exact.power(1)), delta=0.02)
        self.assertGreater(estimate.quota_stderr, 0)

    def test_same_seed_same_chain(self):
        game = parse_game('[5;3,2,2,1]')
        config = ChainConfig(seed=11, burn_in=50, samples=2000)
        self.assertEqual(hit_and_run_estimate(game, 'awi', config), hit_and_run_estimate(game, 'awi', config))

    def test_different_seeds_differ(self):
        game = parse_game('[5;3,2,2,1]')
        first = hit_and_run_estimate(game, 'awi', ChainConfig(seed=1, samples=500))
        second = hit_and_run_estimate(game, 'awi', ChainConfig(seed=2, samples=500))
        self.assertNotEqual(first.mean, second.mean)

    def test_thinning_keeps_requested_samples(self):
        estimate = hit_and_run_estimate(parse_game('[2;1,1,1]'), 'awi', ChainConfig(samples=300, thinning=3))
        self.assertEqual(estimate.samples, 300)

    def test_dummy_weight_stays_zero(self):
        estimate = hit_and_run_estimate(parse_game('[51;47,46,5,2]'), 'awi', ChainConfig(samples=2000))
        self.assertEqual(estimate.mean[3], 0.0)
        self.assertEqual(estimate.stderr[3], 0.0)

    def test_single_point_polytope(self):
        estimate = hit_and_run_estimate(parse_game('[2;1,1]'), 'awti', ChainConfig(samples=10))
        self.assertEqual(estimate.mean, (0.5, 0.5))
        self.assertEqual(estimate.stderr, (0.0, 0.0))

    def test_classical_index_has_no_polytope(self):
        with self.assertRaises(InvalidInputError):
            hit_and_run_estimate(parse_game('[3;2,1,1]'), 'ssi')

    def test_chains_are_merged(self):
        game = parse_game('[2;1,1,1]')
        merged = hit_and_run_chains(game, 'awi', ChainConfig(seed=5, samples=5000), chains=3)
        self.assertEqual(merged.samples, 15000)
        for mean in merged.mean:
            self.assertAlmostEqual(mean, 1 / 3, delta=0.02)
        with self.assertRaises(InvalidInputError):
            hit_and_run_chains(game, 'awi', chains=0)

    def test_to_json(self):
        estimate = hit_and_run_estimate(parse_game('[2;1,1]'), 'awti', ChainConfig(samples=10))
        self.assertEqual(estimate.to_json(), {
            'index': 'awti',
            'estimate': [0.5, 0.5],
            'stderr': [0.0, 0.0],
            'samples': 10,
            'reprojections': 0,
        })

    @tag('slow')
    def test_five_voter_representation_polytope(self):
        game = parse_game('[5;3,2,2,2,1]')
        estimate = hit_and_run_chains(game, 'ari', ChainConfig(seed=1, samples=100000), chains=2)
        exact = compute_index(game, IndexKind.ARI)
        for mean, value in zip(estimate.mean, exact):
            self.assertAlmostEqual(mean, float(value), delta=0.01)

    @tag('slow')
    def test_elongated_representation_polytope(self):
        game = parse_game('[5;2,2,1,1]')
        estimate = hit_and_run_estimate(game, 'ari', ChainConfig(seed=1, samples=100000))
        exact = compute_index(game, IndexKind.ARI)
        for mean, value in zip(estimate.mean, exact):
            self.assertAlmostEqual(mean, float(value), delta=0.01)

    @tag('slow')
    def test_catalog_estimates_within_a_hundredth(self):
        for game in catalog_up_to(4):
            for kind in (IndexKind.AWI, IndexKind.ARI):
                estimate = hit_and_run_estimate(game, kind, ChainConfig(seed=1, samples=100000))
                exact = compute_index(game, kind)
                with self.subTest(game=format_game(game), kind=kind.value):
                    for mean, value in zip(estimate.mean, exact):
                        self.assertAlmostEqual(mean, float(value), delta=0.01)


class RoundingTests(SimpleTestCase):

    def test_thin_box_is_stretched_along_its_long_side(self):
        # |x| <= 50, |y| <= 1/2
        A = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]])
        b = np.array([50.0, 50.0, 0.5, 0.5])
        transform = _rounding_transform(A, b, np.random.default_rng(1))
        self.assertEqual(transform[0, 1], 0.0)
        self.assertGreater(transform[0, 0] / transform[1, 1], 10)

    def test_rounding_is_seeded(self):
        A = np.array([[1.0, 1.0], [-1.0, 0.0], [0.0, -1.0]])
        b = np.array([1.0, 0.25, 0.25])
        first = _rounding_transform(A, b, np.random.default_rng(4))
        second = _rounding_transform(A, b, np.random.default_rng(4))
        np.testing.assert_array_equal(first, second)
