import csv
from pathlib import Path

from django.test import SimpleTestCase, tag

from voting.census import enumerate_weighted_games
from voting.games import parse_game
from voting.indices import IndexKind, compute_index

FIXTURES = Path(__file__).resolve().parent.parent / 'fixtures'


def load(name):
    with open(FIXTURES / name, newline='') as handle:
        return list(csv.DictReader(handle))


@tag('slow')
class AppendixTests(SimpleTestCase):
    """Average indices of all 117 weighted games on five voters against the published tables"""

    def assert_matches(self, rows, kinds):
        for row in rows:
            game = parse_game(row['game'])
            for kind in kinds:
                published = [float(v) for v in row[kind.value].split(',')]
                computed = compute_index(game, kind)
                with self.subTest(game=row['game'], index=kind.value):
                    for value, expected in zip(computed, published):
                        self.assertAlmostEqual(float(value), expected, delta=5e-4 + 1e-9)

    def test_published_games_form_the_catalog(self):
        catalog = enumerate_weighted_games(5)
        rows = load('appendix_average.csv')
        self.assertEqual(len(rows), 117)
        for row in rows:
            self.assertIn(parse_game(row['game']), catalog)

    def test_average_weight_and_representation(self):
        self.assert_matches(load('appendix_average.csv'), (IndexKind.AWI, IndexKind.ARI))

    def test_type_indices(self):
        self.assert_matches(load('appendix_type.csv'), (IndexKind.AWTI, IndexKind.ARTI))
