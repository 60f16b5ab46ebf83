"""
Management command to list every weighted game on n voters
Run with: python manage.py census --n 4
"""
from voting.census import enumerate_weighted_games
from voting.games import classify_voters, desirability, format_game
from voting.management.base import PowerPolyCommand
from voting.models import CatalogGame


class Command(PowerPolyCommand):
    help = 'Enumerates weighted games on n voters in minimum-sum form, one per line'

    def add_run_arguments(self, parser):
        parser.add_argument('--n', type=int, required=True, help='Number of voters (dummies included)')
        parser.add_argument('--workers', type=int, help='Worker processes (default: POWERPOLY_THREADS)')
        parser.add_argument('--store', action='store_true', help='Save the catalog in the database')

    def run(self, manifest):
        catalog = enumerate_weighted_games(manifest.get('n'), manifest.get('workers'))

        if manifest.output_format == 'json':
            self.write_json({'n': catalog.n, 'count': len(catalog),
                             'games': [format_game(g) for g in catalog]})
        elif manifest.output_format == 'csv':
            rows = []
            for game in catalog:
                rows.append({
                    'n': game.n,
                    'game': format_game(game),
                    'classes': desirability(game).partition.t,
                    'dummies': len(classify_voters(game).dummies),
                })
            self.write_csv(rows, ['n', 'game', 'classes', 'dummies'])
        else:
            for game in catalog:
                self.stdout.write(format_game(game))

        if manifest.get('store'):
            for game in catalog:
                CatalogGame.store(game)
            self.stderr.write(self.style.SUCCESS(f'Stored {len(catalog)} games on {catalog.n} voters'))
