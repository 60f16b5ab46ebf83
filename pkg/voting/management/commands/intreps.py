"""
Management command to count integer representations of a game at fixed totals
Run with: python manage.py intreps --game "[3;2,1,1]" --total 100 --total 1000
"""
from voting.census import integer_representation_census
from voting.games import parse_game
from voting.management.base import PowerPolyCommand


class Command(PowerPolyCommand):
    help = 'Counts integer weight vectors with a given total that represent the game'
    default_format = 'json'

    def add_run_arguments(self, parser):
        parser.add_argument('--game', type=str, required=True, help='Game as "[q;w1,...,wn]" or JSON')
        parser.add_argument('--total', type=int, action='append', required=True,
                            help='Total weight; repeat for several totals')
        parser.add_argument('--include-quota', action='store_true',
                            help='Count (quota, weights) pairs instead of weight vectors')
        parser.add_argument('--decimals', type=int, default=6, help='Decimal places for averages (default: 6)')

    def run(self, manifest):
        game = parse_game(manifest.get('game'))
        places = manifest.get('decimals')
        results = [
            integer_representation_census(game, total, include_quota=manifest.get('include_quota', False))
            for total in manifest.get('total')
        ]
        if manifest.output_format == 'json':
            for result in results:
                self.write_json_line(result.to_json(places))
        elif manifest.output_format == 'csv':
            rows = []
            for result in results:
                payload = result.to_json(places)
                rows.append({
                    'total': result.total,
                    'count': result.count,
                    'average': ' '.join(payload['decimal'] or []),
                })
            self.write_csv(rows, ['total', 'count', 'average'])
        else:
            for result in results:
                average = ' '.join(result.to_json(places)['decimal'] or ['-'])
                self.stdout.write(f'{result.total:>8} {result.count:>12} {average}')
