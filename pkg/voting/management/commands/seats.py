"""
Management command to allocate parliamentary seats
Run with: python manage.py seats --votes 1258605,1125876,962313,582657,268679,232946 --house 183
"""
from voting.apportion import dhondt, index_seats
from voting.exceptions import InvalidInputError
from voting.formatting import parse_rational, parse_vector
from voting.games import WeightedGame
from voting.indices import IndexKind
from voting.management.base import PowerPolyCommand


class Command(PowerPolyCommand):
    help = "Allocates seats by D'Hondt or in proportion to a power index"

    def add_run_arguments(self, parser):
        parser.add_argument('--votes', type=str, required=True, help='Comma-separated popular votes')
        parser.add_argument('--house', type=int, required=True, help='Number of seats')
        parser.add_argument('--method', choices=['dhondt', *[k.value for k in IndexKind]], default='dhondt',
                            help='Allocation method (default: dhondt)')
        parser.add_argument('--quota', type=str, help='Quota of the popular-vote game (needed for index methods)')
        parser.add_argument('--labels', type=str, help='Comma-separated party labels')
        parser.add_argument('--adjust', action='store_true',
                            help='Move seats at the most powerful parties until the house is filled exactly')

    def run(self, manifest):
        votes = parse_vector(manifest.get('votes'))
        labels = manifest.get('labels')
        labels = [label.strip() for label in labels.split(',')] if labels else None
        quota = parse_rational(manifest.get('quota')) if manifest.get('quota') else None

        if manifest.get('method') == 'dhondt':
            allocation = dhondt(votes, manifest.get('house'), labels, quota=quota)
        else:
            if quota is None:
                raise InvalidInputError('index methods need --quota')
            game = WeightedGame(quota=quota, weights=votes)
            allocation = index_seats(game, manifest.get('method'), manifest.get('house'),
                                     adjust=manifest.get('adjust', False), labels=labels)

        if manifest.output_format == 'json':
            self.write_json(allocation.to_json())
        elif manifest.output_format == 'csv':
            rows = [{'party': label, 'votes': str(v), 'seats': s}
                    for label, v, s in zip(allocation.labels, allocation.votes, allocation.seats)]
            self.write_csv(rows, ['party', 'votes', 'seats'])
        else:
            for label, v, s in zip(allocation.labels, allocation.votes, allocation.seats):
                self.stdout.write(f'{label:<12} {str(v):>12} {s:>5}')
            total = f'total {allocation.total_seats} of {allocation.house}'
            if allocation.total_seats != allocation.house:
                self.stdout.write(self.style.WARNING(total))
            else:
                self.stdout.write(total)
