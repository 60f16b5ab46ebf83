"""
Management command to design a game whose power matches a target vector
Run with: python manage.py inverse --target 0.5,0.3,0.2 --index awi --step 1/100
"""
from voting.apportion import inverse_design
from voting.formatting import decimals, parse_rational, parse_vector
from voting.games import format_game
from voting.indices import IndexKind
from voting.management.base import PowerPolyCommand


class Command(PowerPolyCommand):
    help = 'Grid search over quotas for the game whose index is closest to a target distribution'

    def add_run_arguments(self, parser):
        parser.add_argument('--target', type=str, required=True, help='Comma-separated target power vector')
        parser.add_argument('--index', choices=[k.value for k in IndexKind], default='awi',
                            help='Index to match (default: awi)')
        parser.add_argument('--step', type=str, default='1/100', help='Quota grid step (default: 1/100)')
        parser.add_argument('--workers', type=int, help='Worker processes (default: POWERPOLY_THREADS)')

    def run(self, manifest):
        design = inverse_design(
            parse_vector(manifest.get('target')),
            manifest.get('index'),
            parse_rational(manifest.get('step')),
            manifest.get('workers'),
        )
        if manifest.output_format == 'json':
            self.write_json(design.to_json())
        elif manifest.output_format == 'csv':
            self.write_csv([{'quota': str(design.quota), 'game': format_game(design.game),
                             'objective': str(design.objective)}], ['quota', 'game', 'objective'])
        else:
            self.stdout.write(f'game      {format_game(design.game)}')
            self.stdout.write(f'power     {" ".join(decimals(design.power, self.places(manifest)))}')
            self.stdout.write(f'objective {float(design.objective):.6g} ({design.candidates} quotas scanned)')
