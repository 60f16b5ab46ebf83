"""
Management command to compute Euclidean distances between power indices
Run with: python manage.py distances --n 5 --format csv
"""
from voting.audits import DISTANCE_KINDS, distance_study
from voting.indices import IndexKind
from voting.management.base import PowerPolyCommand


class Command(PowerPolyCommand):
    help = 'Distances between power indices over every weighted game up to n voters'
    default_format = 'csv'

    def add_run_arguments(self, parser):
        parser.add_argument('--n', type=int, default=5, help='Largest number of voters (default: 5)')
        parser.add_argument('--index', action='append', choices=[k.value for k in IndexKind],
                            help='Index to include; repeat (default: bzi ssi awi ari awti arti)')
        parser.add_argument('--summary', action='store_true', help='Print the quantile summary instead of rows')
        parser.add_argument('--workers', type=int, help='Worker processes (default: POWERPOLY_THREADS)')

    def run(self, manifest):
        kinds = [IndexKind(k) for k in manifest.get('index', [k.value for k in DISTANCE_KINDS])]
        table = distance_study(manifest.get('n'), kinds, manifest.get('workers'))

        if manifest.output_format == 'json':
            self.write_json({
                'rows': table.rows.to_dict(orient='records'),
                'summary': table.summary.to_dict(orient='records'),
            })
        elif manifest.output_format == 'csv':
            self.stdout.write(table.summary_csv() if manifest.get('summary') else table.rows_csv(), ending='')
        else:
            self.write_banner(f'Index distances, games up to {manifest.get("n")} voters')
            self.stdout.write(table.summary.to_string(index=False, float_format=lambda v: f'{v:.4f}'))
