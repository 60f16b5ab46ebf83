"""
Management command to regenerate the golden tables
Run with: python manage.py tables --appendix --n 5
"""
from fractions import Fraction

from voting.apportion import dhondt, index_seats
from voting.audits import added_blocker_audit, bloc_audit, donation_audit
from voting.census import enumerate_weighted_games, integer_representation_census
from voting.formatting import decimals
from voting.games import WeightedGame, format_game, parse_game
from voting.indices import IndexKind, compute_index
from voting.management.base import PowerPolyCommand
from voting.models import PowerResult

APPENDIX_KINDS = (IndexKind.AWI, IndexKind.ARI, IndexKind.AWTI, IndexKind.ARTI)
PARADOX_KINDS = (IndexKind.BZI, IndexKind.SSI, IndexKind.MSRI, IndexKind.AWI,
                 IndexKind.ARI, IndexKind.AWTI, IndexKind.ARTI)

NATIONALRAT_PARTIES = ('SPOE', 'OEVP', 'FPOE', 'Green', 'Stronach', 'NEOS')
NATIONALRAT_VOTES = (1258605, 1125876, 962313, 582657, 268679, 232946)
NATIONALRAT_QUOTA = 2215538
NATIONALRAT_SEAT_QUOTA = 92
NATIONALRAT_HOUSE = 183

CENSUS_GAME = '[3;2,1,1]'
CENSUS_TOTALS = (100, 1000)


class Command(PowerPolyCommand):
    help = 'Regenerates the appendix, paradox, census and seat tables'
    default_format = 'csv'

    def add_run_arguments(self, parser):
        group = parser.add_mutually_exclusive_group(required=True)
        group.add_argument('--appendix', action='store_true', help='Average indices of every game on n voters')
        group.add_argument('--paradox', action='store_true', help='Bloc, donation and added-blocker examples')
        group.add_argument('--census', action='store_true', help='Integer representation census of [3;2,1,1]')
        group.add_argument('--seats', action='store_true', help='Nationalrat 2013 seat comparison')
        parser.add_argument('--n', type=int, default=5, help='Number of voters for --appendix (default: 5)')
        parser.add_argument('--workers', type=int, help='Worker processes (default: POWERPOLY_THREADS)')
        parser.add_argument('--store', action='store_true', help='Save computed power vectors in the database')
        parser.add_argument('--decimals', type=int, help='Decimal places (default: 3)')

    def run(self, manifest):
        places = self.places(manifest)
        if manifest.get('appendix'):
            rows, fields = self.appendix_rows(manifest, places)
        elif manifest.get('paradox'):
            rows, fields = self.paradox_rows(places)
        elif manifest.get('census'):
            rows, fields = self.census_rows()
        else:
            rows, fields = self.seat_rows(places)

        if manifest.output_format == 'json':
            self.write_json(rows)
        elif manifest.output_format == 'csv':
            self.write_csv(rows, fields)
        else:
            for row in rows:
                self.stdout.write('  '.join(str(row.get(name, '')) for name in fields))

    def appendix_rows(self, manifest, places):
        catalog = enumerate_weighted_games(manifest.get('n'), manifest.get('workers'))
        rows = []
        for game in catalog:
            row = {'game': format_game(game)}
            for kind in APPENDIX_KINDS:
                vector = compute_index(game, kind)
                row[kind.value] = ','.join(vector.decimals(places))
                if manifest.get('store'):
                    PowerResult.store(game, vector)
            rows.append(row)
        if manifest.get('store'):
            self.stderr.write(self.style.SUCCESS(f'Stored {len(rows) * len(APPENDIX_KINDS)} power vectors'))
        return rows, ['game', *[k.value for k in APPENDIX_KINDS]]

    def paradox_rows(self, places):
        reports = [
            bloc_audit(parse_game('[37;25,20,17,15,9,6,2,1]'), 7, 8, PARADOX_KINDS),
            donation_audit(parse_game('[13;9,4,3,2,1]'), 1, 2, 1, PARADOX_KINDS),
            added_blocker_audit(parse_game('[3;2,1,1]'), 5, PARADOX_KINDS, pair=(1, 2)),
        ]
        rows = []
        for report in reports:
            for row in report.rows(places):
                measures = {k: v for k, v in row.items()
                            if k not in ('paradox', 'index', 'before', 'after', 'before_power', 'after_power', 'flag')}
                row['measures'] = ' '.join(f'{k}={v}' for k, v in measures.items())
                rows.append(row)
        return rows, ['paradox', 'index', 'before', 'after', 'before_power', 'after_power', 'flag', 'measures']

    def census_rows(self):
        game = parse_game(CENSUS_GAME)
        rows = []
        for total in CENSUS_TOTALS:
            result = integer_representation_census(game, total)
            rows.append({
                'game': CENSUS_GAME,
                'total': total,
                'count': result.count,
                'average': ','.join(decimals(result.average, 6)),
            })
        return rows, ['game', 'total', 'count', 'average']

    def seat_rows(self, places):
        popular = WeightedGame(quota=Fraction(NATIONALRAT_QUOTA), weights=tuple(Fraction(v) for v in NATIONALRAT_VOTES))
        dhondt_seats = dhondt(NATIONALRAT_VOTES, NATIONALRAT_HOUSE, NATIONALRAT_PARTIES)
        by_index = {kind: index_seats(popular, kind, NATIONALRAT_HOUSE) for kind in (IndexKind.SSI, IndexKind.AWI)}
        rows = []
        for position, party in enumerate(NATIONALRAT_PARTIES):
            row = {'party': party, 'votes': NATIONALRAT_VOTES[position], 'seats': dhondt_seats.seats[position]}
            for kind, allocation in by_index.items():
                row[kind.value] = allocation.power.decimals(places)[position]
                row[f'{kind.value}_seats'] = allocation.seats[position]
            rows.append(row)
        quota_row = {'party': 'Quota', 'votes': NATIONALRAT_QUOTA, 'seats': NATIONALRAT_SEAT_QUOTA,
                     'ssi_seats': NATIONALRAT_SEAT_QUOTA, 'awi_seats': NATIONALRAT_SEAT_QUOTA}
        rows.append(quota_row)
        return rows, ['party', 'votes', 'seats', 'ssi', 'ssi_seats', 'awi', 'awi_seats']
