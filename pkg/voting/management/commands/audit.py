"""
Management command to run a voting paradox audit
Run with: python manage.py audit --kind bloc --game "[37;25,20,17,15,9,6,2,1]" --voters 7,8 --index awi
"""
from voting.audits import added_blocker_audit, bicameral_meet, bloc_audit, donation_audit
from voting.exceptions import InvalidInputError
from voting.formatting import parse_rational
from voting.games import classify_voters, format_game, parse_game
from voting.indices import IndexKind
from voting.management.base import PowerPolyCommand

AUDIT_KINDS = ('bloc', 'donation', 'meet', 'blocker')
REPORT_FIELDS = ['paradox', 'index', 'before', 'after', 'before_power', 'after_power', 'flag']


def parse_pair(text, what):
    try:
        first, second = (int(part) for part in text.split(','))
    except (AttributeError, ValueError) as exc:
        raise InvalidInputError(f'{what} must look like "i,j", got {text!r}') from exc
    return first, second


class Command(PowerPolyCommand):
    help = 'Checks a game for the bloc, donation or added-blocker paradox, or builds a bicameral meet'

    def add_run_arguments(self, parser):
        parser.add_argument('--kind', choices=AUDIT_KINDS, required=True, help='Audit to run')
        parser.add_argument('--game', type=str, required=True, help='Game as "[q;w1,...,wn]" or JSON')
        parser.add_argument('--index', action='append', choices=[k.value for k in IndexKind],
                            help='Index to audit; repeat for several (default: awi)')
        parser.add_argument('--voters', type=str, default='1,2',
                            help='Bloc members, or the pair compared by the blocker audit (default: 1,2)')
        parser.add_argument('--donor', type=int, default=1, help='Donating voter (default: 1)')
        parser.add_argument('--recipient', type=int, default=2, help='Receiving voter (default: 2)')
        parser.add_argument('--amount', type=str, default='1', help='Weight donated (default: 1)')
        parser.add_argument('--second', type=str, help='Second house for --kind meet')
        parser.add_argument('--blocker', type=str, help='Weight of the added blocker for --kind blocker')
        parser.add_argument('--decimals', type=int, help='Decimal places for rendering (default: 3)')

    def run(self, manifest):
        game = parse_game(manifest.get('game'))
        kinds = [IndexKind(k) for k in manifest.get('index', ['awi'])]
        audit = manifest.get('kind')

        if audit == 'meet':
            self._meet(manifest, game)
            return
        if audit == 'bloc':
            i, j = parse_pair(manifest.get('voters'), '--voters')
            report = bloc_audit(game, i, j, kinds)
        elif audit == 'donation':
            report = donation_audit(game, manifest.get('donor'), manifest.get('recipient'),
                                    parse_rational(manifest.get('amount')), kinds)
        else:
            if manifest.get('blocker') is None:
                raise InvalidInputError('--kind blocker needs --blocker')
            report = added_blocker_audit(game, parse_rational(manifest.get('blocker')), kinds,
                                         pair=parse_pair(manifest.get('voters'), '--voters'))

        places = self.places(manifest)
        rows = report.rows(places)
        if manifest.output_format == 'json':
            self.write_json(report.to_json())
        elif manifest.output_format == 'csv':
            extra = [name for name in rows[0] if name not in REPORT_FIELDS] if rows else []
            self.write_csv(rows, REPORT_FIELDS + extra)
        else:
            self.write_banner(f'{report.paradox} audit: {format_game(report.before)} -> {format_game(report.after)}')
            for row in rows:
                verdict = 'PARADOX' if row['flag'] else 'ok'
                measures = ' '.join(f'{k}={v}' for k, v in row.items() if k not in REPORT_FIELDS)
                line = f'{row["index"]:<6} {row["before_power"]} -> {row["after_power"]}  {verdict}  {measures}'
                self.stdout.write(self.style.WARNING(line) if row['flag'] else line)

    def _meet(self, manifest, game):
        if not manifest.get('second'):
            raise InvalidInputError('--kind meet needs --second')
        second = parse_game(manifest.get('second'))
        _, joined = bicameral_meet(game, second)
        vetoers = sorted(classify_voters(joined).vetoers)
        if manifest.output_format == 'json':
            self.write_json({'first': format_game(game), 'second': format_game(second),
                             'meet': format_game(joined), 'vetoers': vetoers})
        elif manifest.output_format == 'csv':
            self.write_csv([{'first': format_game(game), 'second': format_game(second),
                             'meet': format_game(joined)}], ['first', 'second', 'meet'])
        else:
            self.stdout.write(format_game(joined))
