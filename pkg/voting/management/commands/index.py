"""
Management command to compute a power index of a weighted game
Run with: python manage.py index --game "[3;2,1,1]" --kind awi
"""
from voting.formatting import vector_text
from voting.games import format_game, parse_game
from voting.indices import IndexKind, compute_index
from voting.management.base import PowerPolyCommand
from voting.models import PowerResult
from voting.sampler import ChainConfig, hit_and_run_chains


class Command(PowerPolyCommand):
    help = 'Computes an exact power index (or a hit-and-run estimate with --mc)'

    def add_run_arguments(self, parser):
        parser.add_argument('--game', type=str, required=True, help='Game as "[q;w1,...,wn]" or JSON')
        parser.add_argument('--kind', choices=[k.value for k in IndexKind], default='awi',
                            help='Index to compute (default: awi)')
        parser.add_argument('--decimals', type=int, help='Decimal places for rendering (default: 3)')
        parser.add_argument('--mc', action='store_true', help='Estimate by hit-and-run instead of exact integration')
        parser.add_argument('--samples', type=int, help='Samples per chain (default: 100000)')
        parser.add_argument('--seed', type=int, default=1, help='Seed of the first chain (default: 1)')
        parser.add_argument('--burn-in', type=int, help='Discarded leading steps (default: 1000)')
        parser.add_argument('--chains', type=int, default=1, help='Independent chains (default: 1)')
        parser.add_argument('--store', action='store_true', help='Save the exact result in the database')

    def run(self, manifest):
        game = parse_game(manifest.get('game'))
        kind = IndexKind(manifest.get('kind'))
        if manifest.get('mc'):
            self._estimate(manifest, game, kind)
            return

        vector = compute_index(game, kind)
        places = self.places(manifest)
        if manifest.output_format == 'json':
            self.write_json(vector.to_json(game, places))
        elif manifest.output_format == 'csv':
            rows = [
                {'voter': voter, 'power': str(exact), 'decimal': text}
                for voter, (exact, text) in enumerate(zip(vector, vector.decimals(places)), start=1)
            ]
            self.write_csv(rows, ['voter', 'power', 'decimal'])
        else:
            self.stdout.write(vector_text(vector.entries))
            if vector.average is not None:
                self.stdout.write(f'quota_bar {vector.average.quota_bar}')

        if manifest.get('store'):
            PowerResult.store(game, vector)
            self.stderr.write(self.style.SUCCESS(f'Stored {kind.label} of {format_game(game)}'))

    def _estimate(self, manifest, game, kind):
        config = ChainConfig.from_settings(
            seed=manifest.get('seed', 1),
            samples=manifest.get('samples'),
            burn_in=manifest.get('burn_in'),
        )
        estimate = hit_and_run_chains(game, kind, config, chains=manifest.get('chains', 1))
        payload = estimate.to_json()
        if manifest.output_format == 'json':
            self.write_json({'game': format_game(game), **payload})
        elif manifest.output_format == 'csv':
            rows = [
                {'voter': voter, 'estimate': f'{mean:.6f}', 'stderr': f'{err:.6f}'}
                for voter, (mean, err) in enumerate(zip(estimate.mean, estimate.stderr), start=1)
            ]
            self.write_csv(rows, ['voter', 'estimate', 'stderr'])
        else:
            self.stdout.write('estimate ' + ' '.join(f'{m:.4f}' for m in estimate.mean))
            self.stdout.write('stderr   ' + ' '.join(f'{s:.4f}' for s in estimate.stderr))
            self.stdout.write(f'samples  {estimate.samples}')
