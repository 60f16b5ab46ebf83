"""
Management command to run hit-and-run chains on an average-index polytope
Run with: python manage.py sample --game "[5;3,2,2,2,1]" --kind ari --chains 4
"""
from voting.games import format_game, parse_game
from voting.indices import AVERAGE_KINDS
from voting.management.base import PowerPolyCommand
from voting.sampler import ChainConfig, hit_and_run_chains


class Command(PowerPolyCommand):
    help = 'Estimates an average index by hit-and-run sampling'
    default_format = 'json'

    def add_run_arguments(self, parser):
        parser.add_argument('--game', type=str, required=True, help='Game as "[q;w1,...,wn]" or JSON')
        parser.add_argument('--kind', choices=[k.value for k in AVERAGE_KINDS], default='awi',
                            help='Average index to estimate (default: awi)')
        parser.add_argument('--samples', type=int, help='Samples per chain (default: 100000)')
        parser.add_argument('--seed', type=int, default=1, help='Seed of the first chain (default: 1)')
        parser.add_argument('--burn-in', type=int, help='Discarded leading steps (default: 1000)')
        parser.add_argument('--thinning', type=int, default=1, help='Keep every k-th step (default: 1)')
        parser.add_argument('--chains', type=int, default=1, help='Independent chains (default: 1)')

    def run(self, manifest):
        game = parse_game(manifest.get('game'))
        config = ChainConfig.from_settings(
            seed=manifest.get('seed'),
            samples=manifest.get('samples'),
            burn_in=manifest.get('burn_in'),
            thinning=manifest.get('thinning'),
        )
        estimate = hit_and_run_chains(game, manifest.get('kind'), config, chains=manifest.get('chains'))
        if manifest.output_format == 'json':
            self.write_json({'game': format_game(game), 'chains': manifest.get('chains'), **estimate.to_json()})
        elif manifest.output_format == 'csv':
            rows = [{'voter': v, 'estimate': f'{m:.6f}', 'stderr': f'{s:.6f}'}
                    for v, (m, s) in enumerate(zip(estimate.mean, estimate.stderr), start=1)]
            self.write_csv(rows, ['voter', 'estimate', 'stderr'])
        else:
            self.write_banner(f'{estimate.kind.label} estimate for {format_game(game)}')
            for v, (m, s) in enumerate(zip(estimate.mean, estimate.stderr), start=1):
                self.stdout.write(f'voter {v:>2}  {m:.6f} +/- {s:.6f}')
            if estimate.quota is not None:
                self.stdout.write(f'quota     {estimate.quota:.6f} +/- {estimate.quota_stderr:.6f}')
            self.stdout.write(f'samples {estimate.samples}, re-entries {estimate.reprojections}')
