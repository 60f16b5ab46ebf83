"""
Management command to dump the H- and V-representation of a game's polytope
Run with: python manage.py polytope --game "[3;2,1,1]" --kind weight --restrict dummy,type
"""
from voting.exceptions import InvalidInputError
from voting.formatting import vector_text
from voting.games import format_game, parse_game
from voting.management.base import PowerPolyCommand
from voting.polytope import Kind, Restriction, build_polytope, enumerate_vertices, integrate


class Command(PowerPolyCommand):
    help = 'Prints the constraints, vertices, volume and centroid of a weight or representation polytope'

    def add_run_arguments(self, parser):
        parser.add_argument('--game', type=str, required=True, help='Game as "[q;w1,...,wn]" or JSON')
        parser.add_argument('--kind', choices=[k.value for k in Kind], default='weight',
                            help='Polytope kind (default: weight)')
        parser.add_argument('--restrict', type=str, default='',
                            help='Comma-separated restrictions: dummy, type (default: none)')
        parser.add_argument('--eliminate', type=int, help='Group eliminated by normalization (default: last)')
        parser.add_argument('--no-prefilter', action='store_true',
                            help='Build pair constraints from all minimal winning and maximal losing coalitions')

    def run(self, manifest):
        game = parse_game(manifest.get('game'))
        try:
            restrictions = [Restriction(r.strip()) for r in manifest.get('restrict', '').split(',') if r.strip()]
        except ValueError as exc:
            raise InvalidInputError(f'unknown restriction in {manifest.get("restrict")!r}') from exc
        polytope = build_polytope(
            game,
            manifest.get('kind'),
            restrictions,
            eliminate=manifest.get('eliminate'),
            prefilter=not manifest.get('no_prefilter'),
        )
        vertices = enumerate_vertices(polytope)
        result = integrate(polytope, vertices)

        if manifest.output_format == 'json':
            payload = {'game': format_game(game), **polytope.to_json()}
            payload['vertices'] = [[str(v) for v in vertex] for vertex in vertices.vertices]
            payload['volume'] = str(result.volume)
            payload['centroid'] = [str(c) for c in result.centroid]
            payload['weights'] = [str(w) for w in result.weights]
            if result.quota is not None:
                payload['quota'] = str(result.quota)
            self.write_json(payload)
        elif manifest.output_format == 'csv':
            rows = [{'vertex': k, **dict(zip(polytope.labels, (str(v) for v in vertex)))}
                    for k, vertex in enumerate(vertices.vertices, start=1)]
            self.write_csv(rows, ['vertex', *polytope.labels])
        else:
            self.write_banner(f'{polytope.kind.value} polytope of {format_game(game)}')
            self.stdout.write(f'coordinates: {", ".join(polytope.labels) or "(none)"}')
            for constraint in polytope.constraints:
                self.stdout.write(f'  {constraint.render(polytope.labels)}')
            self.stdout.write(f'vertices: {len(vertices)}')
            for vertex in vertices.vertices:
                self.stdout.write(f'  ({", ".join(str(v) for v in vertex)})')
            self.stdout.write(f'volume: {result.volume}')
            self.stdout.write(f'centroid weights: {vector_text(result.weights)}')
            if result.quota is not None:
                self.stdout.write(f'centroid quota: {result.quota}')
