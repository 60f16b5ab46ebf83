import math
from fractions import Fraction

from django.test import SimpleTestCase, tag

from voting.census import catalog_up_to
from voting.exceptions import DegeneratePolytopeError, InvalidInputError
from voting.games import format_game, parse_game
from voting.polytope import (
    Kind,
    LinearConstraint,
    PolytopeH,
    RecoveryMap,
    Restriction,
    build_polytope,
    chebyshev_ball,
    enumerate_vertices,
    integrate,
    remove_redundant,
)

F = Fraction


def shoelace(points):
    """Exact area of a convex polygon, vertices ordered by angle around their mean."""
    cx = sum(p[0] for p in points) / len(points)
    cy = sum(p[1] for p in points) / len(points)
    ordered = sorted(points, key=lambda p: math.atan2(float(p[1] - cy), float(p[0] - cx)))
    twice = sum(a[0] * b[1] - b[0] * a[1] for a, b in zip(ordered, ordered[1:] + ordered[:1]))
    return abs(twice) / 2


class BuildPolytopeTests(SimpleTestCase):

    def test_weight_polytope_vertices(self):
        p = build_polytope(parse_game('[3;2,1,1]'), Kind.WEIGHT)
        self.assertEqual(p.labels, ('w1', 'w2'))
        vertices = set(enumerate_vertices(p).vertices)
        self.assertEqual(vertices, {(F(1, 3), F(1, 3)), (F(1, 2), F(0)), (F(1), F(0)), (F(1, 2), F(1, 2))})

    def test_representation_polytope_has_quota_coordinate(self):
        p = build_polytope(parse_game('[3;2,1,1]'), 'representation')
        self.assertEqual(p.labels[0], 'q')
        self.assertEqual(p.dim, 3)

    def test_dimensions_under_restrictions(self):
        game = parse_game('[51;47,46,5,2]')
        self.assertEqual(build_polytope(game, Kind.WEIGHT).dim, 3)
        self.assertEqual(build_polytope(game, Kind.WEIGHT, [Restriction.DUMMY]).dim, 2)
        self.assertEqual(build_polytope(game, Kind.REPRESENTATION, ['dummy']).dim, 3)
        self.assertEqual(build_polytope(game, Kind.WEIGHT, ['dummy', 'type']).dim, 0)

    def test_prefilter_describes_the_same_polytope(self):
        for text in ('[3;2,1,1,1]', '[5;3,2,2,1]', '[13;9,4,3,2,1]'):
            for kind in Kind:
                with self.subTest(game=text, kind=kind.value):
                    game = parse_game(text)
                    fast = enumerate_vertices(build_polytope(game, kind))
                    slow = enumerate_vertices(build_polytope(game, kind, prefilter=False))
                    self.assertEqual(set(fast.vertices), set(slow.vertices))

    def test_bad_elimination(self):
        with self.assertRaises(InvalidInputError):
            build_polytope(parse_game('[3;2,1,1]'), Kind.WEIGHT, eliminate=3)

    def test_constraint_rendering(self):
        constraint = LinearConstraint(coefficients=(F(-2), F(1)), rhs=F(0))
        self.assertEqual(constraint.render(['w1', 'w2']), '-2*w1 + w2 <= 0')


class IntegrateTests(SimpleTestCase):

    def test_weight_polytope_of_small_game(self):
        result = integrate(build_polytope(parse_game('[3;2,1,1]'), Kind.WEIGHT))
        self.assertEqual(result.volume, F(1, 6))
        self.assertEqual(result.weights, (F(11, 18), F(7, 36), F(7, 36)))
        self.assertIsNone(result.quota)

    def test_volume_matches_polygon_area(self):
        game = parse_game('[3;2,1,1]')
        for kind, restrictions in ((Kind.WEIGHT, ()), (Kind.REPRESENTATION, ('type',))):
            with self.subTest(kind=kind.value, restrictions=restrictions):
                p = build_polytope(game, kind, restrictions)
                self.assertEqual(p.dim, 2)
                vertices = enumerate_vertices(p)
                self.assertEqual(integrate(p, vertices).volume, shoelace(list(vertices.vertices)))

    def test_type_polytopes_of_small_game(self):
        game = parse_game('[3;2,1,1]')
        weight = integrate(build_polytope(game, Kind.WEIGHT, ['type']))
        self.assertEqual(weight.volume, F(2, 3))
        self.assertEqual(weight.weights, (F(2, 3), F(1, 6), F(1, 6)))
        representation = integrate(build_polytope(game, Kind.REPRESENTATION, ['type']))
        self.assertEqual(representation.volume, F(1, 12))
        self.assertEqual(representation.weights, (F(11, 18), F(7, 36), F(7, 36)))

    def test_game_with_a_dummy(self):
        game = parse_game('[51;47,46,5,2]')
        weight = integrate(build_polytope(game, Kind.WEIGHT))
        self.assertEqual(weight.volume, F(1, 96))
        self.assertEqual(weight.weight_moment(4), F(1, 1536))
        self.assertEqual(weight.weights, (F(5, 16), F(5, 16), F(5, 16), F(1, 16)))

        representation = integrate(build_polytope(game, Kind.REPRESENTATION))
        self.assertEqual(representation.volume, F(1, 1152))
        self.assertEqual(representation.quota, F(1, 2))
        self.assertEqual(representation.weights, (F(19, 60), F(19, 60), F(19, 60), F(1, 20)))

        revealing = integrate(build_polytope(game, Kind.WEIGHT, ['dummy']))
        self.assertEqual(revealing.weights, (F(1, 3), F(1, 3), F(1, 3), F(0)))

    def test_result_does_not_depend_on_eliminated_group(self):
        game = parse_game('[3;2,1,1]')
        results = [integrate(build_polytope(game, Kind.WEIGHT, eliminate=e)) for e in range(3)]
        for result in results[1:]:
            self.assertEqual(result.weights, results[0].weights)
            self.assertEqual(result.volume, results[0].volume)

    @tag('slow')
    def test_every_elimination_gives_the_same_centroid(self):
        for game in catalog_up_to(4):
            for kind in Kind:
                for restrictions in ((), (Restriction.TYPE,)):
                    reference = integrate(build_polytope(game, kind, restrictions))
                    groups = len(build_polytope(game, kind, restrictions).groups)
                    for eliminate in range(groups):
                        with self.subTest(game=format_game(game), kind=kind.value,
                                          restrictions=restrictions, eliminate=eliminate):
                            result = integrate(build_polytope(game, kind, restrictions, eliminate=eliminate))
                            self.assertEqual(result.weights, reference.weights)
                            self.assertEqual(result.quota, reference.quota)
                            if not restrictions:
                                self.assertEqual(result.volume, reference.volume)

    def test_result_does_not_depend_on_apex(self):
        p = build_polytope(parse_game('[5;3,2,2,1]'), Kind.REPRESENTATION)
        low = integrate(p, apex='min')
        high = integrate(p, apex='max')
        self.assertEqual(low.volume, high.volume)
        self.assertEqual(low.moments, high.moments)

    def test_single_point_polytope(self):
        p = build_polytope(parse_game('[2;1,1]'), Kind.WEIGHT, ['type'])
        self.assertEqual(p.dim, 0)
        result = integrate(p)
        self.assertEqual(result.volume, 1)
        self.assertEqual(result.weights, (F(1, 2), F(1, 2)))

    def test_one_voter_type_polytope_is_uniform(self):
        result = integrate(build_polytope(parse_game('[3;1,1,1,1]'), Kind.WEIGHT, ['type']))
        self.assertEqual(result.weights, (F(1, 4),) * 4)


class ChebyshevTests(SimpleTestCase):

    def test_interval(self):
        p = build_polytope(parse_game('[1;1]'), Kind.REPRESENTATION)
        ball = chebyshev_ball(p.constraints, p.dim)
        self.assertEqual(ball.center, (F(1, 2),))
        self.assertEqual(ball.radius, F(1, 2))

    def test_center_is_interior(self):
        p = build_polytope(parse_game('[13;9,4,3,2,1]'), Kind.REPRESENTATION)
        ball = chebyshev_ball(p.constraints, p.dim)
        self.assertGreater(ball.radius, 0)
        for constraint in p.constraints:
            self.assertGreater(constraint.slack(ball.center), 0)

    def test_empty_system(self):
        # x <= 0 and x >= 1
        constraints = [LinearConstraint((F(1),), F(0)), LinearConstraint((F(-1),), F(-1))]
        with self.assertRaises(DegeneratePolytopeError):
            chebyshev_ball(constraints, 1)

    def test_zero_dimensional(self):
        with self.assertRaises(DegeneratePolytopeError):
            chebyshev_ball((), 0)


class RedundancyTests(SimpleTestCase):

    def test_implied_inequalities_are_dropped(self):
        # unit square plus x + y <= 3 and x <= 2
        constraints = [
            LinearConstraint((F(1), F(0)), F(1)),
            LinearConstraint((F(0), F(1)), F(1)),
            LinearConstraint((F(-1), F(0)), F(0)),
            LinearConstraint((F(0), F(-1)), F(0)),
            LinearConstraint((F(1), F(1)), F(3)),
            LinearConstraint((F(1), F(0)), F(2)),
        ]
        self.assertEqual(remove_redundant(constraints), constraints[:4])

    def test_kept_constraints_are_facets(self):
        for text in ('[13;9,4,3,2,1]', '[5;3,2,2,1]'):
            for kind in Kind:
                with self.subTest(game=text, kind=kind.value):
                    p = build_polytope(parse_game(text), kind, prefilter=False)
                    vertices = enumerate_vertices(p)
                    for index in range(len(p.constraints)):
                        tight = [v for v, mask in zip(vertices.vertices, vertices.tight) if mask >> index & 1]
                        self.assertGreaterEqual(len(tight), p.dim)

    def test_unbounded_polytope_has_no_vertex_set(self):
        ray = PolytopeH(
            labels=('x',),
            constraints=(LinearConstraint((F(-1),), F(0)),),
            recovery=RecoveryMap(weights=()),
            kind=Kind.WEIGHT,
        )
        with self.assertRaises(DegeneratePolytopeError):
            enumerate_vertices(ray)
