"""
Weight and representation polytopes of a weighted game, and their exact
volume and centroid.

Coordinates are per-group weights (a group is one voter, or one class under
the type restriction) plus the quota for the representation kind. The
normalization equality is used to eliminate one group, so every polytope
here is full-dimensional in its free coordinates.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import factorial, isqrt
from typing import Iterable, Sequence

import cdd
from flint import fmpq, fmpq_mat

from voting import linprog
from voting.exceptions import DegeneratePolytopeError, InvalidInputError
from voting.games import (
    WeightedGame,
    classify_voters,
    coalition_frontiers,
    desirability,
    members,
    shift_frontiers,
)

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)


class Kind(str, Enum):
    WEIGHT = 'weight'
    REPRESENTATION = 'representation'


class Restriction(str, Enum):
    DUMMY = 'dummy'
    TYPE = 'type'


@dataclass(frozen=True)
class AffineForm:
    constant: Fraction
    coefficients: tuple[Fraction, ...]

    @classmethod
    def zero(cls, dim: int) -> 'AffineForm':
        return cls(ZERO, (ZERO,) * dim)

    @classmethod
    def unit(cls, dim: int, index: int) -> 'AffineForm':
        return cls(ZERO, tuple(ONE if k == index else ZERO for k in range(dim)))

    def __add__(self, other: 'AffineForm') -> 'AffineForm':
        return AffineForm(self.constant + other.constant,
                          tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other: 'AffineForm') -> 'AffineForm':
        return AffineForm(self.constant - other.constant,
                          tuple(a - b for a, b in zip(self.coefficients, other.coefficients)))

    def evaluate(self, point: Sequence) -> Fraction:
        return self.constant + sum((a * x for a, x in zip(self.coefficients, point) if a), ZERO)


@dataclass(frozen=True)
class LinearConstraint:
    """coefficients . y  (<= | =)  rhs over the free coordinates."""
    coefficients: tuple[Fraction, ...]
    rhs: Fraction
    relation: str = '<='

    def slack(self, point: Sequence) -> Fraction:
        return self.rhs - sum((a * x for a, x in zip(self.coefficients, point) if a), ZERO)

    def render(self, labels: Sequence[str]) -> str:
        terms = []
        for a, label in zip(self.coefficients, labels):
            if not a:
                continue
            sign = '-' if a < 0 else '+'
            size = abs(a)
            term = label if size == 1 else f'{size}*{label}'
            terms.append((sign, term))
        text = ''.join(f' {s} {t}' for s, t in terms).strip()
        if text.startswith('+ '):
            text = text[2:]
        elif text.startswith('- '):
            text = '-' + text[2:]
        return f'{text} {self.relation} {self.rhs}'

    def to_json(self) -> dict:
        return {'coefficients': [str(a) for a in self.coefficients],
                'relation': self.relation, 'rhs': str(self.rhs)}


@dataclass(frozen=True)
class RecoveryMap:
    """Affine expressions of every voter weight (and the quota) in free coordinates."""
    weights: tuple[AffineForm, ...]
    quota: AffineForm | None = None

    def weights_at(self, point: Sequence) -> tuple[Fraction, ...]:
        return tuple(form.evaluate(point) for form in self.weights)

    def quota_at(self, point: Sequence) -> Fraction | None:
        return self.quota.evaluate(point) if self.quota is not None else None


@dataclass(frozen=True)
class PolytopeH:
    labels: tuple[str, ...]
    constraints: tuple[LinearConstraint, ...]
    recovery: RecoveryMap
    kind: Kind
    restrictions: frozenset = frozenset()
    groups: tuple[tuple[int, ...], ...] = ()
    interior: tuple[Fraction, ...] | None = None

    @property
    def dim(self) -> int:
        return len(self.labels)

    def to_json(self) -> dict:
        return {
            'kind': self.kind.value,
            'restrictions': sorted(r.value for r in self.restrictions),
            'coordinates': list(self.labels),
            'constraints': [c.to_json() for c in self.constraints],
        }


@dataclass(frozen=True)
class VertexSet:
    vertices: tuple[tuple[Fraction, ...], ...]
    # bitmask over constraint indices tight at each vertex
    tight: tuple[int, ...]

    def __len__(self):
        return len(self.vertices)


@dataclass(frozen=True)
class IntegrationResult:
    volume: Fraction
    moments: tuple[Fraction, ...]
    centroid: tuple[Fraction, ...]
    weights: tuple[Fraction, ...]
    quota: Fraction | None = None
    simplices: int = 0

    def weight_moment(self, voter: int) -> Fraction:
        """Integral of a voter's weight (1-based) over the polytope."""
        return self.volume * self.weights[voter - 1]


@dataclass(frozen=True)
class ChebyshevBall:
    center: tuple[Fraction, ...]
    radius: Fraction


def _canonical(coefficients: tuple[Fraction, ...], rhs: Fraction) -> tuple[tuple[Fraction, ...], Fraction] | None:
    lead = next((abs(a) for a in coefficients if a), None)
    if lead is None:
        return None
    return tuple(a / lead for a in coefficients), rhs / lead


def _as_constraint(form: AffineForm) -> tuple[tuple[Fraction, ...], Fraction]:
    # form >= 0  <=>  -coefficients . y <= constant
    return tuple(-a for a in form.coefficients), form.constant


def _norm_upper_bound(coefficients: Sequence[Fraction], precision: int = 1000) -> Fraction:
    """Rational number at least the Euclidean norm of the vector."""
    square = sum((a * a for a in coefficients), ZERO)
    p, q = square.numerator, square.denominator
    root = isqrt(p * q * precision * precision)
    if root * root != p * q * precision * precision:
        root += 1
    return Fraction(root, q * precision)


def chebyshev_ball(constraints: Sequence[LinearConstraint], dim: int) -> ChebyshevBall:
    """Largest inscribed ball (norms bounded above by rationals), by exact LP."""
    if dim == 0:
        raise DegeneratePolytopeError('zero-dimensional polytope has no inscribed ball', point=())
    A = [list(c.coefficients) + [_norm_upper_bound(c.coefficients)] for c in constraints]
    b = [c.rhs for c in constraints]
    A.append([ZERO] * dim + [ONE])
    b.append(ONE)
    objective = [ZERO] * dim + [ONE]
    result = linprog.maximize(objective, A, b, free=range(dim))
    if result.status is linprog.LPStatus.INFEASIBLE:
        raise DegeneratePolytopeError('polytope is empty')
    if not result.optimal:
        raise DegeneratePolytopeError('polytope is unbounded')
    radius = result.x[dim]
    if radius <= 0:
        raise DegeneratePolytopeError('polytope has no interior (zero inradius)')
    return ChebyshevBall(center=tuple(result.x[:dim]), radius=radius)


def _cdd_inequalities(constraints: Sequence[LinearConstraint]) -> 'cdd.Matrix':
    # cdd rows are [b, -A] for b - A y >= 0
    rows = [[c.rhs] + [-a for a in c.coefficients] for c in constraints]
    matrix = cdd.Matrix(rows, number_type='fraction')
    matrix.rep_type = cdd.RepType.INEQUALITY
    return matrix


def remove_redundant(constraints: Sequence[LinearConstraint]) -> list[LinearConstraint]:
    """Drop every inequality implied by the others (cdd canonicalization)."""
    if not constraints:
        return []
    matrix = _cdd_inequalities(constraints)
    linearities, redundant = matrix.canonicalize()
    if linearities:
        raise DegeneratePolytopeError('polytope is not full-dimensional')
    kept = [c for index, c in enumerate(constraints) if index not in redundant]
    logger.debug('redundancy removal kept %d of %d constraints', len(kept), len(constraints))
    return kept


def _coordinate_groups(game: WeightedGame, restrictions: frozenset, relation) -> tuple[list[tuple[int, ...]], set[int]]:
    dummies = classify_voters(game).dummies if Restriction.DUMMY in restrictions else frozenset()
    if Restriction.TYPE in restrictions:
        partition = relation.partition
        classes = partition.active_classes if Restriction.DUMMY in restrictions else partition.classes
        groups = [tuple(c) for c in classes]
    else:
        groups = [(i,) for i in range(1, game.n + 1) if i not in dummies]
    return groups, set(dummies)


def build_polytope(
    game: WeightedGame,
    kind: Kind | str,
    restrictions: Iterable = (),
    *,
    eliminate: int | None = None,
    prefilter: bool = True,
) -> PolytopeH:
    """H-representation of V or R with optional dummy/type restrictions.

    `eliminate` picks the group (0-based) substituted out by the
    normalization equality; the last group by default. With `prefilter`
    the pair constraints are generated from shift-minimal winning and
    shift-maximal losing coalitions plus the desirability order, which
    describes the same closed polytope with far fewer rows.
    """
    kind = Kind(kind)
    restrictions = frozenset(Restriction(r) for r in restrictions)
    relation = desirability(game)
    groups, zeroed = _coordinate_groups(game, restrictions, relation)
    k = len(groups)
    if eliminate is None:
        eliminate = k - 1
    if not 0 <= eliminate < k:
        raise InvalidInputError(f'cannot eliminate group {eliminate} of {k}')

    with_quota = kind is Kind.REPRESENTATION
    offset = 1 if with_quota else 0
    dim = offset + k - 1
    labels = ['q'] if with_quota else []
    coordinate_of = {}
    for g, group in enumerate(groups):
        if g != eliminate:
            coordinate_of[g] = len(labels)
            labels.append(f'w{group[0]}')

    group_forms = []
    size_e = len(groups[eliminate])
    for g, group in enumerate(groups):
        if g != eliminate:
            group_forms.append(AffineForm.unit(dim, coordinate_of[g]))
            continue
        coefficients = [ZERO] * dim
        for h, other in enumerate(groups):
            if h != eliminate:
                coefficients[coordinate_of[h]] = -Fraction(len(other), size_e)
        group_forms.append(AffineForm(Fraction(1, size_e), tuple(coefficients)))

    voter_forms = [AffineForm.zero(dim)] * game.n
    for g, group in enumerate(groups):
        for voter in group:
            voter_forms[voter - 1] = group_forms[g]
    quota_form = AffineForm.unit(dim, 0) if with_quota else None
    recovery = RecoveryMap(weights=tuple(voter_forms), quota=quota_form)

    def weight_of(mask: int) -> AffineForm:
        total = AffineForm.zero(dim)
        for voter in members(mask):
            total = total + voter_forms[voter - 1]
        return total

    if prefilter:
        shifts = shift_frontiers(game, relation)
        winning, losing = shifts.shift_minimal_winning, shifts.shift_maximal_losing
    else:
        frontiers = coalition_frontiers(game)
        winning, losing = frontiers.minimal_winning, frontiers.maximal_losing

    forms: list[AffineForm] = list(group_forms)
    if with_quota:
        forms.append(quota_form)
    if prefilter:
        classes = relation.partition.classes
        for upper, lower in zip(classes, classes[1:]):
            for i in upper:
                for j in lower:
                    forms.append(voter_forms[i - 1] - voter_forms[j - 1])
    winning_forms = [weight_of(s) for s in winning]
    losing_forms = [weight_of(t) for t in losing]
    if with_quota:
        forms.extend(w - quota_form for w in winning_forms)
        forms.extend(quota_form - l for l in losing_forms)
    else:
        forms.extend(w - l for w in winning_forms for l in losing_forms)

    seen = {}
    for form in forms:
        coefficients, rhs = _as_constraint(form)
        canonical = _canonical(coefficients, rhs)
        if canonical is None:
            if rhs < 0:
                raise DegeneratePolytopeError(f'infeasible constant constraint 0 <= {rhs}')
            continue
        seen.setdefault(canonical, LinearConstraint(*canonical))
    constraints = list(seen.values())
    logger.debug('%s %s polytope of %s: %d coordinates, %d candidate constraints',
                 kind.value, sorted(r.value for r in restrictions), game, dim, len(constraints))

    interior = None
    if dim > 0:
        ball = chebyshev_ball(constraints, dim)
        interior = ball.center
        constraints = remove_redundant(constraints)
    return PolytopeH(
        labels=tuple(labels),
        constraints=tuple(constraints),
        recovery=recovery,
        kind=kind,
        restrictions=restrictions,
        groups=tuple(groups),
        interior=interior,
    )


def _flint_matrix(rows: Sequence[Sequence[Fraction]]) -> fmpq_mat:
    return fmpq_mat([[fmpq(v.numerator, v.denominator) for v in row] for row in rows])


def _affine_rank(points: Sequence[Sequence[Fraction]]) -> int:
    if len(points) <= 1:
        return 0
    base = points[0]
    _, rank = _flint_matrix([[a - b for a, b in zip(p, base)] for p in points[1:]]).rref()
    return int(rank)


def _simplex_determinant(corners: Sequence[Sequence[Fraction]]) -> Fraction:
    base = corners[0]
    det = _flint_matrix([[a - b for a, b in zip(c, base)] for c in corners[1:]]).det()
    return Fraction(int(det.p), int(det.q))


def enumerate_vertices(p: PolytopeH) -> VertexSet:
    """Exact vertices from cdd's double description in fraction arithmetic.

    Generators with a leading 0 are rays (or lines), which only an
    unbounded polyhedron has.
    """
    dim = p.dim
    if dim == 0:
        return VertexSet(vertices=((),), tight=(0,))
    generators = cdd.Polyhedron(_cdd_inequalities(p.constraints)).get_generators()
    if generators.lin_set:
        raise DegeneratePolytopeError('polytope contains a line')
    vertices = set()
    for index in range(generators.row_size):
        row = generators[index]
        t = Fraction(row[0])
        if t <= 0:
            raise DegeneratePolytopeError('polytope is unbounded')
        vertices.add(tuple(Fraction(v) / t for v in row[1:]))
    if not vertices:
        raise DegeneratePolytopeError('polytope is empty')
    ordered = sorted(vertices)
    tight = []
    for point in ordered:
        mask = 0
        for c_index, constraint in enumerate(p.constraints):
            if constraint.slack(point) == 0:
                mask |= 1 << c_index
        tight.append(mask)
    logger.debug('enumerated %d vertices in dimension %d', len(ordered), dim)
    return VertexSet(vertices=tuple(ordered), tight=tuple(tight))


class _Triangulator:
    """Cone triangulation: pick an apex, cone it over the triangulated
    facets that miss it, recursing through faces of every dimension."""

    def __init__(self, vertices: VertexSet, constraint_count: int, apex: str):
        self.points = vertices.vertices
        self.tight = vertices.tight
        self.constraint_count = constraint_count
        self.pick = min if apex == 'min' else max
        self.memo: dict = {}

    def facets(self, face: frozenset, k: int) -> list[frozenset]:
        found = set()
        for c in range(self.constraint_count):
            sub = frozenset(v for v in face if self.tight[v] >> c & 1)
            if len(sub) < k or sub == face or sub in found:
                continue
            if _affine_rank([self.points[v] for v in sorted(sub)]) == k - 1:
                found.add(sub)
        return sorted(found, key=lambda s: sorted(s))

    def simplices(self, face: frozenset, k: int) -> list[tuple[int, ...]]:
        key = (face, k)
        if key in self.memo:
            return self.memo[key]
        if len(face) == k + 1:
            result = [tuple(sorted(face))]
        else:
            apex = self.pick(face, key=lambda v: self.points[v])
            result = []
            for facet in self.facets(face, k):
                if apex in facet:
                    continue
                for simplex in self.simplices(facet, k - 1):
                    result.append((apex,) + simplex)
        self.memo[key] = result
        return result


def integrate(p: PolytopeH, vertices: VertexSet | None = None, *, apex: str = 'min') -> IntegrationResult:
    """Exact volume, first moments and centroid of the polytope.

    Moments of degree-1 integrands over a simplex are its volume times the
    vertex mean. A zero-dimensional polytope has volume 1 by convention.
    """
    dim = p.dim
    if dim == 0:
        point = ()
        return IntegrationResult(volume=ONE, moments=(), centroid=(),
                                 weights=p.recovery.weights_at(point),
                                 quota=p.recovery.quota_at(point), simplices=1)
    vertices = vertices or enumerate_vertices(p)
    if _affine_rank(vertices.vertices) != dim:
        raise DegeneratePolytopeError(f'polytope is not {dim}-dimensional')
    triangulator = _Triangulator(vertices, len(p.constraints), apex)
    simplices = triangulator.simplices(frozenset(range(len(vertices))), dim)

    volume = ZERO
    moments = [ZERO] * dim
    scale = factorial(dim)
    for simplex in simplices:
        corners = [vertices.vertices[v] for v in simplex]
        piece = abs(_simplex_determinant(corners)) / scale
        if not piece:
            continue
        volume += piece
        for axis in range(dim):
            moments[axis] += piece * sum((c[axis] for c in corners), ZERO) / (dim + 1)
    if volume <= 0:
        raise DegeneratePolytopeError('polytope has zero volume')
    centroid = tuple(m / volume for m in moments)
    logger.debug('integrated %d simplices, volume %s', len(simplices), volume)
    return IntegrationResult(
        volume=volume,
        moments=tuple(moments),
        centroid=centroid,
        weights=p.recovery.weights_at(centroid),
        quota=p.recovery.quota_at(centroid),
        simplices=len(simplices),
    )
