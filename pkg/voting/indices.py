"""
Power indices as exact rational vectors.

Average indices are centroids of the dummy-revealing (and optionally
type-revealing) weight or representation polytope. Banzhaf and
Shapley-Shubik come from swing counts; the minimum-sum index averages every
integer representation of least total weight.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import ceil, factorial, floor

from voting import conf, linprog
from voting.exceptions import CapacityError, InvalidInputError, InvariantViolation
from voting.formatting import decimals, rational
from voting.games import (
    WeightedGame,
    check_coalition_cap,
    classify_voters,
    coalition_frontiers,
    desirability,
    dummy_reduce,
    format_game,
    shift_frontiers,
)
from voting.polytope import Kind, PolytopeH, Restriction, build_polytope, integrate

logger = logging.getLogger(__name__)


class IndexKind(str, Enum):
    AWI = 'awi'
    ARI = 'ari'
    AWTI = 'awti'
    ARTI = 'arti'
    BZI = 'bzi'
    SSI = 'ssi'
    MSRI = 'msri'
    MSRTI = 'msrti'

    @property
    def label(self) -> str:
        return self.value.upper()

    @property
    def is_average(self) -> bool:
        return self in AVERAGE_KINDS


AVERAGE_KINDS = {
    IndexKind.AWI: (Kind.WEIGHT, frozenset({Restriction.DUMMY})),
    IndexKind.ARI: (Kind.REPRESENTATION, frozenset({Restriction.DUMMY})),
    IndexKind.AWTI: (Kind.WEIGHT, frozenset({Restriction.DUMMY, Restriction.TYPE})),
    IndexKind.ARTI: (Kind.REPRESENTATION, frozenset({Restriction.DUMMY, Restriction.TYPE})),
}


@dataclass(frozen=True)
class AverageRepresentation:
    quota_bar: Fraction
    weights_bar: tuple[Fraction, ...]


@dataclass(frozen=True)
class PowerVector:
    kind: IndexKind
    entries: tuple[Fraction, ...]
    average: AverageRepresentation | None = None

    def __post_init__(self):
        if sum(self.entries, Fraction(0)) != 1 or any(e < 0 for e in self.entries):
            raise InvariantViolation(f'{self.kind.label} vector {self.entries} is not a distribution')

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, position):
        return self.entries[position]

    def __iter__(self):
        return iter(self.entries)

    def power(self, voter: int) -> Fraction:
        return self.entries[voter - 1]

    def decimals(self, places: int | None = None) -> list[str]:
        return decimals(self.entries, places if places is not None else conf.get('POWERPOLY_DECIMALS'))

    def to_json(self, game: WeightedGame | None = None, places: int | None = None) -> dict:
        payload = {}
        if game is not None:
            payload['game'] = format_game(game)
        payload['index'] = self.kind.value
        payload['power'] = [rational(e) for e in self.entries]
        payload['decimal'] = self.decimals(places)
        if self.average is not None:
            payload['quota_bar'] = rational(self.average.quota_bar)
        return payload


@dataclass(frozen=True)
class MSRSolution:
    representations: tuple[tuple[int, ...], ...]
    normalized_average: PowerVector
    total: int


def average_polytope(game: WeightedGame, kind: IndexKind | str) -> tuple[PolytopeH, tuple[int, ...]]:
    """Polytope behind an average index, on the dummy-reduced game."""
    kind = IndexKind(kind)
    polytope_kind, restrictions = AVERAGE_KINDS[kind]
    reduced, mapping = dummy_reduce(game)
    return build_polytope(reduced, polytope_kind, restrictions), mapping


def average_index(game: WeightedGame, kind: IndexKind | str, *, via_reduction: bool = True,
                  apex: str = 'min') -> PowerVector:
    """AWI, ARI, AWTI or ARTI as the exact centroid of the matching polytope."""
    kind = IndexKind(kind)
    if kind not in AVERAGE_KINDS:
        raise InvalidInputError(f'{kind.label} is not an average index')
    polytope_kind, restrictions = AVERAGE_KINDS[kind]
    if via_reduction:
        reduced, mapping = dummy_reduce(game)
        result = integrate(build_polytope(reduced, polytope_kind, restrictions), apex=apex)
        entries = [Fraction(0)] * game.n
        for position, voter in enumerate(mapping):
            entries[voter - 1] = result.weights[position]
    else:
        result = integrate(build_polytope(game, polytope_kind, restrictions), apex=apex)
        entries = list(result.weights)
    average = None
    if polytope_kind is Kind.REPRESENTATION:
        average = AverageRepresentation(quota_bar=result.quota, weights_bar=tuple(entries))
    logger.debug('%s of %s = %s', kind.label, format_game(game), [str(e) for e in entries])
    return PowerVector(kind=kind, entries=tuple(entries), average=average)


def _swings(game: WeightedGame) -> list[list[int]]:
    """swings[i][s]: winning coalitions of size s in which voter i is critical."""
    check_coalition_cap(game.n)
    n, table = game.n, game.simple.table
    swings = [[0] * (n + 1) for _ in range(n)]
    for mask in range(1, 1 << n):
        if not table[mask]:
            continue
        size = bin(mask).count('1')
        for i in range(n):
            bit = 1 << i
            if mask & bit and not table[mask ^ bit]:
                swings[i][size] += 1
    return swings


def banzhaf(game: WeightedGame) -> PowerVector:
    counts = [sum(row) for row in _swings(game)]
    total = sum(counts)
    return PowerVector(kind=IndexKind.BZI, entries=tuple(Fraction(c, total) for c in counts))


def shapley_shubik(game: WeightedGame) -> PowerVector:
    n = game.n
    orderings = [0] + [factorial(s - 1) * factorial(n - s) for s in range(1, n + 1)]
    entries = []
    for row in _swings(game):
        pivotal = sum(row[s] * orderings[s] for s in range(1, n + 1))
        entries.append(Fraction(pivotal, factorial(n)))
    return PowerVector(kind=IndexKind.SSI, entries=tuple(entries))


def classical_index(game: WeightedGame, kind: IndexKind | str) -> PowerVector:
    kind = IndexKind(kind)
    if kind is IndexKind.BZI:
        return banzhaf(game)
    if kind is IndexKind.SSI:
        return shapley_shubik(game)
    raise InvalidInputError(f'{kind.label} is not a classical index')


def _group_count(mask: int, group_masks: list[int]) -> list[int]:
    return [bin(mask & g).count('1') for g in group_masks]


def msri(game: WeightedGame, type_revealing: bool = False) -> MSRSolution:
    """All minimum-sum integer representations and their normalized average.

    The LP relaxation gives a lower bound on the total; each candidate total
    is then searched exhaustively inside per-coordinate LP bounds, so the
    first total with a solution yields every optimum exactly once.
    """
    cap = conf.get('POWERPOLY_ILP_CAP')
    if game.n > cap:
        raise CapacityError(f'{game.n} voters exceed the integer-program cap of {cap}')
    relation = desirability(game)
    partition = relation.partition
    dummies = classify_voters(game).dummies
    if type_revealing:
        groups = [tuple(c) for c in partition.active_classes]
    else:
        groups = [(i,) for i in range(1, game.n + 1) if i not in dummies]
    group_masks = [sum(1 << (v - 1) for v in g) for g in groups]
    group_of = {v: g for g, members_ in enumerate(groups) for v in members_}
    sizes = [len(g) for g in groups]
    k = len(groups)
    q_col = k

    shifts = shift_frontiers(game, relation)
    rows, rhs = [], []
    for mask in shifts.shift_minimal_winning:
        counts = _group_count(mask, group_masks)
        rows.append([-c for c in counts] + [1])
        rhs.append(0)
    for mask in shifts.shift_maximal_losing:
        counts = _group_count(mask, group_masks)
        rows.append(counts + [-1])
        rhs.append(-1)
    # i strictly more desirable than j forces w_i >= w_j + 1
    classes = partition.classes
    for upper, lower in zip(classes, classes[1:]):
        for i in upper:
            for j in lower:
                gi, gj = group_of.get(i), group_of.get(j)
                if gi is None or gi == gj:
                    continue
                row = [0] * (k + 1)
                row[gi] -= 1
                if gj is not None:
                    row[gj] += 1
                rows.append(row)
                rhs.append(-1)
    q_row = [0] * (k + 1)
    q_row[q_col] = -1
    rows.append(q_row)
    rhs.append(-1)

    objective = sizes + [0]
    relaxed = linprog.minimize(objective, rows, rhs)
    if not relaxed.optimal:
        raise InvariantViolation(f'minimum-sum relaxation of {format_game(game)} is {relaxed.status.value}')
    frontiers = coalition_frontiers(game)
    _, own_weights = game.integer_form
    ceiling = sum(own_weights)
    total = ceil(relaxed.value)
    logger.debug('MSR search for %s starts at total %d', format_game(game), total)

    # the game's own integer weights bound the plain search; type-revealing
    # optima can be heavier
    limit = ceiling * game.n if type_revealing else ceiling
    solutions: list[tuple[int, ...]] = []
    while not solutions:
        if total > limit:
            raise InvariantViolation(f'no integer representation of {format_game(game)} up to total {limit}')
        solutions = _solutions_with_total(game, groups, sizes, rows, rhs, total, frontiers)
        if not solutions:
            total += 1

    representations = tuple(sorted(solutions, reverse=True))
    summed = [0] * game.n
    for rep in representations:
        for i, w in enumerate(rep[1:]):
            summed[i] += w
    denominator = len(representations) * total
    kind = IndexKind.MSRTI if type_revealing else IndexKind.MSRI
    average = PowerVector(kind=kind, entries=tuple(Fraction(s, denominator) for s in summed))
    return MSRSolution(representations=representations, normalized_average=average, total=total)


def _solutions_with_total(game, groups, sizes, rows, rhs, total, frontiers) -> list[tuple[int, ...]]:
    k = len(groups)
    sum_row = sizes + [0]
    bounded_rows = rows + [sum_row, [-s for s in sum_row]]
    bounded_rhs = rhs + [total, -total]
    lower, upper = [], []
    for g in range(k):
        unit = [0] * (k + 1)
        unit[g] = 1
        low = linprog.minimize(unit, bounded_rows, bounded_rhs)
        if not low.optimal:
            return []
        high = linprog.maximize(unit, bounded_rows, bounded_rhs)
        lower.append(ceil(low.value))
        upper.append(floor(high.value))
        if lower[-1] > upper[-1]:
            return []

    solutions = []
    values = [0] * k
    # suffix bounds on what the remaining groups can absorb
    min_rest = [0] * (k + 1)
    max_rest = [0] * (k + 1)
    for g in range(k - 1, -1, -1):
        min_rest[g] = min_rest[g + 1] + sizes[g] * lower[g]
        max_rest[g] = max_rest[g + 1] + sizes[g] * upper[g]

    def search(g: int, remaining: int) -> None:
        if g == k:
            if remaining == 0:
                candidate = _as_representation(game, groups, values, frontiers)
                if candidate is not None:
                    solutions.append(candidate)
            return
        for value in range(lower[g], upper[g] + 1):
            left = remaining - sizes[g] * value
            if left < min_rest[g + 1]:
                break
            if left > max_rest[g + 1]:
                continue
            values[g] = value
            search(g + 1, left)

    search(0, total)
    return solutions


def _as_representation(game, groups, values, frontiers) -> tuple[int, ...] | None:
    weights = [0] * game.n
    for members_, value in zip(groups, values):
        for voter in members_:
            weights[voter - 1] = value

    def weight(mask: int) -> int:
        return sum(weights[i] for i in range(game.n) if mask >> i & 1)

    heaviest_losing = max(weight(t) for t in frontiers.maximal_losing)
    lightest_winning = min(weight(s) for s in frontiers.minimal_winning)
    if lightest_winning < heaviest_losing + 1:
        return None
    return (heaviest_losing + 1, *weights)


def compute_index(game: WeightedGame, kind: IndexKind | str) -> PowerVector:
    """Dispatch any supported index kind."""
    kind = IndexKind(kind)
    if kind in AVERAGE_KINDS:
        return average_index(game, kind)
    if kind in (IndexKind.BZI, IndexKind.SSI):
        return classical_index(game, kind)
    return msri(game, type_revealing=kind is IndexKind.MSRTI).normalized_average
