"""
Paradox audits (bloc, donation, added blocker) and the distance study.

Flags are decided on exact rationals; decimals appear only in rendering.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from functools import partial
from itertools import combinations
from typing import Iterable, Sequence

import pandas as pd

from voting.census import catalog_up_to, weighted_representation
from voting.exceptions import InvalidInputError, NotWeightedError
from voting.formatting import rational
from voting.games import SimpleGame, WeightedGame, format_game
from voting.indices import IndexKind, PowerVector, compute_index, msri
from voting.parallel import parallel_map

logger = logging.getLogger(__name__)

DISTANCE_KINDS = (IndexKind.BZI, IndexKind.SSI, IndexKind.AWI, IndexKind.ARI, IndexKind.AWTI, IndexKind.ARTI)
QUANTILES = (0.01, 0.25, 0.5, 0.75, 0.99)


@dataclass(frozen=True)
class ParadoxReport:
    paradox: str
    before: WeightedGame
    after: WeightedGame
    subjects: tuple[int, ...]
    before_power: dict[IndexKind, PowerVector] = field(default_factory=dict)
    after_power: dict[IndexKind, PowerVector] = field(default_factory=dict)
    flags: dict[IndexKind, bool] = field(default_factory=dict)
    measures: dict[IndexKind, dict[str, Fraction | None]] = field(default_factory=dict)

    @property
    def kinds(self) -> list[IndexKind]:
        return list(self.flags)

    def rows(self, places: int = 3) -> list[dict]:
        """One flat row per index, for CSV and text rendering."""
        out = []
        for kind in self.flags:
            row = {
                'paradox': self.paradox,
                'index': kind.value,
                'before': format_game(self.before),
                'after': format_game(self.after),
                'before_power': ' '.join(self.before_power[kind].decimals(places)),
                'after_power': ' '.join(self.after_power[kind].decimals(places)),
                'flag': self.flags[kind],
            }
            for name, value in self.measures.get(kind, {}).items():
                row[name] = rational(value) if value is not None else ''
            out.append(row)
        return out

    def to_json(self) -> dict:
        return {
            'paradox': self.paradox,
            'before': format_game(self.before),
            'after': format_game(self.after),
            'subjects': list(self.subjects),
            'indices': {
                kind.value: {
                    'before': [rational(e) for e in self.before_power[kind]],
                    'after': [rational(e) for e in self.after_power[kind]],
                    'flag': self.flags[kind],
                    **{name: rational(v) if v is not None else None
                       for name, v in self.measures.get(kind, {}).items()},
                }
                for kind in self.flags
            },
        }


def _kinds(kinds) -> list[IndexKind]:
    if isinstance(kinds, (str, IndexKind)):
        return [IndexKind(kinds)]
    return [IndexKind(k) for k in kinds]


def _check_voter(game: WeightedGame, voter: int, what: str) -> None:
    if not 1 <= voter <= game.n:
        raise InvalidInputError(f'{what} {voter} is not a voter of {format_game(game)}')


def merge_bloc(game: WeightedGame, i: int, j: int) -> WeightedGame:
    """Voter i takes over j's weight; j stays in place as a weight-0 dummy."""
    weights = list(game.weights)
    weights[i - 1] += weights[j - 1]
    weights[j - 1] = Fraction(0)
    return WeightedGame(quota=game.quota, weights=tuple(weights))


def bloc_audit(game: WeightedGame, i: int, j: int, kinds=IndexKind.AWI) -> ParadoxReport:
    _check_voter(game, i, 'voter')
    _check_voter(game, j, 'voter')
    if i == j:
        raise InvalidInputError('a bloc needs two different voters')
    merged = merge_bloc(game, i, j)
    report = ParadoxReport(paradox='bloc', before=game, after=merged, subjects=(i, j))
    for kind in _kinds(kinds):
        before, after = compute_index(game, kind), compute_index(merged, kind)
        bloc = after.power(i)
        report.before_power[kind] = before
        report.after_power[kind] = after
        report.flags[kind] = bloc < max(before.power(i), before.power(j))
        report.measures[kind] = {
            'bloc_power': bloc,
            'neutrality_gap': bloc - before.power(i) - before.power(j),
        }
    return report


def neutrality_gap(game: WeightedGame, i: int, j: int, kind=IndexKind.AWI) -> Fraction:
    """Bloc power after merging i and j minus their separate powers."""
    report = bloc_audit(game, i, j, kind)
    return report.measures[IndexKind(kind)]['neutrality_gap']


def donation_audit(game: WeightedGame, donor: int, recipient: int, amount, kinds=IndexKind.AWI) -> ParadoxReport:
    _check_voter(game, donor, 'donor')
    _check_voter(game, recipient, 'recipient')
    if donor == recipient:
        raise InvalidInputError('donor and recipient must differ')
    amount = Fraction(amount)
    if amount < 0 or amount > game.weights[donor - 1]:
        raise InvalidInputError(f'amount {amount} must lie between 0 and the donor weight')
    weights = list(game.weights)
    weights[donor - 1] -= amount
    weights[recipient - 1] += amount
    after_game = WeightedGame(quota=game.quota, weights=tuple(weights))
    report = ParadoxReport(paradox='donation', before=game, after=after_game, subjects=(donor, recipient))
    for kind in _kinds(kinds):
        before, after = compute_index(game, kind), compute_index(after_game, kind)
        report.before_power[kind] = before
        report.after_power[kind] = after
        report.flags[kind] = after.power(donor) > before.power(donor)
        report.measures[kind] = {
            'donor_before': before.power(donor),
            'donor_after': after.power(donor),
        }
    return report


def bicameral_meet(first: WeightedGame, second: WeightedGame) -> tuple[SimpleGame, WeightedGame]:
    """Coalitions winning in both houses; voters of `second` follow those of `first`.

    Returns the meet as a simple game plus an integer representation, or
    raises NotWeightedError when it has none.
    """
    n1 = first.n
    low = (1 << n1) - 1
    first_table, second_table = first.simple.table, second.simple.table
    meet = SimpleGame.from_predicate(
        n1 + second.n, lambda mask: first_table[mask & low] and second_table[mask >> n1])

    # the concatenation [q1+q2; w1, w2] is correct whenever it matches
    q1, w1 = first.integer_form
    q2, w2 = second.integer_form
    candidate = WeightedGame(quota=Fraction(q1 + q2), weights=tuple(Fraction(w) for w in w1 + w2))
    if candidate.simple.table == meet.table:
        return meet, candidate
    try:
        fitted = weighted_representation(meet)
    except NotWeightedError:
        logger.info('Meet of %s and %s is not weighted', format_game(first), format_game(second))
        raise
    quota, *weights = msri(fitted).representations[0]
    return meet, WeightedGame(quota=Fraction(quota), weights=tuple(Fraction(w) for w in weights))


def _ratio(vector: PowerVector, pair: tuple[int, int]) -> Fraction | None:
    denominator = vector.power(pair[1])
    return vector.power(pair[0]) / denominator if denominator else None


def added_blocker_audit(game: WeightedGame, blocker_weight, kinds=IndexKind.AWI,
                        pair: tuple[int, int] = (1, 2)) -> ParadoxReport:
    """Join [q; w] with the one-voter house [b; b] and compare a power ratio."""
    blocker = Fraction(blocker_weight)
    if blocker <= 0:
        raise InvalidInputError('blocker weight must be positive')
    for voter in pair:
        _check_voter(game, voter, 'voter')
    _, joined = bicameral_meet(game, WeightedGame(quota=blocker, weights=(blocker,)))
    report = ParadoxReport(paradox='added-blocker', before=game, after=joined, subjects=tuple(pair))
    for kind in _kinds(kinds):
        before, after = compute_index(game, kind), compute_index(joined, kind)
        ratio_before, ratio_after = _ratio(before, pair), _ratio(after, pair)
        report.before_power[kind] = before
        report.after_power[kind] = after
        report.flags[kind] = ratio_before != ratio_after
        report.measures[kind] = {'ratio_before': ratio_before, 'ratio_after': ratio_after}
    return report


@dataclass(frozen=True)
class DistanceTable:
    rows: pd.DataFrame
    summary: pd.DataFrame

    def rows_csv(self) -> str:
        return self.rows.to_csv(columns=['n', 'game', 'pair', 'distance'], index=False, float_format='%.6f')

    def summary_csv(self) -> str:
        return self.summary.to_csv(index=False, float_format='%.6f')


def euclidean(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Fraction, Decimal]:
    """Exact squared distance and the distance itself to 6 decimals."""
    squared = sum(((x - y) ** 2 for x, y in zip(a, b)), Fraction(0))
    with localcontext() as ctx:
        ctx.prec = 40
        root = (Decimal(squared.numerator) / Decimal(squared.denominator)).sqrt()
        return squared, root.quantize(Decimal('0.000001'), rounding=ROUND_HALF_EVEN)


def _power_vectors(game: WeightedGame, kinds: tuple[IndexKind, ...]) -> dict[IndexKind, tuple[Fraction, ...]]:
    return {kind: compute_index(game, kind).entries for kind in kinds}


def distance_study(n_max: int, kinds: Iterable = DISTANCE_KINDS, workers: int | None = None) -> DistanceTable:
    """Pairwise Euclidean distances between indices over every game up to n_max voters."""
    kinds = tuple(_kinds(kinds))
    if len(kinds) < 2:
        raise InvalidInputError('a distance study needs at least two indices')
    games = catalog_up_to(n_max, workers)
    logger.info('Computing %d indices for %d games', len(kinds), len(games))
    vectors = parallel_map(partial(_power_vectors, kinds=kinds), games, workers)

    records = []
    for game, powers in zip(games, vectors):
        for a, b in combinations(kinds, 2):
            squared, distance = euclidean(powers[a], powers[b])
            records.append({
                'n': game.n,
                'game': format_game(game),
                'pair': f'{a.value}-{b.value}',
                'distance': float(distance),
                'squared': rational(squared),
            })
    rows = pd.DataFrame.from_records(records, columns=['n', 'game', 'pair', 'distance', 'squared'])

    summaries = []
    pair_order = [f'{a.value}-{b.value}' for a, b in combinations(kinds, 2)]
    for size in range(1, n_max + 1):
        subset = rows[rows['n'] <= size]
        if subset.empty:
            continue
        for pair in pair_order:
            values = subset.loc[subset['pair'] == pair, 'distance']
            entry = {'n_max': size, 'pair': pair, 'games': int(values.size)}
            for level in QUANTILES:
                entry[f'q{round(level * 100):02d}'] = float(values.quantile(level))
            summaries.append(entry)
    summary = pd.DataFrame.from_records(summaries)
    return DistanceTable(rows=rows, summary=summary)
