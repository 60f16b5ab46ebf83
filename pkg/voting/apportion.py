"""Seat apportionment and inverse design of a game for a target power vector."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from math import ceil
from typing import Sequence

from voting.exceptions import InvalidInputError, NoFeasibleDesignError
from voting.formatting import rational, round_half_up
from voting.games import WeightedGame, format_game
from voting.indices import IndexKind, PowerVector, compute_index
from voting.parallel import parallel_map

logger = logging.getLogger(__name__)

TARGET_TOLERANCE = Fraction(1, 100)


@dataclass(frozen=True)
class SeatAllocation:
    labels: tuple[str, ...]
    votes: tuple[Fraction, ...]
    seats: tuple[int, ...]
    house: int
    method: str
    quota: Fraction | None = None
    power: PowerVector | None = None

    @property
    def total_seats(self) -> int:
        return sum(self.seats)

    def seat_game(self) -> WeightedGame:
        """Game with the allocated seats as weights and the same quota."""
        if self.quota is None:
            raise InvalidInputError('allocation carries no quota')
        return WeightedGame(quota=self.quota, weights=tuple(Fraction(s) for s in self.seats))

    def to_json(self) -> dict:
        payload = {
            'method': self.method,
            'house': self.house,
            'total_seats': self.total_seats,
            'parties': [
                {'label': label, 'votes': rational(v), 'seats': s}
                for label, v, s in zip(self.labels, self.votes, self.seats)
            ],
        }
        if self.quota is not None:
            payload['quota'] = rational(self.quota)
        if self.power is not None:
            payload['power'] = [rational(p) for p in self.power]
        return payload


def _labels(count: int, labels: Sequence[str] | None) -> tuple[str, ...]:
    if labels is None:
        return tuple(f'P{i}' for i in range(1, count + 1))
    if len(labels) != count:
        raise InvalidInputError(f'{len(labels)} labels for {count} parties')
    return tuple(labels)


def dhondt(votes: Sequence, house: int, labels: Sequence[str] | None = None, quota=None) -> SeatAllocation:
    """Highest averages with divisors 1, 2, 3, ...

    Ties on the average go to the party with more votes, then to the lower
    party index.
    """
    if house < 1:
        raise InvalidInputError('house size must be at least 1')
    if not votes:
        raise InvalidInputError('need at least one party')
    votes = tuple(Fraction(v) for v in votes)
    if any(v <= 0 for v in votes):
        raise InvalidInputError('votes must be positive')
    seats = [0] * len(votes)
    for _ in range(house):
        winner = max(range(len(votes)), key=lambda p: (votes[p] / (seats[p] + 1), votes[p], -p))
        seats[winner] += 1
    return SeatAllocation(labels=_labels(len(votes), labels), votes=votes, seats=tuple(seats),
                          house=house, method='dhondt',
                          quota=Fraction(quota) if quota is not None else None)


def index_seats(game: WeightedGame, kind, house: int, adjust: bool = False,
                labels: Sequence[str] | None = None) -> SeatAllocation:
    """Seats proportional to a power index, rounded half up.

    The sum may differ from the house; with `adjust` the difference is
    taken from (or given to) the most powerful parties one seat at a time.
    """
    if house < 1:
        raise InvalidInputError('house size must be at least 1')
    kind = IndexKind(kind)
    power = compute_index(game, kind)
    seats = [round_half_up(p * house) for p in power]
    if sum(seats) != house:
        logger.info('%s seats of %s sum to %d, not %d', kind.label, format_game(game), sum(seats), house)
    if adjust:
        order = sorted(range(game.n), key=lambda p: (-power[p], p))
        step = 0
        while sum(seats) > house:
            party = order[step % len(order)]
            if seats[party] > 0:
                seats[party] -= 1
            step += 1
        step = 0
        while sum(seats) < house:
            seats[order[step % len(order)]] += 1
            step += 1
    return SeatAllocation(labels=_labels(game.n, labels), votes=game.weights, seats=tuple(seats),
                          house=house, method=kind.value, quota=game.quota, power=power)


@dataclass(frozen=True)
class InverseDesign:
    quota: Fraction
    game: WeightedGame
    power: PowerVector
    objective: Fraction
    candidates: int

    def to_json(self) -> dict:
        return {
            'quota': rational(self.quota),
            'game': format_game(self.game),
            'power': [rational(p) for p in self.power],
            'objective': rational(self.objective),
            'candidates': self.candidates,
        }


def _normalized_target(target: Sequence) -> tuple[Fraction, ...]:
    values = tuple(Fraction(t) for t in target)
    if not values:
        raise InvalidInputError('empty target vector')
    if any(v < 0 for v in values):
        raise InvalidInputError('target has a negative entry')
    total = sum(values, Fraction(0))
    # rounded published vectors rarely sum to exactly 1
    if total <= 0 or abs(total - 1) > TARGET_TOLERANCE:
        raise InvalidInputError(f'target must sum to 1, sums to {float(total)}')
    return tuple(v / total for v in values)


def _power_of(game: WeightedGame, kind: IndexKind) -> PowerVector:
    return compute_index(game, kind)


def inverse_design(target: Sequence, kind=IndexKind.AWI, step=Fraction(1, 100),
                   workers: int | None = None) -> InverseDesign:
    """Grid search for the quota whose game best reproduces `target`.

    Weights are the target itself; quotas k*step with max(target) < q <= 1
    are scanned so that no single voter wins alone. The objective is the
    sum of squared deviations between power and target; ties go to the
    smaller quota.
    """
    kind = IndexKind(kind)
    step = Fraction(step)
    if step <= 0 or step > 1:
        raise InvalidInputError('grid step must lie in (0, 1]')
    weights = _normalized_target(target)
    first = int(max(weights) / step) + 1
    last = int(ceil(1 / step))
    quotas = [k * step for k in range(first, last + 1) if k * step <= 1]

    by_table: dict[bytes, WeightedGame] = {}
    table_of: list[tuple[Fraction, bytes]] = []
    for quota in quotas:
        game = WeightedGame(quota=quota, weights=weights)
        table = game.simple.table
        by_table.setdefault(table, game)
        table_of.append((quota, table))
    if not table_of:
        raise NoFeasibleDesignError(f'no quota on the grid of step {step} exceeds the largest target weight')

    tables = list(by_table)
    logger.info('Inverse design: %d quotas, %d distinct games', len(quotas), len(tables))
    powers = dict(zip(tables, parallel_map(partial(_power_of, kind=kind), [by_table[t] for t in tables], workers)))

    best = None
    for quota, table in table_of:
        power = powers[table]
        objective = sum(((p - t) ** 2 for p, t in zip(power, weights)), Fraction(0))
        if best is None or objective < best[0]:
            best = (objective, quota, table)
    objective, quota, table = best
    return InverseDesign(
        quota=quota,
        game=WeightedGame(quota=quota, weights=weights),
        power=powers[table],
        objective=objective,
        candidates=len(quotas),
    )
