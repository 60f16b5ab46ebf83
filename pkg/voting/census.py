"""
Catalog of weighted games and the integer-representation census.

Catalog games are found by walking the up-sets of the shift order on
coalitions with voters listed by non-increasing desirability, so every
complete game appears exactly once up to relabeling. Each candidate is
tested for weightedness by exact LP and stored as its minimum-sum
integer representation.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import Iterator

from voting import conf, linprog
from voting.exceptions import CapacityError, InvalidInputError, NotWeightedError
from voting.formatting import decimals, rational
from voting.games import (
    SimpleGame,
    WeightedGame,
    coalition_frontiers,
    desirability,
    format_game,
    members,
)
from voting.indices import msri
from voting.parallel import parallel_map

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GameCatalog:
    n: int
    games: tuple[WeightedGame, ...]

    def __len__(self):
        return len(self.games)

    def __iter__(self):
        return iter(self.games)

    def __contains__(self, game) -> bool:
        return self.find(game) is not None

    def find(self, game) -> WeightedGame | None:
        """Catalog entry equal to `game` after sorting its voters by desirability."""
        if game.n != self.n:
            return None
        wanted = canonical_order(game).simple.table
        return next((g for g in self.games if g.simple.table == wanted), None)

    def without_dummies(self) -> list[WeightedGame]:
        return [g for g in self.games if all(w > 0 for w in g.weights)]


@dataclass(frozen=True)
class CensusResult:
    game: WeightedGame
    total: int
    count: int
    average: tuple[Fraction, ...] | None
    include_quota: bool = False

    def to_json(self, places: int = 6) -> dict:
        return {
            'game': format_game(self.game),
            'total': self.total,
            'include_quota': self.include_quota,
            'count': self.count,
            'average': [rational(a) for a in self.average] if self.average else None,
            'decimal': decimals(self.average, places) if self.average else None,
        }


def canonical_order(game: WeightedGame) -> WeightedGame:
    """Same game with voters relabeled by non-increasing desirability."""
    order = [v for members_ in desirability(game).partition.classes for v in members_]
    if order == list(range(1, game.n + 1)):
        return game
    return WeightedGame(quota=game.quota, weights=tuple(game.weights[v - 1] for v in order))


def _shift_rank(mask: int, n: int) -> int:
    return sum(n + 1 - v for v in members(mask))


def _upper_covers(mask: int, n: int) -> list[int]:
    covers = [mask | (1 << i) for i in range(n) if not mask >> i & 1]
    # direct left shifts: voter j+1 replaced by voter j
    for i in range(1, n):
        if mask >> i & 1 and not mask >> (i - 1) & 1:
            covers.append(mask & ~(1 << i) | (1 << (i - 1)))
    return covers


def shift_closed_tables(n: int) -> Iterator[bytes]:
    """Winning tables of every complete game with 1 >= 2 >= ... >= n.

    Coalitions are decided in decreasing shift rank, so each coalition's
    upper covers are settled before it; a coalition may win only when all
    of them win.
    """
    full = (1 << n) - 1
    order = sorted(range(1 << n), key=lambda m: (-_shift_rank(m, n), m))
    covers = {mask: _upper_covers(mask, n) for mask in order}
    table = bytearray(1 << n)

    def visit(k: int):
        if k == len(order):
            yield bytes(table)
            return
        mask = order[k]
        if mask == full:
            table[mask] = 1
            yield from visit(k + 1)
            return
        if mask and all(table[c] for c in covers[mask]):
            table[mask] = 1
            yield from visit(k + 1)
        table[mask] = 0
        yield from visit(k + 1)

    yield from visit(0)


def weighted_representation(game: SimpleGame) -> WeightedGame:
    """Some weighted game with the same winning table, by exact LP."""
    frontiers = coalition_frontiers(game)
    n = game.n
    rows, rhs = [], []
    for mask in frontiers.minimal_winning:
        rows.append([-(mask >> i & 1) for i in range(n)] + [1])
        rhs.append(0)
    for mask in frontiers.maximal_losing:
        rows.append([mask >> i & 1 for i in range(n)] + [-1])
        rhs.append(-1)
    result = linprog.minimize([1] * n + [0], rows, rhs)
    if not result.optimal:
        raise NotWeightedError(f'game with minimal winning coalitions '
                               f'{frontiers.as_members()["minimal_winning"]} is not weighted')
    return WeightedGame(quota=result.x[n], weights=result.x[:n])


def _catalog_entry(table: bytes, n: int) -> WeightedGame | None:
    try:
        candidate = weighted_representation(SimpleGame(n=n, table=table))
    except NotWeightedError:
        return None
    solution = msri(candidate)
    quota, *weights = solution.representations[0]
    return WeightedGame(quota=Fraction(quota), weights=tuple(Fraction(w) for w in weights))


def enumerate_weighted_games(n: int, workers: int | None = None) -> GameCatalog:
    """Every weighted game on exactly n voters (dummies allowed), once per relabeling class."""
    cap = conf.get('POWERPOLY_CENSUS_CAP')
    if n < 1:
        raise InvalidInputError('catalog needs at least one voter')
    if n > cap:
        raise CapacityError(f'catalog for {n} voters exceeds the census cap of {cap}')
    tables = list(shift_closed_tables(n))
    logger.info('Found %d complete games on %d voters', len(tables), n)
    try:
        entries = parallel_map(partial(_catalog_entry, n=n), tables, workers)
    except Exception:
        logger.error('Catalog build for %d voters failed', n, exc_info=True)
        raise
    games = sorted((g for g in entries if g is not None), key=lambda g: (g.quota, g.weights))
    logger.info('Kept %d weighted games on %d voters', len(games), n)
    return GameCatalog(n=n, games=tuple(games))


def catalog_up_to(n: int, workers: int | None = None) -> list[WeightedGame]:
    """Games without dummies on 1..n voters; each game appears once."""
    games: list[WeightedGame] = []
    for size in range(1, n + 1):
        games.extend(enumerate_weighted_games(size, workers).without_dummies())
    return games


def integer_representation_census(game: WeightedGame, total: int, include_quota: bool = False) -> CensusResult:
    """Count integer weight vectors summing to `total` that represent the game.

    A vector counts when some integer quota separates it, that is when the
    lightest minimal winning coalition outweighs the heaviest maximal
    losing one by at least 1. With `include_quota` each valid quota counts
    as its own representation.
    """
    n = game.n
    cap = conf.get('POWERPOLY_CENSUS_TOTAL_CAP')
    if total < n:
        raise InvalidInputError(f'total {total} is below the voter count {n}')
    if total > cap:
        raise CapacityError(f'total {total} exceeds the census cap of {cap}')

    frontiers = coalition_frontiers(game)
    winning = [members(s) for s in frontiers.minimal_winning]
    losing = [members(t) for t in frontiers.maximal_losing]
    classes = desirability(game).partition.classes
    rank = {v: position for position, members_ in enumerate(classes) for v in members_}
    # earlier voters that must be strictly heavier / lighter than voter j
    heavier = [[i for i in range(j) if rank[i + 1] < rank[j + 1]] for j in range(n)]
    lighter = [[i for i in range(j) if rank[i + 1] > rank[j + 1]] for j in range(n)]

    weights = [0] * n
    sums = [0] * n
    count = 0

    def settle() -> None:
        nonlocal count
        lightest = min(sum(weights[v - 1] for v in s) for s in winning)
        heaviest = max(sum(weights[v - 1] for v in t) for t in losing)
        quotas = lightest - heaviest
        if quotas <= 0:
            return
        multiplicity = quotas if include_quota else 1
        count += multiplicity
        for i in range(n):
            sums[i] += multiplicity * weights[i]

    def search(j: int, remaining: int) -> None:
        high = min([remaining] + [weights[i] - 1 for i in heavier[j]])
        low = max([0] + [weights[i] + 1 for i in lighter[j]])
        if j == n - 1:
            if low <= remaining <= high:
                weights[j] = remaining
                settle()
            return
        for value in range(low, high + 1):
            weights[j] = value
            search(j + 1, remaining - value)

    search(0, total)
    average = tuple(Fraction(s, count * total) for s in sums) if count else None
    logger.debug('census of %s at total %d: %d representations', format_game(game), total, count)
    return CensusResult(game=game, total=total, count=count, average=average, include_quota=include_quota)
