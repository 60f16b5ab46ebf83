"""
Weighted and simple voting games.

A coalition is an int bitmask: voter i (1-based) is bit i-1. Games compare
equal when their winning-set tables are equal, whatever representation
produced them.
"""
from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable, Sequence, Union

from voting import conf
from voting.exceptions import (
    CapacityError,
    GameParseError,
    InvalidInputError,
    NotCompleteError,
)

logger = logging.getLogger(__name__)

Coalition = int

_RATIONAL = re.compile(r'^[+-]?\d+(/\d+)?$')
_GAME_TEXT = re.compile(r'^\[([^;\[\]]+);([^;\[\]]*)\]$')


def coalition(*voters: int) -> Coalition:
    """Bitmask for the given 1-based voters."""
    mask = 0
    for voter in voters:
        if voter < 1:
            raise InvalidInputError(f'voter index must be >= 1, got {voter}')
        mask |= 1 << (voter - 1)
    return mask


def members(mask: Coalition) -> tuple[int, ...]:
    """1-based voters in a coalition, ascending."""
    voters = []
    i = 1
    while mask:
        if mask & 1:
            voters.append(i)
        mask >>= 1
        i += 1
    return tuple(voters)


def coalition_weight(weights: Sequence, mask: Coalition):
    return sum((weights[i - 1] for i in members(mask)), Fraction(0))


def check_coalition_cap(n: int) -> None:
    cap = conf.get('POWERPOLY_COALITION_CAP')
    if n > cap:
        raise CapacityError(f'{n} voters exceed the coalition scan cap of {cap}')


def _to_fraction(value, what: str) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        token = re.sub(r'\s+', '', value)
        if not _RATIONAL.match(token):
            raise GameParseError(f'{what} {value!r} is not an integer or p/q rational')
        try:
            return Fraction(token)
        except ZeroDivisionError:
            raise GameParseError(f'{what} {value!r} has a zero denominator') from None
    raise GameParseError(f'{what} {value!r} is not an integer or p/q rational')


@dataclass(frozen=True)
class CoalitionFrontiers:
    """Minimal winning and maximal losing antichains of a game."""
    n: int
    minimal_winning: tuple[Coalition, ...]
    maximal_losing: tuple[Coalition, ...]

    def as_members(self) -> dict[str, list[tuple[int, ...]]]:
        return {
            'minimal_winning': [members(s) for s in self.minimal_winning],
            'maximal_losing': [members(t) for t in self.maximal_losing],
        }


@dataclass(frozen=True)
class VoterClassification:
    dummies: frozenset[int]
    vetoers: frozenset[int]
    dictator: int | None = None


class Verdict(str, Enum):
    MORE = 'strictly-more'
    LESS = 'strictly-less'
    EQUIVALENT = 'equivalent'
    INCOMPARABLE = 'incomparable'

    def flipped(self) -> 'Verdict':
        if self is Verdict.MORE:
            return Verdict.LESS
        if self is Verdict.LESS:
            return Verdict.MORE
        return self


@dataclass(frozen=True)
class TypePartition:
    """Equivalence classes of voters, most desirable class first.

    Dummies, when present, form the trailing class.
    """
    classes: tuple[tuple[int, ...], ...]
    dummy_class: bool = False

    @property
    def t(self) -> int:
        return len(self.classes)

    @property
    def active_classes(self) -> tuple[tuple[int, ...], ...]:
        return self.classes[:-1] if self.dummy_class else self.classes


@dataclass(frozen=True)
class DesirabilityRelation:
    n: int
    verdicts: dict
    partition: TypePartition

    def verdict(self, i: int, j: int) -> Verdict:
        if i == j:
            return Verdict.EQUIVALENT
        if i < j:
            return self.verdicts[(i, j)]
        return self.verdicts[(j, i)].flipped()

    @property
    def is_complete(self) -> bool:
        return all(v is not Verdict.INCOMPARABLE for v in self.verdicts.values())

    def incomparable_pairs(self) -> list[tuple[int, int]]:
        return sorted(pair for pair, v in self.verdicts.items() if v is Verdict.INCOMPARABLE)


@dataclass(frozen=True)
class ShiftFrontiers:
    shift_minimal_winning: tuple[Coalition, ...]
    shift_maximal_losing: tuple[Coalition, ...]


def _member_key(mask: Coalition) -> tuple:
    return (bin(mask).count('1'), members(mask))


def _scan_frontiers(n: int, table: bytes) -> CoalitionFrontiers:
    bits = [1 << i for i in range(n)]
    minimal, maximal = [], []
    for mask in range(1 << n):
        if table[mask]:
            if all(not table[mask ^ b] for b in bits if mask & b):
                minimal.append(mask)
        elif all(table[mask | b] for b in bits if not mask & b):
            maximal.append(mask)
    return CoalitionFrontiers(
        n=n,
        minimal_winning=tuple(sorted(minimal, key=_member_key)),
        maximal_losing=tuple(sorted(maximal, key=_member_key)),
    )


@dataclass(frozen=True, eq=False)
class SimpleGame:
    """Monotone simple game given by its full winning table."""
    n: int
    table: bytes

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInputError('a game needs at least one voter')
        if len(self.table) != 1 << self.n:
            raise InvalidInputError('winning table size does not match the voter count')
        if self.table[0] or not self.table[-1]:
            raise InvalidInputError('the empty coalition must lose and the grand coalition must win')

    @classmethod
    def from_minimal_winning(cls, n: int, minimal: Iterable[Coalition]) -> 'SimpleGame':
        check_coalition_cap(n)
        minimal = [m for m in minimal]
        table = bytearray(1 << n)
        for mask in range(1 << n):
            if any(mask & m == m for m in minimal):
                table[mask] = 1
        return cls(n=n, table=bytes(table))

    @classmethod
    def from_predicate(cls, n: int, predicate) -> 'SimpleGame':
        check_coalition_cap(n)
        table = bytes(1 if predicate(mask) else 0 for mask in range(1 << n))
        game = cls(n=n, table=table)
        if not game.is_monotone():
            raise InvalidInputError('winning sets are not closed under supersets')
        return game

    @property
    def simple(self) -> 'SimpleGame':
        return self

    def is_winning(self, mask: Coalition) -> bool:
        return bool(self.table[mask])

    def is_monotone(self) -> bool:
        table = self.table
        for mask in range(1 << self.n):
            if table[mask]:
                for i in range(self.n):
                    if not table[mask | (1 << i)]:
                        return False
        return True

    @cached_property
    def frontiers(self) -> CoalitionFrontiers:
        return _scan_frontiers(self.n, self.table)

    def __eq__(self, other):
        if not isinstance(other, (SimpleGame, WeightedGame)):
            return NotImplemented
        return self.n == other.n and self.table == other.simple.table

    def __hash__(self):
        return hash((self.n, self.table))


@dataclass(frozen=True, eq=False)
class WeightedGame:
    """Weighted game [quota; w1, ..., wn] over exact rationals."""
    quota: Fraction
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        quota = _to_fraction(self.quota, 'quota')
        weights = tuple(_to_fraction(w, 'weight') for w in self.weights)
        if not weights:
            raise GameParseError('a game needs at least one voter')
        if quota <= 0:
            raise GameParseError(f'quota must be positive, got {quota}')
        negative = [i for i, w in enumerate(weights, start=1) if w < 0]
        if negative:
            raise GameParseError(f'negative weight for voter {negative[0]}')
        if sum(weights) < quota:
            raise GameParseError(f'quota {quota} exceeds total weight {sum(weights)}')
        object.__setattr__(self, 'quota', quota)
        object.__setattr__(self, 'weights', weights)

    @property
    def n(self) -> int:
        return len(self.weights)

    @cached_property
    def integer_form(self) -> tuple[int, tuple[int, ...]]:
        """Same game with denominators cleared by their LCM."""
        scale = lcm(self.quota.denominator, *(w.denominator for w in self.weights))
        return int(self.quota * scale), tuple(int(w * scale) for w in self.weights)

    @cached_property
    def simple(self) -> SimpleGame:
        check_coalition_cap(self.n)
        quota, weights = self.integer_form
        sums = [0] * (1 << self.n)
        for mask in range(1, 1 << self.n):
            low = mask & -mask
            sums[mask] = sums[mask ^ low] + weights[low.bit_length() - 1]
        return SimpleGame(n=self.n, table=bytes(1 if s >= quota else 0 for s in sums))

    @property
    def table(self) -> bytes:
        return self.simple.table

    def is_winning(self, mask: Coalition) -> bool:
        return eval_coalition(self, mask)

    def __eq__(self, other):
        if not isinstance(other, (SimpleGame, WeightedGame)):
            return NotImplemented
        return self.n == other.n and self.simple.table == other.simple.table

    def __hash__(self):
        return hash((self.n, self.simple.table))

    def __str__(self):
        return format_game(self)


GameLike = Union[SimpleGame, WeightedGame]


def format_game(game: WeightedGame) -> str:
    return '[{};{}]'.format(game.quota, ','.join(str(w) for w in game.weights))


def game_to_json(game: WeightedGame) -> dict:
    return {'quota': str(game.quota), 'weights': [str(w) for w in game.weights]}


def parse_game(text: str) -> WeightedGame:
    """Parse `[q; w1, ..., wn]` or its JSON mirror into a WeightedGame."""
    if not isinstance(text, str):
        raise GameParseError(f'expected game text, got {type(text).__name__}')
    stripped = text.strip()
    if stripped.startswith('{'):
        try:
            payload = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise GameParseError(f'invalid game JSON: {exc}') from exc
        if not isinstance(payload, dict) or 'quota' not in payload or 'weights' not in payload:
            raise GameParseError('game JSON needs "quota" and "weights"')
        weights = payload['weights']
        if not isinstance(weights, list):
            raise GameParseError('"weights" must be a list')
        return WeightedGame(quota=_json_entry(payload['quota']),
                            weights=tuple(_json_entry(w) for w in weights))

    compact = re.sub(r'\s+', '', stripped)
    match = _GAME_TEXT.match(compact)
    if not match:
        raise GameParseError(f'malformed game {text!r}; expected [q; w1, ..., wn]')
    quota_text, weights_text = match.groups()
    if not weights_text:
        raise GameParseError('a game needs at least one voter')
    tokens = weights_text.split(',')
    if any(not token for token in tokens):
        raise GameParseError(f'empty weight entry in {text!r}')
    return WeightedGame(quota=_to_fraction(quota_text, 'quota'),
                        weights=tuple(_to_fraction(t, 'weight') for t in tokens))


def _json_entry(value):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise GameParseError(f'JSON entry {value!r} must be an integer or a "p/q" string')
    return _to_fraction(value, 'entry')


def eval_coalition(game: WeightedGame, mask: Coalition) -> bool:
    if mask < 0 or mask >> game.n:
        raise InvalidInputError(f'coalition {mask:b} is not a subset of {game.n} voters')
    return coalition_weight(game.weights, mask) >= game.quota


def coalition_frontiers(game: GameLike) -> CoalitionFrontiers:
    check_coalition_cap(game.n)
    return game.simple.frontiers


def classify_voters(game: GameLike) -> VoterClassification:
    frontiers = coalition_frontiers(game)
    union, common = 0, (1 << game.n) - 1
    for mask in frontiers.minimal_winning:
        union |= mask
        common &= mask
    dummies = frozenset(i for i in range(1, game.n + 1) if not union >> (i - 1) & 1)
    dictator = None
    if len(frontiers.minimal_winning) == 1 and bin(frontiers.minimal_winning[0]).count('1') == 1:
        dictator = members(frontiers.minimal_winning[0])[0]
    return VoterClassification(dummies=dummies, vetoers=frozenset(members(common)), dictator=dictator)


def _winning_counts(n: int, table: bytes) -> list[int]:
    counts = [0] * n
    for mask in range(1 << n):
        if table[mask]:
            for i in range(n):
                if mask >> i & 1:
                    counts[i] += 1
    return counts


def desirability(game: GameLike) -> DesirabilityRelation:
    """Isbell desirability by scanning every S in N minus {i, j}."""
    check_coalition_cap(game.n)
    n, table = game.n, game.simple.table
    full = (1 << n) - 1
    verdicts = {}
    for i in range(n):
        for j in range(i + 1, n):
            bi, bj = 1 << i, 1 << j
            rest = full & ~(bi | bj)
            i_better = j_better = False
            sub = rest
            while True:
                wi, wj = table[sub | bi], table[sub | bj]
                if wi and not wj:
                    i_better = True
                elif wj and not wi:
                    j_better = True
                if (i_better and j_better) or sub == 0:
                    break
                sub = (sub - 1) & rest
            if i_better and j_better:
                verdict = Verdict.INCOMPARABLE
            elif i_better:
                verdict = Verdict.MORE
            elif j_better:
                verdict = Verdict.LESS
            else:
                verdict = Verdict.EQUIVALENT
            verdicts[(i + 1, j + 1)] = verdict

    # equivalence is transitive, so the first voter of each class represents it
    classes: list[list[int]] = []
    for voter in range(1, n + 1):
        for members_ in classes:
            head = members_[0]
            if verdicts[(head, voter)] is Verdict.EQUIVALENT:
                members_.append(voter)
                break
        else:
            classes.append([voter])

    counts = _winning_counts(n, table)
    classes.sort(key=lambda c: (-counts[c[0] - 1], c[0]))
    dummies = classify_voters(game).dummies
    has_dummy_class = bool(dummies) and set(classes[-1]) == set(dummies)
    partition = TypePartition(classes=tuple(tuple(c) for c in classes), dummy_class=has_dummy_class)
    return DesirabilityRelation(n=n, verdicts=verdicts, partition=partition)


def shift_frontiers(game: GameLike, relation: DesirabilityRelation | None = None) -> ShiftFrontiers:
    """Shift-minimal winning and shift-maximal losing coalitions.

    Shifts only swap voters of different classes, so equivalent voters are
    interchangeable and every class-permutation of a frontier coalition is
    kept.
    """
    relation = relation or desirability(game)
    if not relation.is_complete:
        pairs = ', '.join(f'{i}/{j}' for i, j in relation.incomparable_pairs()[:3])
        raise NotCompleteError(f'game is not complete (incomparable voters {pairs})')
    n, table = game.n, game.simple.table
    rank = [0] * n
    for position, members_ in enumerate(relation.partition.classes):
        for voter in members_:
            rank[voter - 1] = position
    frontiers = coalition_frontiers(game)

    shift_minimal = []
    for mask in frontiers.minimal_winning:
        ok = True
        for i in range(n):
            if not mask >> i & 1:
                continue
            for j in range(n):
                if mask >> j & 1 or rank[i] >= rank[j]:
                    continue
                if table[(mask & ~(1 << i)) | (1 << j)]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            shift_minimal.append(mask)

    shift_maximal = []
    for mask in frontiers.maximal_losing:
        ok = True
        for i in range(n):
            if not mask >> i & 1:
                continue
            for j in range(n):
                if mask >> j & 1 or rank[j] >= rank[i]:
                    continue
                if not table[(mask & ~(1 << i)) | (1 << j)]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            shift_maximal.append(mask)
    return ShiftFrontiers(tuple(shift_minimal), tuple(shift_maximal))


def dual(game: WeightedGame) -> WeightedGame:
    """Dual game [w(N) - q + 1; w] on the integer form."""
    quota, weights = game.integer_form
    return WeightedGame(quota=Fraction(sum(weights) - quota + 1), weights=tuple(Fraction(w) for w in weights))


def dummy_reduce(game: WeightedGame) -> tuple[WeightedGame, tuple[int, ...]]:
    """Drop dummies; the mapping lists the original 1-based voter of each kept column."""
    dummies = classify_voters(game).dummies
    kept = tuple(i for i in range(1, game.n + 1) if i not in dummies)
    if not dummies:
        return game, kept
    reduced = WeightedGame(quota=game.quota, weights=tuple(game.weights[i - 1] for i in kept))
    logger.debug('Reduced %s to %s (dropped dummies %s)', game, reduced, sorted(dummies))
    return reduced, kept


def _normalized_vector(game: GameLike, vector: Sequence) -> tuple[Fraction, ...]:
    if len(vector) != game.n:
        raise InvalidInputError(f'expected {game.n} entries, got {len(vector)}')
    inexact = any(isinstance(v, float) for v in vector)
    values = tuple(Fraction(v) if not isinstance(v, str) else _to_fraction(v, 'entry') for v in vector)
    if any(v < 0 for v in values):
        raise InvalidInputError('weight vector has a negative entry')
    total = sum(values, Fraction(0))
    if (abs(total - 1) > Fraction(1, 10**9)) if inexact else total != 1:
        raise InvalidInputError(f'weight vector must sum to 1, sums to {float(total)}')
    return values


def is_feasible(game: GameLike, weights: Sequence) -> bool:
    """Every minimal winning coalition outweighs every maximal losing one."""
    w = _normalized_vector(game, weights)
    frontiers = coalition_frontiers(game)
    lightest_winning = min(coalition_weight(w, s) for s in frontiers.minimal_winning)
    heaviest_losing = max(coalition_weight(w, t) for t in frontiers.maximal_losing)
    return lightest_winning > heaviest_losing


def is_representation(game: GameLike, quota, weights: Sequence) -> bool:
    w = _normalized_vector(game, weights)
    q = Fraction(quota)
    frontiers = coalition_frontiers(game)
    return (all(coalition_weight(w, s) >= q for s in frontiers.minimal_winning)
            and all(coalition_weight(w, t) < q for t in frontiers.maximal_losing))
