"""Rendering helpers: exact `p/q` strings, fixed decimals, vector parsing."""
from decimal import Decimal, ROUND_HALF_EVEN, ROUND_HALF_UP, localcontext
from fractions import Fraction
from typing import Iterable, Sequence

from voting.exceptions import InvalidInputError


def rational(value: Fraction) -> str:
    return str(Fraction(value))


def decimal(value, places: int, rounding=ROUND_HALF_EVEN) -> Decimal:
    """Exact rational rounded to `places` decimals (half-even by default)."""
    value = Fraction(value)
    with localcontext() as ctx:
        ctx.prec = 60
        exact = Decimal(value.numerator) / Decimal(value.denominator)
        return exact.quantize(Decimal(1).scaleb(-places), rounding=rounding)


def decimals(values: Iterable, places: int) -> list[str]:
    return [str(decimal(v, places)) for v in values]


def round_half_up(value) -> int:
    return int(decimal(value, 0, rounding=ROUND_HALF_UP))


def vector_text(values: Sequence[Fraction]) -> str:
    return ' '.join(rational(v) for v in values)


def parse_vector(text: str) -> tuple[Fraction, ...]:
    """Comma- or whitespace-separated integers, p/q rationals or decimals."""
    tokens = [t for t in text.replace(',', ' ').split() if t]
    if not tokens:
        raise InvalidInputError('empty vector')
    try:
        return tuple(Fraction(t) for t in tokens)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInputError(f'cannot parse vector {text!r}: {exc}') from exc


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInputError(f'cannot parse rational {text!r}') from exc
