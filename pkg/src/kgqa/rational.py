"""Exact rational parsing and formatting.

Weights and scores are fractions end to end; floats appear only at the
presentation boundary. JSON accepts rationals as {"num": int, "den": int},
as decimal strings ("0.25"), or as plain integers, all parsed exactly.
"""

from __future__ import annotations

import decimal
from decimal import Decimal
from fractions import Fraction
from typing import Union

RationalLike = Union[Fraction, int, float, str, dict]


class RationalParseError(ValueError):
    pass


def parse_rational(value: RationalLike) -> Fraction:
    """Parse a JSON-side rational representation exactly."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise RationalParseError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        # JSON numbers arrive as floats; recover the decimal the client wrote
        return Fraction(Decimal(repr(value)))
    if isinstance(value, str):
        try:
            if "/" in value:
                num, den = value.split("/", 1)
                return Fraction(int(num), int(den))
            return Fraction(Decimal(value))
        except (ValueError, ZeroDivisionError, decimal.InvalidOperation) as exc:
            raise RationalParseError(f"not a rational: {value!r}") from exc
    if isinstance(value, dict):
        try:
            return Fraction(int(value["num"]), int(value["den"]))
        except (KeyError, ValueError, TypeError, ZeroDivisionError) as exc:
            raise RationalParseError(f"not a rational: {value!r}") from exc
    raise RationalParseError(f"not a rational: {value!r}")


def decimal_str(value: Fraction, significant_digits: int = 12) -> str:
    """Round-half-even decimal rendering with the given significant digits."""
    if value == 0:
        return "0"
    with decimal.localcontext() as ctx:
        ctx.prec = significant_digits
        d = Decimal(value.numerator) / Decimal(value.denominator)
    text = format(d.normalize(), "f")
    return text


def rational_json(value: Fraction, significant_digits: int = 12) -> dict:
    """Wire form carrying both the exact fraction and a readable decimal."""
    return {
        "num": value.numerator,
        "den": value.denominator,
        "decimal": decimal_str(value, significant_digits),
    }


def fraction_repr(value: Fraction) -> str:
    """Compact exact text, e.g. '19/20' or '1'."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
