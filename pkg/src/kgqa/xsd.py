"""Lexical-form checks for common XSD datatypes.

Used by the syntactic-validity metric. Datatypes outside the checked set are
accepted as valid, since no grammar is known for them here.
"""

from __future__ import annotations

import re
from datetime import date
from typing import Callable, Dict, Optional

from .terms import (
    XSD_ANYURI,
    XSD_BOOLEAN,
    XSD_DATE,
    XSD_DATETIME,
    XSD_DECIMAL,
    XSD_DOUBLE,
    XSD_GYEAR,
    XSD_INTEGER,
)

_INTEGER_RE = re.compile(r"^[+-]?\d+$")
_DECIMAL_RE = re.compile(r"^[+-]?(?:\d+(?:\.\d*)?|\.\d+)$")
_DOUBLE_RE = re.compile(r"^(?:[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?|[+-]?INF|NaN)$")
_BOOLEAN_RE = re.compile(r"^(?:true|false|1|0)$")
_TZ = r"(?:Z|[+-](?:0\d|1[0-4]):[0-5]\d)?"
_DATE_RE = re.compile(r"^(-?\d{4,})-(\d{2})-(\d{2})" + _TZ + "$")
_DATETIME_RE = re.compile(
    r"^(-?\d{4,})-(\d{2})-(\d{2})T(\d{2}):([0-5]\d):([0-5]\d)(\.\d+)?" + _TZ + "$"
)
_GYEAR_RE = re.compile(r"^-?\d{4,}" + _TZ + "$")
_ANYURI_FORBIDDEN = set('<>"{}|\\^`') | {chr(c) for c in range(0x21)}


def _calendar_ok(year: int, month: int, day: int) -> bool:
    try:
        date(min(max(abs(year), 1), 9999), month, day)
        return True
    except ValueError:
        return False


def _check_date(lexical: str) -> bool:
    m = _DATE_RE.match(lexical)
    if not m:
        return False
    return _calendar_ok(int(m.group(1)), int(m.group(2)), int(m.group(3)))


def _check_datetime(lexical: str) -> bool:
    m = _DATETIME_RE.match(lexical)
    if not m:
        return False
    if not _calendar_ok(int(m.group(1)), int(m.group(2)), int(m.group(3))):
        return False
    hour = int(m.group(4))
    if hour > 24:
        return False
    if hour == 24:
        # 24:00:00 marks end of day and allows no fraction past midnight
        frac = m.group(7)
        frac_zero = frac is None or frac[1:].strip("0") == ""
        return m.group(5) == "00" and m.group(6) == "00" and frac_zero
    return True


def _check_anyuri(lexical: str) -> bool:
    return not any(ch in _ANYURI_FORBIDDEN for ch in lexical)


_CHECKERS: Dict[str, Callable[[str], bool]] = {
    XSD_INTEGER: lambda s: bool(_INTEGER_RE.match(s)),
    XSD_DECIMAL: lambda s: bool(_DECIMAL_RE.match(s)),
    XSD_DOUBLE: lambda s: bool(_DOUBLE_RE.match(s)),
    XSD_BOOLEAN: lambda s: bool(_BOOLEAN_RE.match(s)),
    XSD_DATE: _check_date,
    XSD_DATETIME: _check_datetime,
    XSD_GYEAR: lambda s: bool(_GYEAR_RE.match(s)),
    XSD_ANYURI: _check_anyuri,
}

CHECKED_DATATYPES = frozenset(_CHECKERS)


def lexical_valid(lexical: str, datatype: Optional[str]) -> bool:
    """True when the lexical form conforms to its datatype, or is unchecked."""
    if datatype is None:
        return True
    checker = _CHECKERS.get(datatype)
    if checker is None:
        return True
    return checker(lexical)
