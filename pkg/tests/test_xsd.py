import pytest

from kgqa.terms import XSD_NS
from kgqa.xsd import lexical_valid


@pytest.mark.parametrize("value,ok", [
    ("12", True), ("-3", True), ("+7", True), ("abc", False), ("1.5", False), ("", False),
])
def test_integer(value, ok):
    assert lexical_valid(value, XSD_NS + "integer") is ok


@pytest.mark.parametrize("value,ok", [
    ("1.5", True), ("-0.25", True), (".5", True), ("3", True), ("1e3", False), ("x", False),
])
def test_decimal(value, ok):
    assert lexical_valid(value, XSD_NS + "decimal") is ok


@pytest.mark.parametrize("value,ok", [
    ("1e3", True), ("-2.5E-2", True), ("INF", True), ("-INF", True), ("NaN", True),
    ("4.2", True), ("e3", False), ("double", False),
])
def test_double(value, ok):
    assert lexical_valid(value, XSD_NS + "double") is ok


@pytest.mark.parametrize("value,ok", [
    ("true", True), ("false", True), ("1", True), ("0", True), ("TRUE", False), ("yes", False),
])
def test_boolean(value, ok):
    assert lexical_valid(value, XSD_NS + "boolean") is ok


@pytest.mark.parametrize("value,ok", [
    ("2021-06-30", True), ("2021-02-30", False), ("2021-13-01", False),
    ("2021-06-30Z", True), ("2021-06-30+02:00", True), ("21-06-30", False),
])
def test_date(value, ok):
    assert lexical_valid(value, XSD_NS + "date") is ok


@pytest.mark.parametrize("value,ok", [
    ("2021-06-30T12:00:00", True),
    ("2021-06-30T12:00:00.5Z", True),
    ("2021-06-30T24:00:00", True),
    ("2021-06-30T24:00:01", False),
    ("2021-06-30T25:00:00", False),
    ("2021-06-30 12:00:00", False),
])
def test_datetime(value, ok):
    assert lexical_valid(value, XSD_NS + "dateTime") is ok


@pytest.mark.parametrize("value,ok", [
    ("1999", True), ("-0044", True), ("12021", True), ("99", False), ("199A", False),
])
def test_gyear(value, ok):
    assert lexical_valid(value, XSD_NS + "gYear") is ok


@pytest.mark.parametrize("value,ok", [
    ("http://example.org/x", True), ("mailto:a@b.c", True), ("/relative/ok", True),
    ("has space", False), ("tab\tseparated", False),
])
def test_anyuri(value, ok):
    assert lexical_valid(value, XSD_NS + "anyURI") is ok


def test_unchecked_datatypes_pass():
    assert lexical_valid("anything", "http://example.org/customType")
    assert lexical_valid("anything", None)
