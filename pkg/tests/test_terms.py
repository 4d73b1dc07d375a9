import pytest

from kgqa.terms import (
    Term,
    TermError,
    Triple,
    blank,
    iri,
    literal,
    term_from_json,
    term_to_json,
)


def test_literal_cannot_have_datatype_and_language():
    with pytest.raises(TermError):
        Term("literal", "x", datatype="http://www.w3.org/2001/XMLSchema#string", language="en")


def test_iri_must_be_absolute():
    with pytest.raises(TermError):
        iri("relative/path")
    iri("urn:uuid:1234")
    iri("http://example.org/a")


def test_iri_cannot_carry_literal_fields():
    with pytest.raises(TermError):
        Term("iri", "http://example.org/a", language="en")


def test_language_tag_lowercased():
    assert literal("x", language="EN-Latn").language == "en-latn"


def test_bad_language_tag_rejected():
    with pytest.raises(TermError):
        literal("x", language="not a tag")


def test_effective_datatype():
    assert literal("x").effective_datatype().endswith("#string")
    assert literal("x", language="en").effective_datatype().endswith("langString")
    assert literal("1", datatype="http://www.w3.org/2001/XMLSchema#integer").effective_datatype().endswith("#integer")


def test_triple_subject_never_literal():
    with pytest.raises(TermError):
        Triple(literal("x"), iri("http://example.org/p"), literal("y"))


def test_triple_predicate_always_iri():
    with pytest.raises(TermError):
        Triple(blank("b"), blank("p"), literal("y"))
    Triple(blank("b"), iri("http://example.org/p"), blank("c"))


def test_term_json_round_trip():
    for term in (
        iri("http://example.org/a"),
        blank("b0"),
        literal("x"),
        literal("1", datatype="http://www.w3.org/2001/XMLSchema#integer"),
        literal("hallo", language="de"),
    ):
        assert term_from_json(term_to_json(term)) == term
