"""RDF terms and triples.

Immutable value objects shared by the parsers, the statistics layer and the
metric engine. Terms are plain data: an IRI, a blank node label or a literal
with an optional datatype or language tag.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

IRI = "iri"
BLANK = "blank"
LITERAL = "literal"

_SCHEME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:")
_LANGTAG_RE = re.compile(r"^[A-Za-z]{1,8}(-[A-Za-z0-9]{1,8})*$")

# Well-known vocabulary IRIs used across the package.
RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDF_TYPE = RDF_NS + "type"
RDF_STATEMENT = RDF_NS + "Statement"
RDF_SUBJECT = RDF_NS + "subject"
RDF_PREDICATE = RDF_NS + "predicate"
RDF_OBJECT = RDF_NS + "object"
RDF_FIRST = RDF_NS + "first"
RDF_REST = RDF_NS + "rest"
RDF_NIL = RDF_NS + "nil"
RDF_LANGSTRING = RDF_NS + "langString"

XSD_NS = "http://www.w3.org/2001/XMLSchema#"
XSD_STRING = XSD_NS + "string"
XSD_INTEGER = XSD_NS + "integer"
XSD_DECIMAL = XSD_NS + "decimal"
XSD_DOUBLE = XSD_NS + "double"
XSD_BOOLEAN = XSD_NS + "boolean"
XSD_DATE = XSD_NS + "date"
XSD_DATETIME = XSD_NS + "dateTime"
XSD_GYEAR = XSD_NS + "gYear"
XSD_ANYURI = XSD_NS + "anyURI"

RDFS_LABEL = "http://www.w3.org/2000/01/rdf-schema#label"
SKOS_PREF_LABEL = "http://www.w3.org/2004/02/skos/core#prefLabel"
SCHEMA_NAME = "http://schema.org/name"
OWL_SAME_AS = "http://www.w3.org/2002/07/owl#sameAs"
DCT_LICENSE = "http://purl.org/dc/terms/license"
DCT_SOURCE = "http://purl.org/dc/terms/source"
DCT_PROVENANCE = "http://purl.org/dc/terms/provenance"
DCT_MODIFIED = "http://purl.org/dc/terms/modified"
PROV_WAS_DERIVED_FROM = "http://www.w3.org/ns/prov#wasDerivedFrom"
SCHEMA_LICENSE = "http://schema.org/license"
SCHEMA_DATE_MODIFIED = "http://schema.org/dateModified"
CC_LICENSE = "http://creativecommons.org/ns#license"
SEC_PROOF = "https://w3id.org/security#proof"
XMLDSIG_SIGNATURE = "http://www.w3.org/2000/09/xmldsig#Signature"


class TermError(ValueError):
    """Raised when a Term or Triple would violate its invariants."""


@dataclass(frozen=True, slots=True)
class Term:
    """One RDF term: IRI, blank node or literal.

    Literals carry at most one of ``datatype`` (an IRI) or ``language`` (a
    BCP-47 tag, normalized to lowercase). IRI values must be absolute.
    """

    kind: str
    value: str
    datatype: Optional[str] = None
    language: Optional[str] = None

    def __post_init__(self) -> None:
        if self.kind not in (IRI, BLANK, LITERAL):
            raise TermError(f"unknown term kind {self.kind!r}")
        if self.kind == LITERAL:
            if self.datatype is not None and self.language is not None:
                raise TermError("literal cannot carry both datatype and language")
            if self.language is not None:
                if not _LANGTAG_RE.match(self.language):
                    raise TermError(f"malformed language tag {self.language!r}")
                # BCP-47 tags are case-insensitive; lowercase for stable counting.
                object.__setattr__(self, "language", self.language.lower())
        else:
            if self.datatype is not None or self.language is not None:
                raise TermError(f"{self.kind} term cannot carry datatype or language")
            if self.kind == IRI and not _SCHEME_RE.match(self.value):
                raise TermError(f"IRI is not absolute: {self.value!r}")

    @property
    def is_iri(self) -> bool:
        return self.kind == IRI

    @property
    def is_blank(self) -> bool:
        return self.kind == BLANK

    @property
    def is_literal(self) -> bool:
        return self.kind == LITERAL

    def effective_datatype(self) -> str:
        """Datatype of a literal under RDF 1.1 rules (plain -> xsd:string)."""
        if self.kind != LITERAL:
            raise TermError("effective_datatype applies to literals only")
        if self.language is not None:
            return RDF_LANGSTRING
        return self.datatype or XSD_STRING


def iri(value: str) -> Term:
    return Term(IRI, value)


def blank(label: str) -> Term:
    return Term(BLANK, label)


def literal(value: str, datatype: Optional[str] = None, language: Optional[str] = None) -> Term:
    return Term(LITERAL, value, datatype=datatype, language=language)


@dataclass(frozen=True, slots=True)
class Triple:
    """A subject-predicate-object statement.

    Subjects are IRIs or blank nodes, predicates always IRIs, objects any term.
    """

    subject: Term
    predicate: Term
    object: Term

    def __post_init__(self) -> None:
        if self.subject.kind == LITERAL:
            raise TermError("triple subject cannot be a literal")
        if self.predicate.kind != IRI:
            raise TermError("triple predicate must be an IRI")


def term_to_json(term: Term) -> dict:
    doc: dict = {"kind": term.kind, "value": term.value}
    if term.datatype is not None:
        doc["datatype"] = term.datatype
    if term.language is not None:
        doc["language"] = term.language
    return doc


def term_from_json(doc: dict) -> Term:
    return Term(
        doc["kind"],
        doc["value"],
        datatype=doc.get("datatype"),
        language=doc.get("language"),
    )

