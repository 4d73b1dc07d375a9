"""Graph snapshots and precomputed statistics.

A GraphSnapshot is an immutable, deduplicated view of one ingested graph with
its GraphStats. Statistics are brute-force counts over the distinct statement
set, so any metric reading them is insensitive to duplicated input statements.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from . import ntriples, turtle
from .ntriples import ParseError
from .terms import (
    BLANK,
    IRI,
    LITERAL,
    RDF_OBJECT,
    RDF_PREDICATE,
    RDF_STATEMENT,
    RDF_SUBJECT,
    RDF_TYPE,
    RDFS_LABEL,
    SCHEMA_NAME,
    SKOS_PREF_LABEL,
    Term,
    Triple,
)

DEFAULT_LABELING_PREDICATES: Tuple[str, ...] = (RDFS_LABEL, SCHEMA_NAME, SKOS_PREF_LABEL)

_REIFICATION_PREDICATES = frozenset({RDF_SUBJECT, RDF_PREDICATE, RDF_OBJECT})


@dataclass(frozen=True)
class GraphStats:
    """Counts recomputable from the snapshot's distinct statements."""

    triple_count: int
    distinct_subjects: int
    distinct_predicates: int
    distinct_objects: int
    distinct_terms: int
    blank_node_count: int
    literal_count: int
    literals_by_datatype: Dict[str, int]
    label_languages: frozenset[str]
    typed_instance_count: int
    class_instance_counts: Dict[str, int]
    reification_triple_count: int

    def to_json(self) -> dict:
        return {
            "triple_count": self.triple_count,
            "distinct_subjects": self.distinct_subjects,
            "distinct_predicates": self.distinct_predicates,
            "distinct_objects": self.distinct_objects,
            "distinct_terms": self.distinct_terms,
            "blank_node_count": self.blank_node_count,
            "literal_count": self.literal_count,
            "literals_by_datatype": dict(sorted(self.literals_by_datatype.items())),
            "label_languages": sorted(self.label_languages),
            "typed_instance_count": self.typed_instance_count,
            "class_instance_counts": dict(sorted(self.class_instance_counts.items())),
            "reification_triple_count": self.reification_triple_count,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "GraphStats":
        return cls(
            triple_count=doc["triple_count"],
            distinct_subjects=doc["distinct_subjects"],
            distinct_predicates=doc["distinct_predicates"],
            distinct_objects=doc["distinct_objects"],
            distinct_terms=doc["distinct_terms"],
            blank_node_count=doc["blank_node_count"],
            literal_count=doc["literal_count"],
            literals_by_datatype=dict(doc["literals_by_datatype"]),
            label_languages=frozenset(doc["label_languages"]),
            typed_instance_count=doc["typed_instance_count"],
            class_instance_counts=dict(doc["class_instance_counts"]),
            reification_triple_count=doc["reification_triple_count"],
        )


def compute_stats(
    triples: Iterable[Triple],
    labeling_predicates: Sequence[str] = DEFAULT_LABELING_PREDICATES,
) -> GraphStats:
    """Brute-force statistics over the distinct statements in ``triples``."""
    distinct = _dedupe(triples)
    subjects = {t.subject for t in distinct}
    predicates = {t.predicate.value for t in distinct}
    objects = {t.object for t in distinct}
    terms = subjects | objects
    blanks = {t for t in terms if t.kind == BLANK}

    literal_count = 0
    by_datatype: Counter[str] = Counter()
    label_langs: set[str] = set()
    typed: dict[Term, set[str]] = {}
    reified = 0
    labeling = set(labeling_predicates)
    for t in distinct:
        if t.object.kind == LITERAL:
            literal_count += 1
            by_datatype[t.object.effective_datatype()] += 1
            if t.predicate.value in labeling and t.object.language is not None:
                label_langs.add(t.object.language)
        if t.predicate.value == RDF_TYPE and t.object.kind == IRI:
            typed.setdefault(t.subject, set()).add(t.object.value)
        if t.predicate.value in _REIFICATION_PREDICATES or (
            t.predicate.value == RDF_TYPE
            and t.object.kind == IRI
            and t.object.value == RDF_STATEMENT
        ):
            reified += 1

    class_counts: Counter[str] = Counter()
    for classes in typed.values():
        for cls in classes:
            class_counts[cls] += 1

    return GraphStats(
        triple_count=len(distinct),
        distinct_subjects=len(subjects),
        distinct_predicates=len(predicates),
        distinct_objects=len(objects),
        distinct_terms=len(terms),
        blank_node_count=len(blanks),
        literal_count=literal_count,
        literals_by_datatype=dict(by_datatype),
        label_languages=frozenset(label_langs),
        typed_instance_count=len(typed),
        class_instance_counts=dict(class_counts),
        reification_triple_count=reified,
    )


def _dedupe(triples: Iterable[Triple]) -> List[Triple]:
    seen = set()
    out = []
    for t in triples:
        if t not in seen:
            seen.add(t)
            out.append(t)
    return out


@dataclass(frozen=True)
class GraphSnapshot:
    """Immutable ingested graph: distinct triples, provenance and stats."""

    kg_id: str
    triples: Tuple[Triple, ...]
    source: dict
    ingested_at: datetime
    stats: GraphStats = field(compare=False)

    def triple_set(self) -> frozenset[Triple]:
        return frozenset(self.triples)

    def serialize(self) -> str:
        """Canonical N-Triples export (sorted statements, LF line endings)."""
        return ntriples.serialize(self.triples)


def build_snapshot(
    kg_id: str,
    triples: Iterable[Triple],
    source: Optional[dict] = None,
    labeling_predicates: Sequence[str] = DEFAULT_LABELING_PREDICATES,
    ingested_at: Optional[datetime] = None,
) -> GraphSnapshot:
    """Dedupe, canonicalize blank labels and precompute stats."""
    distinct = _dedupe(ntriples.canonicalize_blank_labels(_dedupe(triples)))
    return GraphSnapshot(
        kg_id=kg_id,
        triples=tuple(distinct),
        source=source or {"type": "memory"},
        ingested_at=ingested_at or datetime.now(timezone.utc),
        stats=compute_stats(distinct, labeling_predicates),
    )


def snapshot_from_ntriples(
    data: Union[bytes, str],
    kg_id: str,
    mode: str = "strict",
    source: Optional[dict] = None,
    labeling_predicates: Sequence[str] = DEFAULT_LABELING_PREDICATES,
) -> Tuple[GraphSnapshot, List[ParseError]]:
    """Parse an N-Triples document into a snapshot.

    Strict mode raises SyntaxAbort on the first malformed line; lenient mode
    returns the well-formed statements plus one ParseError per skipped line.
    """
    triples, errors = ntriples.parse(data, mode=mode)
    snap = build_snapshot(
        kg_id,
        triples,
        source=source or {"type": "ntriples"},
        labeling_predicates=labeling_predicates,
    )
    return snap, errors


def snapshot_from_turtle(
    data: Union[bytes, str],
    kg_id: str,
    base_iri: Optional[str] = None,
    mode: str = "strict",
    source: Optional[dict] = None,
    labeling_predicates: Sequence[str] = DEFAULT_LABELING_PREDICATES,
) -> Tuple[GraphSnapshot, List[ParseError]]:
    """Parse a Turtle document into a snapshot; see snapshot_from_ntriples."""
    triples, errors = turtle.parse(data, base_iri=base_iri, mode=mode)
    snap = build_snapshot(
        kg_id,
        triples,
        source=source or {"type": "turtle", "base_iri": base_iri},
        labeling_predicates=labeling_predicates,
    )
    return snap, errors
