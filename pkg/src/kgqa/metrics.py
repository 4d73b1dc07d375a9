"""Quantitative metric scoring and qualitative judgment recording.

Every scorer returns MetricScore records with values in [0,1]. Ratio metrics
carry their exact integer numerator and denominator; values are fractions end
to end. Missing evidence never raises: the affected metric comes back marked
not_applicable so aggregation can exclude and renormalize.

Vacuous cases follow one rule: violation-style metrics with nothing to govern
score 1 (absence of violations), while presence-style metrics with an empty
population come back not_applicable (absence of evidence).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from . import xsd
from .catalog import QL, QN, resolve_metric
from .probe import EndpointConfig, ProbeReport
from .snapshot import GraphSnapshot
from .terms import (
    CC_LICENSE,
    DCT_LICENSE,
    DCT_MODIFIED,
    DCT_PROVENANCE,
    DCT_SOURCE,
    IRI,
    LITERAL,
    OWL_SAME_AS,
    PROV_WAS_DERIVED_FROM,
    RDF_LANGSTRING,
    RDF_TYPE,
    SCHEMA_DATE_MODIFIED,
    SCHEMA_LICENSE,
    SEC_PROOF,
    XMLDSIG_SIGNATURE,
    XSD_NS,
    Term,
    Triple,
    term_from_json,
    term_to_json,
)

ZERO = Fraction(0)
ONE = Fraction(1)

RDF_MEDIA_TYPES = frozenset({
    "text/turtle",
    "application/n-triples",
    "application/rdf+xml",
    "application/ld+json",
    "application/n-quads",
    "text/n3",
})


class JudgmentError(ValueError):
    """Judgment for a non-QL metric or with an out-of-range value."""


@dataclass(frozen=True)
class MetricScore:
    """One scored metric: value in [0,1] or a not_applicable marker."""

    metric_id: str
    value: Optional[Fraction]
    kind: str
    evidence_summary: str
    numerator: Optional[int] = None
    denominator: Optional[int] = None
    computed_at: Optional[datetime] = None
    not_applicable: bool = False

    def __post_init__(self) -> None:
        if self.not_applicable:
            if self.value is not None:
                raise ValueError("not_applicable score cannot carry a value")
        else:
            if self.value is None or not (ZERO <= self.value <= ONE):
                raise ValueError(f"{self.metric_id}: value outside [0,1]: {self.value}")
            if self.numerator is not None and self.denominator is not None:
                if self.value != Fraction(self.numerator, self.denominator):
                    raise ValueError(f"{self.metric_id}: value != numerator/denominator")

    def to_json(self) -> dict:
        doc: dict = {
            "metric_id": self.metric_id,
            "kind": self.kind,
            "not_applicable": self.not_applicable,
            "evidence_summary": self.evidence_summary,
        }
        if self.value is not None:
            doc["value"] = {"num": self.value.numerator, "den": self.value.denominator}
        if self.numerator is not None:
            doc["numerator"] = self.numerator
        if self.denominator is not None:
            doc["denominator"] = self.denominator
        if self.computed_at is not None:
            doc["computed_at"] = self.computed_at.isoformat()
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "MetricScore":
        value = None
        if "value" in doc:
            value = Fraction(doc["value"]["num"], doc["value"]["den"])
        computed_at = None
        if "computed_at" in doc:
            computed_at = datetime.fromisoformat(doc["computed_at"])
        return cls(
            metric_id=doc["metric_id"],
            value=value,
            kind=doc["kind"],
            evidence_summary=doc.get("evidence_summary", ""),
            numerator=doc.get("numerator"),
            denominator=doc.get("denominator"),
            computed_at=computed_at,
            not_applicable=doc.get("not_applicable", False),
        )


@dataclass(frozen=True)
class GoldStandard:
    """Task-side expectations for completeness, correctness and amount."""

    gold_id: str
    entities: FrozenSet[str] = frozenset()
    property_expectations: Tuple[Tuple[str, str], ...] = ()
    fact_expectations: Tuple[Tuple[str, str, Term], ...] = ()
    required_languages: FrozenSet[str] = frozenset()
    required_instance_count: int = 1

    def __post_init__(self) -> None:
        if self.required_instance_count < 1:
            raise ValueError("required_instance_count must be >= 1")

    def to_json(self) -> dict:
        return {
            "gold_id": self.gold_id,
            "entities": sorted(self.entities),
            "property_expectations": [list(p) for p in self.property_expectations],
            "fact_expectations": [
                [e, p, term_to_json(v)] for e, p, v in self.fact_expectations
            ],
            "required_languages": sorted(self.required_languages),
            "required_instance_count": self.required_instance_count,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "GoldStandard":
        return cls(
            gold_id=doc["gold_id"],
            entities=frozenset(doc.get("entities", ())),
            property_expectations=tuple(
                (e, p) for e, p in doc.get("property_expectations", ())
            ),
            fact_expectations=tuple(
                (e, p, term_from_json(v)) for e, p, v in doc.get("fact_expectations", ())
            ),
            required_languages=frozenset(
                lang.lower() for lang in doc.get("required_languages", ())
            ),
            required_instance_count=doc.get("required_instance_count", 1),
        )


@dataclass(frozen=True)
class SchemaSpec:
    """Declared schema constraints consumed by the consistency metrics."""

    schema_id: str
    disjoint_class_pairs: Tuple[Tuple[str, str], ...] = ()
    inverse_functional_properties: FrozenSet[str] = frozenset()
    property_ranges: Dict[str, str] = field(default_factory=dict)
    functional_properties: FrozenSet[str] = frozenset()

    def __post_init__(self) -> None:
        for a, b in self.disjoint_class_pairs:
            if a == b:
                raise ValueError(f"disjoint pair must name two distinct classes: {a}")

    def to_json(self) -> dict:
        return {
            "schema_id": self.schema_id,
            "disjoint_class_pairs": [sorted(p) for p in self.disjoint_class_pairs],
            "inverse_functional_properties": sorted(self.inverse_functional_properties),
            "property_ranges": dict(sorted(self.property_ranges.items())),
            "functional_properties": sorted(self.functional_properties),
        }

    @classmethod
    def from_json(cls, doc: dict) -> "SchemaSpec":
        return cls(
            schema_id=doc["schema_id"],
            disjoint_class_pairs=tuple(
                (a, b) for a, b in doc.get("disjoint_class_pairs", ())
            ),
            inverse_functional_properties=frozenset(
                doc.get("inverse_functional_properties", ())
            ),
            property_ranges=dict(doc.get("property_ranges", {})),
            functional_properties=frozenset(doc.get("functional_properties", ())),
        )


@dataclass(frozen=True)
class Judgment:
    """A rater's [0,1] assessment of one qualitative metric."""

    metric_id: str
    value: Fraction
    rater: str
    rationale: str = ""
    recorded_at: Optional[datetime] = None

    def to_json(self) -> dict:
        doc = {
            "metric_id": self.metric_id,
            "value": {"num": self.value.numerator, "den": self.value.denominator},
            "rater": self.rater,
            "rationale": self.rationale,
        }
        if self.recorded_at is not None:
            doc["recorded_at"] = self.recorded_at.isoformat()
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "Judgment":
        recorded_at = None
        if "recorded_at" in doc:
            recorded_at = datetime.fromisoformat(doc["recorded_at"])
        return cls(
            metric_id=doc["metric_id"],
            value=Fraction(doc["value"]["num"], doc["value"]["den"]),
            rater=doc["rater"],
            rationale=doc.get("rationale", ""),
            recorded_at=recorded_at,
        )


@dataclass(frozen=True)
class MetricConfig:
    """Configurable predicate lists and thresholds with stated defaults."""

    provenance_predicates: Tuple[str, ...] = (
        PROV_WAS_DERIVED_FROM,
        DCT_SOURCE,
        DCT_PROVENANCE,
    )
    linking_predicates: Tuple[str, ...] = (OWL_SAME_AS,)
    license_predicates: Tuple[str, ...] = (
        DCT_LICENSE,
        SCHEMA_LICENSE,
        "https://schema.org/license",
        CC_LICENSE,
    )
    modification_predicates: Tuple[str, ...] = (
        DCT_MODIFIED,
        SCHEMA_DATE_MODIFIED,
        "https://schema.org/dateModified",
    )
    signature_predicates: Tuple[str, ...] = (SEC_PROOF, XMLDSIG_SIGNATURE)
    unknown_placeholders: FrozenSet[str] = frozenset({"", "unknown", "n/a"})
    opaque_local_pattern: str = r"[A-Za-z]?[0-9]+"
    decay_horizon_days: int = 365
    own_namespaces: Tuple[str, ...] = ()


DEFAULT_CONFIG = MetricConfig()


def _now() -> datetime:
    return datetime.now(timezone.utc)


def _na(metric_id: str, reason: str, kind: str = QN) -> MetricScore:
    return MetricScore(
        metric_id=metric_id,
        value=None,
        kind=kind,
        evidence_summary=reason,
        computed_at=_now(),
        not_applicable=True,
    )


def _ratio(metric_id: str, num: int, den: int, summary: str) -> MetricScore:
    return MetricScore(
        metric_id=metric_id,
        value=Fraction(num, den),
        kind=QN,
        evidence_summary=summary,
        numerator=num,
        denominator=den,
        computed_at=_now(),
    )


def _boolean(metric_id: str, ok: bool, summary: str) -> MetricScore:
    return MetricScore(
        metric_id=metric_id,
        value=ONE if ok else ZERO,
        kind=QN,
        evidence_summary=summary,
        computed_at=_now(),
    )


def _vacuous(metric_id: str, summary: str) -> MetricScore:
    return MetricScore(
        metric_id=metric_id,
        value=ONE,
        kind=QN,
        evidence_summary=summary + " (no governed statements)",
        computed_at=_now(),
    )


def _value(metric_id: str, value: Fraction, summary: str) -> MetricScore:
    return MetricScore(
        metric_id=metric_id,
        value=value,
        kind=QN,
        evidence_summary=summary,
        computed_at=_now(),
    )


# -- accessibility -----------------------------------------------------------


def _license_present(
    snapshot: Optional[GraphSnapshot],
    config: Optional[EndpointConfig],
    mc: MetricConfig,
) -> Optional[bool]:
    """True/False from available evidence, None when there is none at all."""
    if snapshot is None and config is None:
        return None
    if config is not None and config.license_iri_declared:
        return True
    if snapshot is not None:
        preds = set(mc.license_predicates)
        return any(t.predicate.value in preds for t in snapshot.triples)
    return False


def score_accessibility(
    report: Optional[ProbeReport],
    snapshot: Optional[GraphSnapshot] = None,
    config: Optional[EndpointConfig] = None,
    metric_config: MetricConfig = DEFAULT_CONFIG,
) -> List[MetricScore]:
    scores: List[MetricScore] = []
    if report is None:
        scores.append(_na("accessibility.available", "no probe report"))
        scores.append(_na("accessibility.sparql_endpoint", "no probe report"))
        scores.append(_na("accessibility.retrievable", "no probe report"))
        scores.append(_na("accessibility.content_negotiation", "no probe report"))
    else:
        scores.append(_boolean(
            "accessibility.available", report.available,
            "an endpoint or dump URL answered" if report.available
            else "no configured URL answered",
        ))
        scores.append(_boolean(
            "accessibility.sparql_endpoint", report.sparql_ok,
            "trivial query answered" if report.sparql_ok else "no working SPARQL endpoint",
        ))
        deref = report.dereference_counts()
        if deref is None:
            scores.append(_na("accessibility.retrievable", "no sample IRIs probed"))
        else:
            ok, total = deref
            scores.append(_ratio(
                "accessibility.retrievable", ok, total,
                f"{ok}/{total} sample IRIs dereferenced to RDF",
            ))
        conneg = report.conneg_counts()
        if conneg is None:
            scores.append(_na("accessibility.content_negotiation", "no media types probed"))
        else:
            ok, total = conneg
            scores.append(_ratio(
                "accessibility.content_negotiation", ok, total,
                f"{ok}/{total} requested media types honored",
            ))
    lic = _license_present(snapshot, config, metric_config)
    if lic is None:
        scores.append(_na("accessibility.license", "no snapshot and no declaration"))
    else:
        scores.append(_boolean(
            "accessibility.license", lic,
            "license statement or declaration found" if lic else "no license found",
        ))
    return scores


# -- accuracy ----------------------------------------------------------------


def score_accuracy(
    snapshot: Optional[GraphSnapshot],
    schema: Optional[SchemaSpec],
) -> List[MetricScore]:
    scores: List[MetricScore] = []
    if snapshot is None:
        scores.append(_na("accuracy.syntactic_validity", "no snapshot"))
    else:
        literals = [t.object for t in snapshot.triples if t.object.kind == LITERAL]
        if not literals:
            scores.append(_vacuous("accuracy.syntactic_validity", "no literals"))
        else:
            valid = sum(1 for lit in literals if xsd.lexical_valid(lit.value, lit.datatype))
            scores.append(_ratio(
                "accuracy.syntactic_validity", valid, len(literals),
                f"{valid}/{len(literals)} literals lexically valid",
            ))
    if snapshot is None or schema is None:
        scores.append(_na("accuracy.semantic_validity", "snapshot or schema missing"))
    else:
        violations, governed = _semantic_violations(snapshot, schema)
        if governed == 0:
            scores.append(_vacuous("accuracy.semantic_validity", "no statements governed"))
        else:
            scores.append(_ratio(
                "accuracy.semantic_validity", governed - violations, governed,
                f"{violations} violation(s) over {governed} governed statements",
            ))
    return scores


def _semantic_violations(snapshot: GraphSnapshot, schema: SchemaSpec) -> Tuple[int, int]:
    """(violations, governed statements) for functional + range constraints.

    Multi-valued functional properties count one violation per offending
    subject; range checks count one per offending statement.
    """
    func_values: Dict[Tuple[Term, str], set] = {}
    governed = 0
    violations = 0
    for t in snapshot.triples:
        p = t.predicate.value
        if p in schema.functional_properties:
            governed += 1
            func_values.setdefault((t.subject, p), set()).add(t.object)
        if p in schema.property_ranges:
            governed += 1
            if _violates_range(snapshot, t.object, schema.property_ranges[p]):
                violations += 1
    violations += sum(1 for values in func_values.values() if len(values) > 1)
    return violations, governed


def _violates_range(snapshot: GraphSnapshot, obj: Term, expected: str) -> bool:
    if expected.startswith(XSD_NS) or expected == RDF_LANGSTRING:
        # datatype range: the object must be a literal of exactly that type
        if obj.kind != LITERAL:
            return True
        return obj.effective_datatype() != expected
    # class range: literals always violate; untyped objects pass (open world)
    if obj.kind == LITERAL:
        return True
    types = {
        t.object.value
        for t in snapshot.triples
        if t.subject == obj and t.predicate.value == RDF_TYPE and t.object.kind == IRI
    }
    return bool(types) and expected not in types


# -- amount, believability, completeness --------------------------------------


def score_appropriate_amount(
    snapshot: Optional[GraphSnapshot],
    gold: Optional[GoldStandard],
) -> MetricScore:
    if snapshot is None or gold is None:
        return _na("appropriate_amount.instance_amount", "snapshot or gold standard missing")
    have = snapshot.stats.typed_instance_count
    need = gold.required_instance_count
    if have >= need:
        return _ratio(
            "appropriate_amount.instance_amount", need, need,
            f"{have} typed instances meet the required {need} (capped at 1)",
        )
    return _ratio(
        "appropriate_amount.instance_amount", have, need,
        f"{have} of {need} required typed instances",
    )


def score_believability(
    snapshot: Optional[GraphSnapshot],
    judgments: Sequence[Judgment] = (),
    metric_config: MetricConfig = DEFAULT_CONFIG,
) -> List[MetricScore]:
    scores: List[MetricScore] = []
    scores.append(_provenance_fraction(
        "believability.provenance", snapshot, metric_config,
    ))
    scores.append(judgment_score("believability.trustworthy", judgments))
    if snapshot is None:
        scores.append(_na("believability.no_unknown_values", "no snapshot"))
    else:
        literals = [t.object for t in snapshot.triples if t.object.kind == LITERAL]
        if not literals:
            scores.append(_vacuous("believability.no_unknown_values", "no literals"))
        else:
            placeholders = metric_config.unknown_placeholders
            bad = sum(1 for lit in literals if lit.value.strip().lower() in placeholders)
            scores.append(_ratio(
                "believability.no_unknown_values", len(literals) - bad, len(literals),
                f"{bad} empty or placeholder literal(s) of {len(literals)}",
            ))
    return scores


def _provenance_fraction(
    metric_id: str,
    snapshot: Optional[GraphSnapshot],
    mc: MetricConfig,
) -> MetricScore:
    if snapshot is None:
        return _na(metric_id, "no snapshot")
    subjects = {t.subject for t in snapshot.triples}
    if not subjects:
        return _na(metric_id, "empty graph")
    preds = set(mc.provenance_predicates)
    covered = {t.subject for t in snapshot.triples if t.predicate.value in preds}
    return _ratio(
        metric_id, len(covered), len(subjects),
        f"{len(covered)}/{len(subjects)} subjects carry provenance statements",
    )


def _typed_instances(snapshot: GraphSnapshot) -> set:
    return {
        t.subject
        for t in snapshot.triples
        if t.predicate.value == RDF_TYPE and t.object.kind == IRI
    }


def score_completeness(
    snapshot: Optional[GraphSnapshot],
    gold: Optional[GoldStandard],
    metric_config: MetricConfig = DEFAULT_CONFIG,
) -> List[MetricScore]:
    scores: List[MetricScore] = []
    if snapshot is None or gold is None or not gold.property_expectations:
        scores.append(_na("completeness.data", "no property expectations"))
    else:
        present = {
            (t.subject.value, t.predicate.value)
            for t in snapshot.triples
            if t.subject.kind == IRI
        }
        satisfied = sum(1 for pair in gold.property_expectations if pair in present)
        scores.append(_ratio(
            "completeness.data", satisfied, len(gold.property_expectations),
            f"{satisfied}/{len(gold.property_expectations)} expected properties populated",
        ))
    if snapshot is None or gold is None or not gold.entities:
        scores.append(_na("completeness.population", "no expected entities"))
    else:
        known = {
            term.value
            for t in snapshot.triples
            for term in (t.subject, t.object)
            if term.kind == IRI
        }
        found = sum(1 for e in gold.entities if e in known)
        scores.append(_ratio(
            "completeness.population", found, len(gold.entities),
            f"{found}/{len(gold.entities)} expected entities present",
        ))
    if snapshot is None:
        scores.append(_na("completeness.interlinking", "no snapshot"))
    else:
        instances = _typed_instances(snapshot)
        if not instances:
            scores.append(_na("completeness.interlinking", "no typed instances"))
        else:
            linking = set(metric_config.linking_predicates)
            own = metric_config.own_namespaces
            linked = {
                t.subject
                for t in snapshot.triples
                if t.subject in instances
                and t.predicate.value in linking
                and t.object.kind == IRI
                and not any(t.object.value.startswith(ns) for ns in own)
            }
            scores.append(_ratio(
                "completeness.interlinking", len(linked), len(instances),
                f"{len(linked)}/{len(instances)} typed instances link externally",
            ))
    return scores


# -- conciseness, consistency -------------------------------------------------


def score_conciseness(snapshot: Optional[GraphSnapshot]) -> List[MetricScore]:
    if snapshot is None:
        return [
            _na("concise_representation.blank_node_avoidance", "no snapshot"),
            _na("concise_representation.reification_avoidance", "no snapshot"),
        ]
    stats = snapshot.stats
    scores = []
    if stats.distinct_terms == 0:
        scores.append(_vacuous("concise_representation.blank_node_avoidance", "no terms"))
    else:
        scores.append(_ratio(
            "concise_representation.blank_node_avoidance",
            stats.distinct_terms - stats.blank_node_count,
            stats.distinct_terms,
            f"{stats.blank_node_count} blank node(s) among {stats.distinct_terms} terms",
        ))
    if stats.triple_count == 0:
        scores.append(_vacuous("concise_representation.reification_avoidance", "no statements"))
    else:
        scores.append(_ratio(
            "concise_representation.reification_avoidance",
            stats.triple_count - stats.reification_triple_count,
            stats.triple_count,
            f"{stats.reification_triple_count} reification statement(s) of {stats.triple_count}",
        ))
    return scores


def score_consistency(
    snapshot: Optional[GraphSnapshot],
    schema: Optional[SchemaSpec],
) -> List[MetricScore]:
    if snapshot is None or schema is None:
        return [
            _na("consistent_representation.disjoint_consistency", "snapshot or schema missing"),
            _na("consistent_representation.ifp_consistency", "snapshot or schema missing"),
            _na("consistent_representation.restriction_consistency", "snapshot or schema missing"),
        ]
    scores = []

    types_of: Dict[Term, set] = {}
    for t in snapshot.triples:
        if t.predicate.value == RDF_TYPE and t.object.kind == IRI:
            types_of.setdefault(t.subject, set()).add(t.object.value)
    if not types_of or not schema.disjoint_class_pairs:
        scores.append(_vacuous(
            "consistent_representation.disjoint_consistency",
            "no typed instances or no disjoint pairs",
        ))
    else:
        conflicted = sum(
            1
            for classes in types_of.values()
            if any(a in classes and b in classes for a, b in schema.disjoint_class_pairs)
        )
        scores.append(_ratio(
            "consistent_representation.disjoint_consistency",
            len(types_of) - conflicted,
            len(types_of),
            f"{conflicted}/{len(types_of)} instances typed into disjoint classes",
        ))

    ifp_statements = [
        t for t in snapshot.triples
        if t.predicate.value in schema.inverse_functional_properties
    ]
    if not ifp_statements:
        scores.append(_vacuous(
            "consistent_representation.ifp_consistency", "no IFP statements",
        ))
    else:
        owners: Dict[Tuple[str, Term], set] = {}
        for t in ifp_statements:
            owners.setdefault((t.predicate.value, t.object), set()).add(t.subject)
        violating = sum(
            1 for t in ifp_statements if len(owners[(t.predicate.value, t.object)]) > 1
        )
        scores.append(_ratio(
            "consistent_representation.ifp_consistency",
            len(ifp_statements) - violating,
            len(ifp_statements),
            f"{violating}/{len(ifp_statements)} IFP statements share a value",
        ))

    governed = [t for t in snapshot.triples if t.predicate.value in schema.property_ranges]
    if not governed:
        scores.append(_vacuous(
            "consistent_representation.restriction_consistency", "no range-governed statements",
        ))
    else:
        violating = sum(
            1 for t in governed
            if _violates_range(snapshot, t.object, schema.property_ranges[t.predicate.value])
        )
        scores.append(_ratio(
            "consistent_representation.restriction_consistency",
            len(governed) - violating,
            len(governed),
            f"{violating}/{len(governed)} statements violate declared ranges",
        ))
    return scores


# -- operation, understanding, error ------------------------------------------


def score_ease_of_operation(
    report: Optional[ProbeReport],
    config: Optional[EndpointConfig] = None,
) -> List[MetricScore]:
    if report is None and config is None:
        return [
            _na("ease_of_operation.update", "no probe evidence"),
            _na("ease_of_operation.download", "no probe evidence"),
            _na("ease_of_operation.integrate", "no probe evidence"),
        ]
    scores = []
    update = bool(report.update_supported) if report is not None else bool(
        config and (config.supports_update_declared or config.edit_interface_declared)
    )
    scores.append(_boolean(
        "ease_of_operation.update", update,
        "update interface declared" if update else "no update capability",
    ))
    dump_ok = bool(report.dump_reachable) if report is not None else False
    scores.append(_boolean(
        "ease_of_operation.download", dump_ok,
        "dump URL reachable" if dump_ok else "no reachable dump",
    ))
    if report is None:
        scores.append(_na("ease_of_operation.integrate", "no probe report"))
    else:
        integrable = report.rdf_obtainable(RDF_MEDIA_TYPES)
        scores.append(_boolean(
            "ease_of_operation.integrate", integrable,
            "standard RDF serialization obtainable" if integrable
            else "no standard serialization observed",
        ))
    return scores


def score_understandability(
    snapshot: Optional[GraphSnapshot],
    gold: Optional[GoldStandard],
    metric_config: MetricConfig = DEFAULT_CONFIG,
) -> List[MetricScore]:
    scores = []
    if snapshot is None:
        scores.append(_na("ease_of_understanding.self_descriptive_uris", "no snapshot"))
    else:
        subjects = {t.subject.value for t in snapshot.triples if t.subject.kind == IRI}
        if not subjects:
            scores.append(_na(
                "ease_of_understanding.self_descriptive_uris", "no IRI subjects",
            ))
        else:
            opaque = re.compile(metric_config.opaque_local_pattern)
            good = sum(1 for s in subjects if _self_descriptive(s, opaque))
            scores.append(_ratio(
                "ease_of_understanding.self_descriptive_uris", good, len(subjects),
                f"{good}/{len(subjects)} subject IRIs have readable local names",
            ))
    if snapshot is None:
        scores.append(_na("ease_of_understanding.language_coverage", "no snapshot"))
    else:
        found = snapshot.stats.label_languages
        if gold is not None and gold.required_languages:
            required = gold.required_languages
            hit = len(found & required)
            scores.append(_ratio(
                "ease_of_understanding.language_coverage", hit, len(required),
                f"labels cover {hit}/{len(required)} required languages",
            ))
        else:
            # no stated requirement: two or more label languages score full marks
            scores.append(_ratio(
                "ease_of_understanding.language_coverage", min(len(found), 2), 2,
                f"{len(found)} label language(s), no explicit requirement",
            ))
    return scores


def _self_descriptive(iri_value: str, opaque: re.Pattern) -> bool:
    local = re.split(r"[/#]", iri_value)[-1]
    if not any(ch.isalpha() for ch in local):
        return False
    return opaque.fullmatch(local) is None


def score_free_of_error(
    snapshot: Optional[GraphSnapshot],
    gold: Optional[GoldStandard],
) -> MetricScore:
    if snapshot is None or gold is None or not gold.fact_expectations:
        return _na("free_of_error.correct_property_values", "no expected facts")
    triple_set = snapshot.triple_set()
    matching = 0
    for entity, prop, value in gold.fact_expectations:
        candidate = Triple(Term(IRI, entity), Term(IRI, prop), value)
        if candidate in triple_set:
            matching += 1
    return _ratio(
        "free_of_error.correct_property_values",
        matching, len(gold.fact_expectations),
        f"{matching}/{len(gold.fact_expectations)} expected facts found verbatim",
    )


# -- interoperability, objectivity, security, timeliness ----------------------


def score_interoperability(
    report: Optional[ProbeReport],
    snapshot: Optional[GraphSnapshot],
    judgments: Sequence[Judgment] = (),
    config: Optional[EndpointConfig] = None,
    metric_config: MetricConfig = DEFAULT_CONFIG,
) -> List[MetricScore]:
    scores = []
    lic = _license_present(snapshot, config, metric_config)
    if report is None or lic is None:
        scores.append(_na("interoperability.openly_available", "probe or license evidence missing"))
    else:
        openly = report.available and lic
        scores.append(_boolean(
            "interoperability.openly_available", openly,
            "available and licensed" if openly else "not both available and licensed",
        ))
    scores.append(judgment_score("interoperability.standard_vocabularies", judgments))
    return scores


def score_objectivity(
    snapshot: Optional[GraphSnapshot],
    judgments: Sequence[Judgment] = (),
    metric_config: MetricConfig = DEFAULT_CONFIG,
) -> List[MetricScore]:
    return [
        judgment_score("objectivity.unbiased", judgments),
        _provenance_fraction("objectivity.provenance_declared", snapshot, metric_config),
    ]


def score_security(
    snapshot: Optional[GraphSnapshot],
    config: Optional[EndpointConfig] = None,
    judgments: Sequence[Judgment] = (),
    metric_config: MetricConfig = DEFAULT_CONFIG,
) -> List[MetricScore]:
    scores = []
    if snapshot is None and config is None:
        scores.append(_na("security.digital_signature", "no snapshot and no declaration"))
    else:
        declared = bool(config and config.signature_iri_declared)
        in_graph = snapshot is not None and any(
            t.predicate.value in metric_config.signature_predicates
            for t in snapshot.triples
        )
        found = declared or in_graph
        scores.append(_boolean(
            "security.digital_signature", found,
            "signature artifact declared" if found else "no signature evidence",
        ))
    scores.append(judgment_score("security.authentication", judgments))
    return scores


_TS_RE = re.compile(r"^-?\d{4,}-\d{2}-\d{2}")


def parse_timestamp(lexical: str) -> Optional[datetime]:
    """xsd:dateTime or xsd:date lexical to an aware datetime (UTC default)."""
    if not _TS_RE.match(lexical):
        return None
    text = lexical.strip()
    if text.endswith("Z"):
        text = text[:-1] + "+00:00"
    try:
        if "T" in text:
            dt = datetime.fromisoformat(text)
        else:
            dt = datetime.fromisoformat(text + "T00:00:00")
    except ValueError:
        return None
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt


def score_timeliness(
    snapshot: Optional[GraphSnapshot],
    now: Optional[datetime] = None,
    metric_config: MetricConfig = DEFAULT_CONFIG,
) -> List[MetricScore]:
    if snapshot is None:
        return [
            _na("timeliness.up_to_date", "no snapshot"),
            _na("timeliness.freshness", "no snapshot"),
        ]
    now = now or _now()
    horizon_seconds = Fraction(metric_config.decay_horizon_days * 86400)
    preds = set(metric_config.modification_predicates)
    stamps: Dict[Term, datetime] = {}
    for t in snapshot.triples:
        if t.predicate.value in preds and t.object.kind == LITERAL:
            parsed = parse_timestamp(t.object.value)
            if parsed is not None:
                prev = stamps.get(t.subject)
                if prev is None or parsed > prev:
                    stamps[t.subject] = parsed
    scores = []
    if not stamps:
        scores.append(_value(
            "timeliness.up_to_date", ZERO, "no modification timestamp found",
        ))
    else:
        latest = max(stamps.values())
        age = _seconds_between(latest, now)
        decayed = Fraction(math.exp(-float(age / horizon_seconds))) if age > 0 else ONE
        scores.append(_value(
            "timeliness.up_to_date", min(decayed, ONE),
            f"latest modification {latest.isoformat()}",
        ))
    instances = _typed_instances(snapshot)
    if not instances:
        scores.append(_na("timeliness.freshness", "no typed instances"))
    else:
        fresh = sum(
            1 for inst in instances
            if inst in stamps and _seconds_between(stamps[inst], now) <= horizon_seconds
        )
        scores.append(_ratio(
            "timeliness.freshness", fresh, len(instances),
            f"{fresh}/{len(instances)} instances modified within the horizon",
        ))
    return scores


def _seconds_between(earlier: datetime, later: datetime) -> Fraction:
    delta = later - earlier
    micros = (delta.days * 86400 + delta.seconds) * 10**6 + delta.microseconds
    return Fraction(max(micros, 0), 10**6)


# -- judgments ----------------------------------------------------------------


def record_judgment(judgment: Judgment) -> MetricScore:
    """Turn a QL judgment into a MetricScore; raises on QN ids or bad range."""
    spec = resolve_metric(judgment.metric_id)
    if spec.kind != QL:
        raise JudgmentError(f"{judgment.metric_id} is quantitative; judgments apply to QL metrics")
    if not (ZERO <= judgment.value <= ONE):
        raise JudgmentError(f"judgment value {judgment.value} outside [0,1]")
    return MetricScore(
        metric_id=judgment.metric_id,
        value=judgment.value,
        kind=QL,
        evidence_summary=judgment.rationale or f"judged by {judgment.rater}",
        computed_at=judgment.recorded_at or _now(),
    )


def judgment_score(metric_id: str, judgments: Sequence[Judgment]) -> MetricScore:
    """Latest judgment for the metric wins; none recorded -> not_applicable."""
    chosen = None
    for j in judgments:
        if j.metric_id == metric_id:
            chosen = j
    if chosen is None:
        return _na(metric_id, "no judgment recorded", kind=QL)
    return record_judgment(chosen)


# -- full sweep ----------------------------------------------------------------


def compute_all_scores(
    snapshot: Optional[GraphSnapshot] = None,
    report: Optional[ProbeReport] = None,
    config: Optional[EndpointConfig] = None,
    gold: Optional[GoldStandard] = None,
    schema: Optional[SchemaSpec] = None,
    judgments: Sequence[Judgment] = (),
    metric_config: MetricConfig = DEFAULT_CONFIG,
    now: Optional[datetime] = None,
) -> List[MetricScore]:
    """Score all forty metrics from whatever evidence is on hand."""
    scores: List[MetricScore] = []
    scores += score_accessibility(report, snapshot, config, metric_config)
    scores += score_accuracy(snapshot, schema)
    scores.append(score_appropriate_amount(snapshot, gold))
    scores += score_believability(snapshot, judgments, metric_config)
    scores += score_completeness(snapshot, gold, metric_config)
    scores += score_conciseness(snapshot)
    scores += score_consistency(snapshot, schema)
    scores.append(judgment_score("cost_effectiveness.extra_cost", judgments))
    scores.append(judgment_score("ease_of_manipulation.documentation", judgments))
    scores += score_ease_of_operation(report, config)
    scores += score_understandability(snapshot, gold, metric_config)
    scores.append(score_free_of_error(snapshot, gold))
    scores += score_interoperability(report, snapshot, judgments, config, metric_config)
    scores += score_objectivity(snapshot, judgments, metric_config)
    scores.append(judgment_score("relevancy.domain_coverage", judgments))
    scores.append(judgment_score("reputation.rating", judgments))
    scores += score_security(snapshot, config, judgments, metric_config)
    scores += score_timeliness(snapshot, now, metric_config)
    scores.append(judgment_score("traceability.provenance_verifiable", judgments))
    scores.append(judgment_score("traceability.authenticity", judgments))
    scores.append(judgment_score("variety.domain_sources", judgments))
    return scores
