"""The fixed quality-dimension catalog.

Twenty dimensions, forty metrics. Each metric is either quantitative (QN,
computed from graph, probe or gold-standard evidence) or qualitative (QL,
recorded as a human judgment in [0,1]). Metric identifiers are stable keys of
the form ``<dimension_id>.<metric>`` used by weight profiles and persistence.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Tuple

QN = "QN"
QL = "QL"

# Evidence kinds a metric consumes.
EV_SNAPSHOT = "snapshot"
EV_PROBE = "probe"
EV_GOLD = "gold_standard"
EV_USE_CASE = "use_case"
EV_JUDGMENT = "judgment"

CATALOG_VERSION = "1.0.0"


class UnknownMetricError(KeyError):
    """Lookup of a metric id that is not in the catalog."""


@dataclass(frozen=True)
class MetricSpec:
    metric_id: str
    dimension_id: str
    kind: str
    evidence: FrozenSet[str]
    description: str


@dataclass(frozen=True)
class DimensionSpec:
    dimension_id: str
    name: str
    metrics: Tuple[MetricSpec, ...]


def _m(metric_id: str, kind: str, evidence: Tuple[str, ...], description: str) -> MetricSpec:
    dimension_id = metric_id.split(".", 1)[0]
    if kind == QL:
        evidence = (EV_JUDGMENT,)
    return MetricSpec(metric_id, dimension_id, kind, frozenset(evidence), description)


_CATALOG: Tuple[DimensionSpec, ...] = (
    DimensionSpec("accessibility", "Accessibility", (
        _m("accessibility.available", QN, (EV_PROBE,),
           "Some part of the KG answers an HTTP request"),
        _m("accessibility.sparql_endpoint", QN, (EV_PROBE,),
           "A SPARQL endpoint answers a trivial query"),
        _m("accessibility.retrievable", QN, (EV_PROBE,),
           "Entity IRIs dereference to an RDF representation"),
        _m("accessibility.content_negotiation", QN, (EV_PROBE,),
           "Requested RDF media types are honored via the Accept header"),
        _m("accessibility.license", QN, (EV_SNAPSHOT, EV_PROBE),
           "A license is stated in the graph or declared out of band"),
    )),
    DimensionSpec("accuracy", "Accuracy", (
        _m("accuracy.syntactic_validity", QN, (EV_SNAPSHOT,),
           "Typed literals conform to their declared datatype"),
        _m("accuracy.semantic_validity", QN, (EV_SNAPSHOT, EV_USE_CASE),
           "Statements respect functional-property and range constraints"),
    )),
    DimensionSpec("appropriate_amount", "Appropriate amount", (
        _m("appropriate_amount.instance_amount", QN, (EV_SNAPSHOT, EV_GOLD),
           "Typed instance count relative to the amount the task requires"),
    )),
    DimensionSpec("believability", "Believability", (
        _m("believability.provenance", QN, (EV_SNAPSHOT,),
           "Subjects carry provenance statements"),
        _m("believability.trustworthy", QL, (EV_JUDGMENT,),
           "Rater confidence that the KG content can be trusted"),
        _m("believability.no_unknown_values", QN, (EV_SNAPSHOT,),
           "Literals are not empty or placeholder values"),
    )),
    DimensionSpec("completeness", "Completeness", (
        _m("completeness.data", QN, (EV_SNAPSHOT, EV_GOLD),
           "Expected entity properties have at least one value"),
        _m("completeness.population", QN, (EV_SNAPSHOT, EV_GOLD),
           "Expected entities occur in the graph"),
        _m("completeness.interlinking", QN, (EV_SNAPSHOT,),
           "Typed instances link out to external datasets"),
    )),
    DimensionSpec("concise_representation", "Concise representation", (
        _m("concise_representation.blank_node_avoidance", QN, (EV_SNAPSHOT,),
           "Share of terms that are not blank nodes"),
        _m("concise_representation.reification_avoidance", QN, (EV_SNAPSHOT,),
           "Share of statements not spent on reification bookkeeping"),
    )),
    DimensionSpec("consistent_representation", "Consistent representation", (
        _m("consistent_representation.disjoint_consistency", QN, (EV_SNAPSHOT, EV_USE_CASE),
           "Instances are not typed into two disjoint classes"),
        _m("consistent_representation.ifp_consistency", QN, (EV_SNAPSHOT, EV_USE_CASE),
           "Inverse-functional property values are not shared across subjects"),
        _m("consistent_representation.restriction_consistency", QN, (EV_SNAPSHOT, EV_USE_CASE),
           "Objects respect declared property ranges"),
    )),
    DimensionSpec("cost_effectiveness", "Cost-effectiveness", (
        _m("cost_effectiveness.extra_cost", QL, (EV_JUDGMENT,),
           "Rater view of the cost of obtaining additional needed data"),
    )),
    DimensionSpec("ease_of_manipulation", "Ease of manipulation", (
        _m("ease_of_manipulation.documentation", QL, (EV_JUDGMENT,),
           "Rater view of the level of documentation provided"),
    )),
    DimensionSpec("ease_of_operation", "Ease of operation", (
        _m("ease_of_operation.update", QN, (EV_PROBE,),
           "An update or edit interface is offered"),
        _m("ease_of_operation.download", QN, (EV_PROBE,),
           "A dump download is reachable"),
        _m("ease_of_operation.integrate", QN, (EV_PROBE,),
           "The KG is obtainable in a standard RDF serialization"),
    )),
    DimensionSpec("ease_of_understanding", "Ease of understanding", (
        _m("ease_of_understanding.self_descriptive_uris", QN, (EV_SNAPSHOT,),
           "Subject IRIs use readable local names rather than opaque ids"),
        _m("ease_of_understanding.language_coverage", QN, (EV_SNAPSHOT, EV_GOLD),
           "Labels exist in the languages the task requires"),
    )),
    DimensionSpec("free_of_error", "Free of error", (
        _m("free_of_error.correct_property_values", QN, (EV_SNAPSHOT, EV_GOLD),
           "Expected facts are present with exactly matching values"),
    )),
    DimensionSpec("interoperability", "Interoperability", (
        _m("interoperability.openly_available", QN, (EV_PROBE, EV_SNAPSHOT),
           "Available online under a stated license"),
        _m("interoperability.standard_vocabularies", QL, (EV_JUDGMENT,),
           "Rater view of the use of community-standard vocabularies"),
    )),
    DimensionSpec("objectivity", "Objectivity", (
        _m("objectivity.unbiased", QL, (EV_JUDGMENT,),
           "Rater view of bias in content selection and wording"),
        _m("objectivity.provenance_declared", QN, (EV_SNAPSHOT,),
           "Subjects carry provenance statements"),
    )),
    DimensionSpec("relevancy", "Relevancy", (
        _m("relevancy.domain_coverage", QL, (EV_JUDGMENT,),
           "Rater view of coverage of the target domain or use case"),
    )),
    DimensionSpec("reputation", "Reputation", (
        _m("reputation.rating", QL, (EV_JUDGMENT,),
           "Rater view of the KG's standing in explicit ratings"),
    )),
    DimensionSpec("security", "Security", (
        _m("security.digital_signature", QN, (EV_SNAPSHOT, EV_PROBE),
           "A digital signature artifact is declared"),
        _m("security.authentication", QL, (EV_JUDGMENT,),
           "Rater view of the authentication mechanisms offered"),
    )),
    DimensionSpec("timeliness", "Timeliness", (
        _m("timeliness.up_to_date", QN, (EV_SNAPSHOT,),
           "Recency of the newest modification timestamp"),
        _m("timeliness.freshness", QN, (EV_SNAPSHOT,),
           "Share of instances modified within the decay horizon"),
    )),
    DimensionSpec("traceability", "Traceability", (
        _m("traceability.provenance_verifiable", QL, (EV_JUDGMENT,),
           "Rater view of whether provenance can be verified"),
        _m("traceability.authenticity", QL, (EV_JUDGMENT,),
           "Rater view of whether authenticity can be verified"),
    )),
    DimensionSpec("variety", "Variety", (
        _m("variety.domain_sources", QL, (EV_JUDGMENT,),
           "Rater view of how many domain sources are integrated"),
    )),
)

_BY_METRIC: Dict[str, MetricSpec] = {
    m.metric_id: m for dim in _CATALOG for m in dim.metrics
}
_BY_DIMENSION: Dict[str, DimensionSpec] = {d.dimension_id: d for d in _CATALOG}


def catalog() -> Tuple[DimensionSpec, ...]:
    """The fixed ordered catalog; pure and structurally constant."""
    return _CATALOG


def dimension_ids() -> List[str]:
    return [d.dimension_id for d in _CATALOG]


def resolve_dimension(dimension_id: str) -> DimensionSpec:
    try:
        return _BY_DIMENSION[dimension_id]
    except KeyError:
        raise UnknownMetricError(f"unknown dimension {dimension_id!r}") from None


def resolve_metric(metric_id: str) -> MetricSpec:
    try:
        return _BY_METRIC[metric_id]
    except KeyError:
        raise UnknownMetricError(f"unknown metric {metric_id!r}") from None


def metric_ids() -> List[str]:
    return list(_BY_METRIC)


def catalog_as_dict() -> dict:
    """Machine-readable catalog export, as served to the dashboard."""
    return {
        "catalog_version": CATALOG_VERSION,
        "dimensions": [
            {
                "dimension_id": d.dimension_id,
                "name": d.name,
                "metrics": [
                    {
                        "metric_id": m.metric_id,
                        "kind": m.kind,
                        "evidence": sorted(m.evidence),
                        "description": m.description,
                    }
                    for m in d.metrics
                ],
            }
            for d in _CATALOG
        ],
    }


def catalog_as_json() -> str:
    return json.dumps(catalog_as_dict(), indent=2, sort_keys=False)
