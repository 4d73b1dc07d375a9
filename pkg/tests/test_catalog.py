import json
from pathlib import Path

import pytest

from kgqa.catalog import (
    QL,
    QN,
    UnknownMetricError,
    catalog,
    catalog_as_dict,
    metric_ids,
    resolve_metric,
)

REFERENCE = json.loads(
    (Path(__file__).parent / "data" / "catalog_reference.json").read_text()
)

EXPECTED_QL = {
    "believability.trustworthy",
    "cost_effectiveness.extra_cost",
    "ease_of_manipulation.documentation",
    "interoperability.standard_vocabularies",
    "objectivity.unbiased",
    "relevancy.domain_coverage",
    "reputation.rating",
    "security.authentication",
    "traceability.provenance_verifiable",
    "traceability.authenticity",
    "variety.domain_sources",
}


def test_twenty_dimensions_forty_metrics():
    dims = catalog()
    assert len(dims) == 20
    assert sum(len(d.metrics) for d in dims) == 40


def test_names_and_kind_sequences_match_reference():
    dims = catalog()
    assert [d.name for d in dims] == [r["name"] for r in REFERENCE["dimensions"]]
    for dim, ref in zip(dims, REFERENCE["dimensions"]):
        assert [m.kind for m in dim.metrics] == ref["metrics"], dim.dimension_id


def test_metric_counts_per_dimension():
    counts = {d.name: len(d.metrics) for d in catalog()}
    assert counts["Accessibility"] == 5
    assert counts["Ease of operation"] == 3
    assert counts["Variety"] == 1


def test_ql_set_exact():
    dims = catalog()
    ql = {m.metric_id for d in dims for m in d.metrics if m.kind == QL}
    assert ql == EXPECTED_QL
    assert sum(1 for d in dims for m in d.metrics if m.kind == QN) == 29


def test_ql_metrics_consume_only_judgments():
    for dim in catalog():
        for m in dim.metrics:
            if m.kind == QL:
                assert m.evidence == frozenset({"judgment"})


def test_traceability_is_all_qualitative():
    dim = next(d for d in catalog() if d.dimension_id == "traceability")
    assert [m.kind for m in dim.metrics] == [QL, QL]


def test_metric_ids_unique():
    ids = metric_ids()
    assert len(ids) == len(set(ids)) == 40


def test_resolve_metric():
    assert resolve_metric("timeliness.freshness").kind == QN
    assert resolve_metric("relevancy.domain_coverage").kind == QL
    with pytest.raises(UnknownMetricError):
        resolve_metric("bogus.metric")


def test_catalog_pure_and_stable():
    assert catalog() is catalog() or catalog() == catalog()
    assert catalog_as_dict() == catalog_as_dict()


def test_export_shape():
    doc = catalog_as_dict()
    assert doc["catalog_version"]
    assert len(doc["dimensions"]) == 20
    first = doc["dimensions"][0]["metrics"][0]
    assert {"metric_id", "kind", "evidence", "description"} <= set(first)
