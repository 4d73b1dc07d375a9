"""Run orchestration: evidence collection, status transitions, retuning."""

import json
from fractions import Fraction

import pytest

from kgqa import pipeline
from kgqa.aggregate import uniform_profile, WeightProfile
from kgqa.catalog import catalog
from kgqa.metrics import GoldStandard, Judgment, JudgmentError, SchemaSpec
from kgqa.probe import EndpointConfig
from kgqa.registry import (
    COMPLETE,
    PENDING_EVIDENCE,
    PENDING_JUDGMENTS,
    KgRecord,
    NotFoundError,
    Store,
    UseCase,
)
from kgqa.snapshot import snapshot_from_ntriples
from kgqa.testing import ScriptedServer

QL_METRICS = [
    m.metric_id for d in catalog() for m in d.metrics if m.kind == "QL"
]

FIXTURE_NT = (
    "<http://ex.org/a> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://ex.org/C> .\n"
    '<http://ex.org/a> <http://www.w3.org/2000/01/rdf-schema#label> "Alpha"@en .\n'
    '<http://ex.org/a> <http://ex.org/p> "12"^^<http://www.w3.org/2001/XMLSchema#integer> .\n'
)


@pytest.fixture
def store(tmp_path):
    s = Store(tmp_path / "store")
    s.register_gold_standard(GoldStandard(
        gold_id="g1", entities=frozenset({"http://ex.org/a"}), required_instance_count=1,
    ))
    s.register_schema(SchemaSpec(schema_id="s1"))
    s.register_profile(uniform_profile("p1"))
    s.register_kg(KgRecord(kg_id="kg1", name="Demo", namespaces=("http://ex.org/",)))
    s.register_usecase(UseCase(
        use_case_id="uc1", title="demo", gold_standard_ref="g1",
        schema_ref="s1", default_profile_id="p1",
    ))
    snap, _ = snapshot_from_ntriples(FIXTURE_NT, "kg1")
    s.save_snapshot(snap)
    return s


def test_create_run_requires_known_ids(store):
    with pytest.raises(NotFoundError):
        pipeline.create_run(store, "nope", "uc1", "p1")
    with pytest.raises(NotFoundError):
        pipeline.create_run(store, "kg1", "nope", "p1")
    with pytest.raises(NotFoundError):
        pipeline.create_run(store, "kg1", "uc1", "nope")


def test_run_executes_to_pending_judgments(store):
    run = pipeline.create_run(store, "kg1", "uc1", "p1")
    assert run.status == PENDING_EVIDENCE
    run = pipeline.execute_run(store, run)
    assert run.status == PENDING_JUDGMENTS
    assert run.total is not None
    assert len(run.metric_scores) == 40
    assert run.snapshot_ref is not None
    # persisted identically
    assert store.load_run(run.run_id).total == run.total


def test_judgments_complete_the_run(store):
    run = pipeline.execute_run(store, pipeline.create_run(store, "kg1", "uc1", "p1"))
    for i, metric_id in enumerate(QL_METRICS):
        run = pipeline.record_run_judgment(
            store, run.run_id,
            Judgment(metric_id, Fraction(1, 2), "rater", f"note {i}"),
        )
        expected = PENDING_JUDGMENTS if i < len(QL_METRICS) - 1 else COMPLETE
        assert run.status == expected
    assert len(run.judgment_history) == len(QL_METRICS)


def test_judgment_supersession_updates_total(store):
    run = pipeline.execute_run(store, pipeline.create_run(store, "kg1", "uc1", "p1"))
    first = pipeline.record_run_judgment(
        store, run.run_id, Judgment("variety.domain_sources", Fraction(1), "r"),
    )
    second = pipeline.record_run_judgment(
        store, run.run_id, Judgment("variety.domain_sources", Fraction(0), "r"),
    )
    assert second.total < first.total
    assert len(second.judgment_history) == 2


def test_judgment_rejects_qn_metric(store):
    run = pipeline.execute_run(store, pipeline.create_run(store, "kg1", "uc1", "p1"))
    with pytest.raises(JudgmentError):
        pipeline.record_run_judgment(
            store, run.run_id,
            Judgment("accuracy.syntactic_validity", Fraction(1, 2), "r"),
        )


def test_retune_creates_derived_run(store):
    run = pipeline.execute_run(store, pipeline.create_run(store, "kg1", "uc1", "p1"))
    profile = uniform_profile("p2")
    store.register_profile(profile)
    derived = pipeline.retune_run(store, run.run_id, profile)
    assert derived.parent_run_id == run.run_id
    assert derived.run_id != run.run_id
    assert derived.total == run.total  # same weights, same cached scores
    assert store.run_exists(run.run_id)


def test_retune_is_idempotent(store):
    run = pipeline.execute_run(store, pipeline.create_run(store, "kg1", "uc1", "p1"))
    profile = store.get_profile("p1")
    once = pipeline.retune_run(store, run.run_id, profile)
    twice = pipeline.retune_run(store, run.run_id, profile)
    assert once.run_id == twice.run_id
    assert once.created_at == twice.created_at
    assert once.total == twice.total


def test_retune_matches_offline_assess(store, rng):
    from kgqa import aggregate
    from test_aggregate import random_profile

    run = pipeline.execute_run(store, pipeline.create_run(store, "kg1", "uc1", "p1"))
    for i in range(20):
        profile = random_profile(rng, f"rp{i}")
        derived = pipeline.retune_run(store, run.run_id, profile)
        expected = aggregate.assess(run.metric_scores, profile, kg_id="kg1")
        assert derived.total == expected.total


def test_pending_ql_metrics_respects_zero_weights(store):
    profile = uniform_profile("pz")
    beta = {d.dimension_id: Fraction(0) for d in catalog()}
    beta["accuracy"] = Fraction(1)
    qn_only = WeightProfile(profile_id="pz", beta=beta,
                            alpha={"accuracy": profile.alpha["accuracy"]})
    assert pipeline.pending_ql_metrics(qn_only, ()) == []
    assert pipeline.pending_ql_metrics(uniform_profile(), ()) == QL_METRICS


def test_run_with_qn_only_profile_completes_without_judgments(store):
    profile = uniform_profile("pz")
    beta = {d.dimension_id: Fraction(0) for d in catalog()}
    beta["accuracy"] = Fraction(1)
    store.register_profile(WeightProfile(
        profile_id="pz", beta=beta, alpha={"accuracy": profile.alpha["accuracy"]},
    ))
    run = pipeline.execute_run(store, pipeline.create_run(store, "kg1", "uc1", "pz"))
    assert run.status == COMPLETE


def test_execute_run_samples_endpoint_when_no_snapshot(tmp_path):
    store = Store(tmp_path / "store")
    store.register_profile(uniform_profile("p1"))
    store.register_usecase(UseCase(use_case_id="uc1", title="t", default_profile_id="p1"))
    page = json.dumps({
        "head": {"vars": ["s", "p", "o"]},
        "results": {"bindings": [{
            "s": {"type": "uri", "value": "http://ex.org/a"},
            "p": {"type": "uri", "value": "http://ex.org/p"},
            "o": {"type": "literal", "value": "x"},
        }]},
    })
    ask = json.dumps({"head": {}, "boolean": True})
    script = {"rules": [
        {"method": "GET", "path": "/sparql", "responses": [{"status": 200, "body": "up"}]},
        # first POST answers the sampling SELECT, later ones the probe ASK
        {"method": "POST", "path": "/sparql", "responses": [
            {"status": 200, "content_type": "application/sparql-results+json", "body": page},
            {"status": 200, "content_type": "application/sparql-results+json", "body": ask},
        ]},
    ]}
    with ScriptedServer(script) as server:
        store.register_kg(KgRecord(
            kg_id="kg1", name="Demo",
            endpoint_config=EndpointConfig(
                kg_id="kg1", sparql_endpoint=server.base_url + "/sparql",
                timeout_ms=2000, retries=0,
            ),
        ))
        run = pipeline.execute_run(
            store, pipeline.create_run(store, "kg1", "uc1", "p1"), sleeper=lambda s: None,
        )
    assert run.snapshot_ref is not None
    assert store.load_snapshot(run.snapshot_ref).stats.triple_count == 1
    assert run.probe_report is not None and run.probe_report.sparql_ok


def test_latest_complete_runs_picks_newest_per_kg(store):
    run = pipeline.execute_run(store, pipeline.create_run(store, "kg1", "uc1", "p1"))
    for metric_id in QL_METRICS:
        run = pipeline.record_run_judgment(
            store, run.run_id, Judgment(metric_id, Fraction(1, 2), "r"),
        )
    chosen = pipeline.latest_complete_runs(store, "uc1", "p1")
    assert [r.kg_id for r in chosen] == ["kg1"]
    assert chosen[0].status == COMPLETE
