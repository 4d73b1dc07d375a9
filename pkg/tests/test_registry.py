"""Store round-trips, checksums, collisions and run listing."""

import json
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

import pytest

from kgqa.aggregate import WeightProfile, uniform_profile
from kgqa.metrics import GoldStandard, Judgment, MetricScore, SchemaSpec
from kgqa.registry import (
    AssessmentRun,
    CollisionError,
    IntegrityError,
    KgRecord,
    NotFoundError,
    Store,
    UseCase,
    ValidationFailure,
    new_run_id,
)
from kgqa.snapshot import build_snapshot
from kgqa.terms import Triple, literal

from conftest import e, random_graph


@pytest.fixture
def store(tmp_path):
    return Store(tmp_path / "store")


def test_register_and_fetch_kg(store):
    store.register_kg(KgRecord(kg_id="kg1", name="Demo", namespaces=("http://ex.org/",)))
    record = store.get_kg("kg1")
    assert record.name == "Demo"
    assert record.namespaces == ("http://ex.org/",)


def test_duplicate_id_rejected(store):
    store.register_kg(KgRecord(kg_id="kg1", name="Demo"))
    with pytest.raises(CollisionError):
        store.register_kg(KgRecord(kg_id="kg1", name="Other"))


def test_profile_validation_propagates(store):
    profile = uniform_profile("p1")
    beta = dict(profile.beta)
    beta["variety"] = Fraction(0)
    broken = WeightProfile(profile_id="p1", beta=beta, alpha=profile.alpha)
    with pytest.raises(ValidationFailure) as info:
        store.register_profile(broken)
    assert any("beta sum" in v for v in info.value.violations)


def test_usecase_requires_registered_refs(store):
    with pytest.raises(ValidationFailure):
        store.register_usecase(UseCase(use_case_id="uc", title="t", gold_standard_ref="nope"))
    store.register_gold_standard(GoldStandard(gold_id="g1"))
    store.register_usecase(UseCase(use_case_id="uc", title="t", gold_standard_ref="g1"))


def test_unknown_lookup(store):
    with pytest.raises(NotFoundError):
        store.get_kg("missing")
    with pytest.raises(NotFoundError):
        store.load_run("missing")


def test_profile_round_trip_exact(store):
    profile = uniform_profile("p1")
    store.register_profile(profile)
    loaded = store.get_profile("p1")
    assert loaded.beta == dict(profile.beta)
    assert {d: dict(v) for d, v in loaded.alpha.items()} == \
        {d: dict(v) for d, v in profile.alpha.items()}


def test_gold_and_schema_round_trip(store):
    gold = GoldStandard(
        gold_id="g1",
        entities=frozenset({"http://ex.org/a"}),
        property_expectations=(("http://ex.org/a", "http://ex.org/p"),),
        fact_expectations=(("http://ex.org/a", "http://ex.org/p", literal("x")),),
        required_languages=frozenset({"en"}),
        required_instance_count=5,
    )
    store.register_gold_standard(gold)
    assert store.get_gold_standard("g1") == gold
    schema = SchemaSpec(
        schema_id="s1",
        disjoint_class_pairs=(("http://ex.org/A", "http://ex.org/B"),),
        inverse_functional_properties=frozenset({"http://ex.org/isbn"}),
        property_ranges={"http://ex.org/age": "http://www.w3.org/2001/XMLSchema#integer"},
    )
    store.register_schema(schema)
    assert store.get_schema("s1") == schema


def test_snapshot_round_trip(store, rng):
    snap = build_snapshot("kg1", random_graph(rng))
    snapshot_id = store.save_snapshot(snap)
    loaded = store.load_snapshot(snapshot_id)
    assert loaded.triple_set() == snap.triple_set()
    assert loaded.stats == snap.stats


def test_snapshot_latest_by_ingestion_time(store, rng):
    early = build_snapshot("kg1", random_graph(rng),
                           ingested_at=datetime(2024, 1, 1, tzinfo=timezone.utc))
    late = build_snapshot("kg1", random_graph(rng),
                          ingested_at=datetime(2025, 1, 1, tzinfo=timezone.utc))
    store.save_snapshot(early)
    late_id = store.save_snapshot(late)
    assert store.latest_snapshot_id("kg1") == late_id


def _run(run_id="r1", **kw):
    defaults = dict(
        run_id=run_id,
        kg_id="kg1",
        use_case_id="uc1",
        profile_id="p1",
        catalog_version="1.0.0",
        created_at=datetime(2025, 3, 1, tzinfo=timezone.utc),
        status="complete",
        total=Fraction(7, 9),
        metric_scores=(
            MetricScore(
                metric_id="accuracy.syntactic_validity",
                value=Fraction(7, 9), kind="QN",
                evidence_summary="7/9", numerator=7, denominator=9,
            ),
        ),
        judgment_history=(
            Judgment("variety.domain_sources", Fraction(1, 3), "r", "why"),
        ),
    )
    defaults.update(kw)
    return AssessmentRun(**defaults)


def test_run_round_trip_exact_total(store):
    run = _run()
    store.save_run(run)
    loaded = store.load_run("r1")
    assert loaded.total == Fraction(7, 9)
    assert loaded.metric_scores[0].value == Fraction(7, 9)
    assert loaded.judgment_history[0].value == Fraction(1, 3)
    assert loaded == run


def test_corrupted_run_detected(store):
    store.save_run(_run())
    path = store.root / "runs" / "r1.json"
    raw = bytearray(path.read_bytes())
    # flip one byte inside the document body
    idx = raw.find(b'"7/9"')
    raw[idx + 1] = ord("8")
    path.write_bytes(bytes(raw))
    with pytest.raises(IntegrityError):
        store.load_run("r1")


def test_corrupted_snapshot_body_detected(store, rng):
    snap = build_snapshot("kg1", [Triple(e("a"), e("p"), literal("x"))])
    snapshot_id = store.save_snapshot(snap)
    body_path = store.root / "snapshots" / f"{snapshot_id}.nt"
    body = body_path.read_text()
    body_path.write_text(body.replace("x", "y"))
    with pytest.raises(IntegrityError):
        store.load_snapshot(snapshot_id)


def test_list_runs_order_and_filters(store):
    base = datetime(2025, 3, 1, tzinfo=timezone.utc)
    store.save_run(_run("r-old", created_at=base.replace(day=1)))
    store.save_run(_run("r-new", created_at=base.replace(day=5)))
    store.save_run(_run("r-a", created_at=base.replace(day=3)))
    store.save_run(_run("r-b", created_at=base.replace(day=3), kg_id="kg2"))
    runs = store.list_runs()
    assert [r.run_id for r in runs] == ["r-new", "r-a", "r-b", "r-old"]
    assert [r.run_id for r in store.list_runs(kg_id="kg2")] == ["r-b"]
    assert [r.run_id for r in store.list_runs(status="complete")] != []
    assert store.list_runs(use_case_id="other") == []


def test_empty_store_lists_nothing(store):
    assert store.list_runs() == []
    assert store.list_ids("kgs") == []


def test_index_written_and_consistent(store):
    store.register_kg(KgRecord(kg_id="kg1", name="Demo"))
    index = json.loads((store.root / "index.json").read_text())
    assert index["collections"]["kgs"] == ["kg1"]


def test_reruns_keep_prior_run(store):
    store.save_run(_run("r1"))
    store.save_run(_run("r2"))
    assert store.run_exists("r1") and store.run_exists("r2")


def test_new_run_ids_unique():
    ids = {new_run_id() for _ in range(50)}
    assert len(ids) == 50


def test_stale_catalog_version_warns_on_load(store, caplog):
    store.save_run(_run("r-stale", catalog_version="0.0.9"))
    with caplog.at_level("WARNING", logger="kgqa.registry"):
        run = store.load_run("r-stale")
    assert run.catalog_version == "0.0.9"
    assert any("0.0.9" in record.getMessage() for record in caplog.records)
