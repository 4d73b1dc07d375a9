"""The whole pipeline offline: register, ingest, probe a mock server, assess.
=============================================================================

Uses the bundled scripted HTTP server so the run is fully reproducible:
availability, SPARQL, dereferencing, content negotiation and the dump are all
played back from a JSON script.
"""

import json
import tempfile
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from kgqa import pipeline
from kgqa.aggregate import uniform_profile
from kgqa.metrics import GoldStandard, Judgment, SchemaSpec
from kgqa.probe import EndpointConfig
from kgqa.rational import decimal_str
from kgqa.registry import KgRecord, Store, UseCase
from kgqa.snapshot import snapshot_from_ntriples
from kgqa.testing import ScriptedServer

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

store = Store(tempfile.mkdtemp(prefix="kgqa-demo-"))
store.register_gold_standard(GoldStandard.from_json(
    json.loads((FIXTURES / "gold_standard.json").read_text())))
store.register_schema(SchemaSpec.from_json(
    json.loads((FIXTURES / "schema.json").read_text())))
store.register_profile(uniform_profile("uniform"))

snapshot, _ = snapshot_from_ntriples((FIXTURES / "fixture_kg.nt").read_text(), "demo-kg")
store.save_snapshot(snapshot)

script = json.loads((FIXTURES / "probe_all_up.json").read_text())
with ScriptedServer(script) as server:
    store.register_kg(KgRecord(
        kg_id="demo-kg",
        name="Demo KG",
        namespaces=("http://kg.example.org/",),
        endpoint_config=EndpointConfig(
            kg_id="demo-kg",
            sparql_endpoint=server.base_url + "/sparql",
            dump_url=server.base_url + "/dump.nt",
            sample_entity_iris=tuple(server.base_url + f"/entity/e{i}" for i in range(4)),
            timeout_ms=3000,
            retries=0,
        ),
    ))
    store.register_usecase(UseCase(
        use_case_id="demo-uc", title="Demo use case",
        gold_standard_ref="fixture-gold", schema_ref="fixture-schema",
        default_profile_id="uniform",
    ))
    run = pipeline.create_run(store, "demo-kg", "demo-uc", "uniform")
    # timeliness decays against the evaluation clock; pin it for a stable output
    run = pipeline.execute_run(store, run,
                               now=datetime(2025, 6, 1, tzinfo=timezone.utc))

print(f"run {run.run_id}: status={run.status}")
print(f"probe: available={run.probe_report.available} "
      f"deref={run.probe_report.dereference_success_fraction} "
      f"conneg={run.probe_report.conneg_success_fraction}")

# the eleven qualitative metrics still need judgments before 'complete'
for metric_id in pipeline.pending_ql_metrics(store.get_profile("uniform"),
                                             run.judgment_history):
    run = pipeline.record_run_judgment(store, run.run_id, Judgment(
        metric_id, Fraction(1, 2), "demo-expert", "mid-scale default",
    ))

print(f"after judgments:   status={run.status}")
print(f"total T = {run.total} = {decimal_str(run.total)}")
for dim in run.dimension_scores[:5]:
    print(f"  {dim.dimension_id:28s} {decimal_str(dim.value)}")
print("  ...")
