"""Command line interface.

Exit codes: 0 success, 1 validation failure, 2 I/O or network failure,
3 not found. The store directory comes from --store, the KGQA_STORE
environment variable, or ./kgqa-store. KGQA_TIMEOUT_MS overrides probe
timeouts for configs that do not set their own.
"""

from __future__ import annotations

import json
import os
import sys
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

import click

from . import pipeline
from .aggregate import AggregationError, WeightProfile
from .api import create_app, run_document, _decorate_rationals
from .metrics import GoldStandard, JudgmentError, SchemaSpec
from .probe import ConfigError, probe_all
from .rational import decimal_str
from .registry import (
    CollisionError,
    IntegrityError,
    KgRecord,
    NotFoundError,
    Store,
    UseCase,
    ValidationFailure,
)
from .snapshot import snapshot_from_ntriples, snapshot_from_turtle
from .ntriples import SyntaxAbort

EXIT_VALIDATION = 1
EXIT_IO = 2
EXIT_NOT_FOUND = 3


def _fail(code: int, message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _store(ctx: click.Context) -> Store:
    return Store(ctx.obj["store"])


def _emit(ctx: click.Context, payload: dict, table_lines=None) -> None:
    if ctx.obj["format"] == "json" or table_lines is None:
        click.echo(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        for line in table_lines:
            click.echo(line)


@click.group()
@click.option("--store", "store_dir", default=None, help="Store directory (default $KGQA_STORE or ./kgqa-store).")
@click.option("--format", "output_format", type=click.Choice(["json", "table"]), default="table")
@click.pass_context
def main(ctx, store_dir, output_format):
    """Assess knowledge graph quality: ingest, probe, score, rank."""
    ctx.ensure_object(dict)
    ctx.obj["store"] = store_dir or os.environ.get("KGQA_STORE", "kgqa-store")
    ctx.obj["format"] = output_format


@main.command()
@click.option("--file", "path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--kg", "kg_id", required=True)
@click.option("--mode", type=click.Choice(["strict", "lenient"]), default="strict")
@click.option("--base", "base_iri", default=None, help="Base IRI for Turtle input.")
@click.pass_context
def ingest(ctx, path, kg_id, mode, base_iri):
    """Parse an RDF file (.nt or .ttl) into a stored snapshot."""
    store = _store(ctx)
    try:
        store.get_kg(kg_id)
    except NotFoundError as exc:
        _fail(EXIT_NOT_FOUND, str(exc))
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        _fail(EXIT_IO, str(exc))
    source = {"type": "file", "path": str(path)}
    try:
        if path.endswith((".ttl", ".turtle")):
            snap, errors = snapshot_from_turtle(
                data, kg_id, base_iri=base_iri, mode=mode, source=source,
            )
        else:
            snap, errors = snapshot_from_ntriples(data, kg_id, mode=mode, source=source)
    except SyntaxAbort as exc:
        _fail(EXIT_VALIDATION, f"parse failed: {exc}")
    snapshot_id = store.save_snapshot(snap)
    payload = {
        "snapshot_id": snapshot_id,
        "triples": snap.stats.triple_count,
        "parse_errors": [
            {"line": e.line, "column": e.column, "reason": e.reason} for e in errors
        ],
    }
    _emit(ctx, payload, [
        f"snapshot {snapshot_id}: {snap.stats.triple_count} triples, "
        f"{len(errors)} skipped line(s)",
    ])


@main.command()
@click.option("--kg", "kg_id", required=True)
@click.pass_context
def probe(ctx, kg_id):
    """Probe the KG's endpoint, dump and sample IRIs."""
    store = _store(ctx)
    try:
        kg = store.get_kg(kg_id)
    except NotFoundError as exc:
        _fail(EXIT_NOT_FOUND, str(exc))
    if kg.endpoint_config is None:
        _fail(EXIT_VALIDATION, f"kg {kg_id!r} has no endpoint configuration")
    config = kg.endpoint_config
    env_timeout = os.environ.get("KGQA_TIMEOUT_MS")
    if env_timeout:
        config = replace(config, timeout_ms=int(env_timeout))
    report = probe_all(config)
    doc = _decorate_rationals(report.to_json())
    _emit(ctx, doc, [
        f"available={report.available} sparql_ok={report.sparql_ok} "
        f"dump={report.dump_reachable} update={report.update_supported}",
        f"dereference={report.dereference_success_fraction} "
        f"conneg={report.conneg_success_fraction}",
    ])


@main.command()
@click.option("--kg", "kg_id", required=True)
@click.option("--usecase", "use_case_id", required=True)
@click.option("--profile", "profile_id", required=True)
@click.pass_context
def assess(ctx, kg_id, use_case_id, profile_id):
    """Run the full assessment pipeline for one KG."""
    store = _store(ctx)
    try:
        run = pipeline.create_run(store, kg_id, use_case_id, profile_id)
        run = pipeline.execute_run(store, run)
    except NotFoundError as exc:
        _fail(EXIT_NOT_FOUND, str(exc))
    except (ValidationFailure, AggregationError) as exc:
        _fail(EXIT_VALIDATION, str(exc))
    except IntegrityError as exc:
        _fail(EXIT_IO, str(exc))
    total = decimal_str(run.total) if run.total is not None else "n/a"
    _emit(ctx, run_document(run), [
        f"run {run.run_id}: status={run.status} total={total}",
    ])


@main.command()
@click.option("--run", "run_id", required=True)
@click.option("--profile", "profile_id", required=True)
@click.pass_context
def retune(ctx, run_id, profile_id):
    """Recompute a run's aggregation under different weights."""
    store = _store(ctx)
    try:
        profile = store.get_profile(profile_id)
        derived = pipeline.retune_run(store, run_id, profile)
    except NotFoundError as exc:
        _fail(EXIT_NOT_FOUND, str(exc))
    except (ValidationFailure, AggregationError) as exc:
        _fail(EXIT_VALIDATION, str(exc))
    _emit(ctx, run_document(derived), [
        f"run {derived.run_id}: total={decimal_str(derived.total)} "
        f"(parent {derived.parent_run_id})",
    ])


@main.command()
@click.option("--usecase", "use_case_id", required=True)
@click.option("--profile", "profile_id", required=True)
@click.pass_context
def rank(ctx, use_case_id, profile_id):
    """Rank KGs by total score for one use case and profile."""
    from .aggregate import rank_kgs

    store = _store(ctx)
    try:
        store.get_usecase(use_case_id)
    except NotFoundError as exc:
        _fail(EXIT_NOT_FOUND, str(exc))
    runs = pipeline.latest_complete_runs(store, use_case_id, profile_id)
    entries = rank_kgs([pipeline.assessment_of(r) for r in runs])
    payload = {
        "use_case_id": use_case_id,
        "profile_id": profile_id,
        "rankings": [
            {
                "rank": e.rank,
                "kg_id": e.kg_id,
                "total": {"num": e.total.numerator, "den": e.total.denominator,
                          "decimal": decimal_str(e.total)},
            }
            for e in entries
        ],
    }
    lines = [
        f"{e.rank:>3}  {e.kg_id:<24} {decimal_str(e.total)}" for e in entries
    ] or ["no complete runs"]
    _emit(ctx, payload, lines)


@main.command()
@click.option("--file", "path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.argument("kind", type=click.Choice(["kg", "usecase", "profile", "goldstandard", "schema"]))
@click.pass_context
def register(ctx, kind, path):
    """Register an entity from a JSON document."""
    store = _store(ctx)
    try:
        body = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        _fail(EXIT_IO, f"cannot read {path}: {exc}")
    try:
        if kind == "kg":
            entity_id = store.register_kg(KgRecord.from_json(body))
        elif kind == "usecase":
            entity_id = store.register_usecase(UseCase.from_json(body))
        elif kind == "profile":
            entity_id = store.register_profile(WeightProfile.from_json(body))
        elif kind == "goldstandard":
            entity_id = store.register_gold_standard(GoldStandard.from_json(body))
        else:
            entity_id = store.register_schema(SchemaSpec.from_json(body))
    except (ValidationFailure, ConfigError, JudgmentError, ValueError, KeyError) as exc:
        _fail(EXIT_VALIDATION, str(exc))
    except CollisionError as exc:
        _fail(EXIT_VALIDATION, str(exc))
    _emit(ctx, {"id": entity_id}, [f"registered {kind} {entity_id}"])


@main.command()
@click.option("--addr", default="127.0.0.1:8351", help="HOST:PORT to bind.")
@click.option("--store", "store_dir", default=None)
@click.option("--cors-origin", "cors_origins", multiple=True)
@click.option("--dashboard", "dashboard_dir", default=None,
              help="Directory of built dashboard assets to serve at /.")
@click.pass_context
def serve(ctx, addr, store_dir, cors_origins, dashboard_dir):
    """Serve the HTTP API (and the dashboard, when built)."""
    import uvicorn

    root = store_dir or ctx.obj["store"]
    if dashboard_dir is None:
        bundled = Path(__file__).resolve().parent.parent.parent / "frontend" / "dist"
        dashboard_dir = str(bundled) if bundled.is_dir() else None
    app = create_app(Store(root), cors_origins=list(cors_origins) or None,
                     dashboard_dir=dashboard_dir)
    host, _, port = addr.partition(":")
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or 8351), log_level="warning")


if __name__ == "__main__":
    main()
