"""Run orchestration: ingest, probe, score, aggregate, persist.

A run starts pending_evidence, collects whatever evidence its KG configuration
allows, scores all metrics, aggregates under the run's profile and lands in
pending_judgments (qualitative metrics with positive weight still unjudged) or
complete. Probe or ingest failures degrade to metric evidence; they never
abort the run. Judgment recording and retuning derive new state purely from
cached scores.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import replace
from datetime import datetime, timezone
from typing import Callable, List, Optional, Sequence, Tuple

from . import aggregate as agg
from .aggregate import AggregationError, KgAssessment, WeightProfile
from .catalog import QL, catalog
from .endpoint import EndpointError, SampleSpec, snapshot_from_endpoint
from .metrics import (
    GoldStandard,
    Judgment,
    JudgmentError,
    MetricConfig,
    MetricScore,
    SchemaSpec,
    compute_all_scores,
    record_judgment,
)
from .probe import ProbeReport, probe_all
from .registry import (
    COMPLETE,
    PENDING_EVIDENCE,
    PENDING_JUDGMENTS,
    AssessmentRun,
    NotFoundError,
    Store,
    new_run_id,
)
from .snapshot import GraphSnapshot

ZERO_SAMPLE = SampleSpec(max_triples=100000, page_size=1000)


def create_run(store: Store, kg_id: str, use_case_id: str, profile_id: str) -> AssessmentRun:
    """New pending run; all referenced ids must already be registered."""
    store.get_kg(kg_id)
    store.get_usecase(use_case_id)
    profile = store.get_profile(profile_id)
    run = AssessmentRun(
        run_id=new_run_id(),
        kg_id=kg_id,
        use_case_id=use_case_id,
        profile_id=profile_id,
        catalog_version=profile.catalog_version,
        created_at=datetime.now(timezone.utc),
        status=PENDING_EVIDENCE,
    )
    store.save_run(run)
    return run


def pending_ql_metrics(profile: WeightProfile, judgments: Sequence[Judgment]) -> List[str]:
    """Positively weighted qualitative metrics that have no judgment yet."""
    judged = {j.metric_id for j in judgments}
    pending = []
    for dim in catalog():
        if profile.beta_of(dim.dimension_id) <= 0:
            continue
        alpha = profile.alpha_of(dim.dimension_id)
        for metric in dim.metrics:
            if metric.kind == QL and alpha.get(metric.metric_id, 0) > 0:
                if metric.metric_id not in judged:
                    pending.append(metric.metric_id)
    return pending


def _status_for(
    profile: WeightProfile,
    judgments: Sequence[Judgment],
    total_known: bool,
) -> str:
    if not total_known:
        return PENDING_EVIDENCE
    if pending_ql_metrics(profile, judgments):
        return PENDING_JUDGMENTS
    return COMPLETE


def execute_run(
    store: Store,
    run: AssessmentRun,
    sample: SampleSpec = ZERO_SAMPLE,
    sleeper: Callable[[float], None] = time.sleep,
    now: Optional[datetime] = None,
) -> AssessmentRun:
    """Collect evidence, score and aggregate; persists and returns the run."""
    kg = store.get_kg(run.kg_id)
    usecase = store.get_usecase(run.use_case_id)
    profile = store.get_profile(run.profile_id)
    gold = store.get_gold_standard(usecase.gold_standard_ref) if usecase.gold_standard_ref else None
    schema = store.get_schema(usecase.schema_ref) if usecase.schema_ref else None

    snapshot, snapshot_ref = _obtain_snapshot(store, run.kg_id, kg, sample)

    report: Optional[ProbeReport] = None
    if kg.endpoint_config is not None:
        report = probe_all(kg.endpoint_config, sleeper=sleeper)

    metric_config = MetricConfig(own_namespaces=tuple(kg.namespaces))
    scores = compute_all_scores(
        snapshot=snapshot,
        report=report,
        config=kg.endpoint_config,
        gold=gold,
        schema=schema,
        judgments=run.judgment_history,
        metric_config=metric_config,
        now=now,
    )
    return _aggregate_and_save(store, run, profile, scores, report, snapshot_ref)


def _obtain_snapshot(
    store: Store,
    kg_id: str,
    kg,
    sample: SampleSpec,
) -> Tuple[Optional[GraphSnapshot], Optional[str]]:
    """Latest stored snapshot, else a fresh endpoint sample, else nothing."""
    snapshot_id = store.latest_snapshot_id(kg_id)
    if snapshot_id is not None:
        return store.load_snapshot(snapshot_id), snapshot_id
    config = kg.endpoint_config
    if config is not None and config.sparql_endpoint:
        try:
            snapshot = snapshot_from_endpoint(config, sample)
        except EndpointError:
            return None, None
        return snapshot, store.save_snapshot(snapshot)
    return None, None


def _aggregate_and_save(
    store: Store,
    run: AssessmentRun,
    profile: WeightProfile,
    scores: Sequence[MetricScore],
    report: Optional[ProbeReport],
    snapshot_ref: Optional[str],
    overwrite: bool = True,
) -> AssessmentRun:
    try:
        assessment = agg.assess(scores, profile, kg_id=run.kg_id)
        total = assessment.total
        dimension_scores = assessment.dimension_scores
        effective_beta = dict(assessment.effective_beta)
        excluded = assessment.excluded_dimensions
        total_known = True
    except AggregationError:
        total = None
        dimension_scores = ()
        effective_beta = {}
        excluded = ()
        total_known = False

    updated = replace(
        run,
        snapshot_ref=snapshot_ref,
        probe_report=report,
        metric_scores=tuple(scores),
        dimension_scores=dimension_scores,
        total=total,
        effective_beta=effective_beta,
        excluded_dimensions=excluded,
        status=_status_for(profile, run.judgment_history, total_known),
    )
    store.save_run(updated, overwrite=overwrite)
    return updated


def record_run_judgment(store: Store, run_id: str, judgment: Judgment) -> AssessmentRun:
    """Append a judgment, refresh the affected score and re-aggregate.

    Works purely from the run's cached scores: no re-probing or re-parsing.
    A newer judgment for the same metric supersedes the older one; all are
    retained in judgment_history.
    """
    run = store.load_run(run_id)
    score = record_judgment(judgment)  # validates QL kind and range
    history = run.judgment_history + (judgment,)
    scores = [score if s.metric_id == judgment.metric_id else s for s in run.metric_scores]
    if not any(s.metric_id == judgment.metric_id for s in scores):
        scores.append(score)
    profile = store.get_profile(run.profile_id)
    run = replace(run, judgment_history=history)
    return _aggregate_and_save(
        store, run, profile, scores, run.probe_report, run.snapshot_ref,
    )


def retune_run_id(parent_run_id: str, profile: WeightProfile) -> str:
    """Deterministic id so that repeating a retune reuses the derived run."""
    import json

    canonical = json.dumps(profile.to_json(), sort_keys=True, separators=(",", ":"))
    digest = hashlib.sha256((parent_run_id + canonical).encode("utf-8")).hexdigest()
    return f"{parent_run_id}-rt-{digest[:12]}"


def retune_run(store: Store, run_id: str, profile: WeightProfile) -> AssessmentRun:
    """Derived run under new weights, computed from the parent's cached scores."""
    parent = store.load_run(run_id)
    derived_id = retune_run_id(parent.run_id, profile)
    if store.run_exists(derived_id):
        return store.load_run(derived_id)
    cached = KgAssessment(
        kg_id=parent.kg_id,
        use_case_id=parent.use_case_id,
        profile_id=parent.profile_id,
        catalog_version=parent.catalog_version,
        dimension_scores=parent.dimension_scores,
        total=parent.total if parent.total is not None else agg.ZERO,
        metric_scores=parent.metric_scores,
        effective_beta=parent.effective_beta,
        excluded_dimensions=parent.excluded_dimensions,
    )
    assessment = agg.retune(cached, profile)
    derived = AssessmentRun(
        run_id=derived_id,
        kg_id=parent.kg_id,
        use_case_id=parent.use_case_id,
        profile_id=profile.profile_id,
        catalog_version=parent.catalog_version,
        created_at=datetime.now(timezone.utc),
        status=_status_for(profile, parent.judgment_history, True),
        snapshot_ref=parent.snapshot_ref,
        probe_report=parent.probe_report,
        metric_scores=assessment.metric_scores,
        dimension_scores=assessment.dimension_scores,
        total=assessment.total,
        effective_beta=dict(assessment.effective_beta),
        excluded_dimensions=assessment.excluded_dimensions,
        judgment_history=parent.judgment_history,
        parent_run_id=parent.run_id,
    )
    store.save_run(derived)
    return derived


def assessment_of(run: AssessmentRun) -> KgAssessment:
    """View a completed run as a KgAssessment for ranking."""
    if run.total is None:
        raise AggregationError(f"run {run.run_id} has no total yet")
    return KgAssessment(
        kg_id=run.kg_id,
        use_case_id=run.use_case_id,
        profile_id=run.profile_id,
        catalog_version=run.catalog_version,
        dimension_scores=run.dimension_scores,
        total=run.total,
        metric_scores=run.metric_scores,
        effective_beta=run.effective_beta,
        excluded_dimensions=run.excluded_dimensions,
    )


def latest_complete_runs(
    store: Store, use_case_id: str, profile_id: str,
) -> List[AssessmentRun]:
    """Newest complete run per KG for one use case and profile."""
    runs = store.list_runs(use_case_id=use_case_id, status=COMPLETE)
    newest = {}
    for run in runs:  # list is newest-first
        if run.profile_id == profile_id and run.kg_id not in newest:
            newest[run.kg_id] = run
    return list(newest.values())
