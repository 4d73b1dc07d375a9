"""File-backed registries and run persistence.

One JSON document per entity under a store directory, plus an index file:

    store/usecases/*.json   store/kgs/*.json      store/profiles/*.json
    store/goldstandards/*.json  store/schemas/*.json
    store/runs/*.json       store/snapshots/*.{json,nt}
    store/index.json

Every document embeds a sha256 content checksum that is verified on load.
Writes are serialized through an advisory lock file; reads take no lock.
Completed runs are never mutated: judgment updates and retunes create
derived runs that reference their parent.
"""

from __future__ import annotations

import fcntl
import hashlib
import json
import logging
import os
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .aggregate import DimensionScore, WeightProfile, validate_profile
from .catalog import CATALOG_VERSION

logger = logging.getLogger(__name__)
from .metrics import GoldStandard, Judgment, MetricScore, SchemaSpec
from .probe import EndpointConfig, ProbeReport
from .snapshot import GraphSnapshot, GraphStats
from . import ntriples

PENDING_EVIDENCE = "pending_evidence"
PENDING_JUDGMENTS = "pending_judgments"
COMPLETE = "complete"

_COLLECTIONS = ("kgs", "usecases", "profiles", "goldstandards", "schemas", "runs", "snapshots")


class StoreError(Exception):
    pass


class NotFoundError(StoreError):
    pass


class CollisionError(StoreError):
    pass


class IntegrityError(StoreError):
    """Checksum mismatch: the document was corrupted after writing."""


class ValidationFailure(StoreError):
    def __init__(self, violations: Sequence[str]):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


@dataclass(frozen=True)
class UseCase:
    use_case_id: str
    title: str
    description: str = ""
    domain_tags: Tuple[str, ...] = ()
    gold_standard_ref: Optional[str] = None
    schema_ref: Optional[str] = None
    default_profile_id: Optional[str] = None

    def to_json(self) -> dict:
        return {
            "use_case_id": self.use_case_id,
            "title": self.title,
            "description": self.description,
            "domain_tags": list(self.domain_tags),
            "gold_standard_ref": self.gold_standard_ref,
            "schema_ref": self.schema_ref,
            "default_profile_id": self.default_profile_id,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "UseCase":
        return cls(
            use_case_id=doc["use_case_id"],
            title=doc.get("title", ""),
            description=doc.get("description", ""),
            domain_tags=tuple(doc.get("domain_tags", ())),
            gold_standard_ref=doc.get("gold_standard_ref"),
            schema_ref=doc.get("schema_ref"),
            default_profile_id=doc.get("default_profile_id"),
        )


@dataclass(frozen=True)
class KgRecord:
    kg_id: str
    name: str
    description: str = ""
    namespaces: Tuple[str, ...] = ()
    endpoint_config: Optional[EndpointConfig] = None

    def to_json(self) -> dict:
        return {
            "kg_id": self.kg_id,
            "name": self.name,
            "description": self.description,
            "namespaces": list(self.namespaces),
            "endpoint_config": self.endpoint_config.to_json() if self.endpoint_config else None,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "KgRecord":
        config = doc.get("endpoint_config")
        return cls(
            kg_id=doc["kg_id"],
            name=doc.get("name", doc["kg_id"]),
            description=doc.get("description", ""),
            namespaces=tuple(doc.get("namespaces", ())),
            endpoint_config=EndpointConfig.from_json(config) if config else None,
        )


@dataclass(frozen=True)
class AssessmentRun:
    """One persisted assessment of a KG under a use case and profile."""

    run_id: str
    kg_id: str
    use_case_id: str
    profile_id: str
    catalog_version: str
    created_at: datetime
    status: str = PENDING_EVIDENCE
    snapshot_ref: Optional[str] = None
    probe_report: Optional[ProbeReport] = None
    metric_scores: Tuple[MetricScore, ...] = ()
    dimension_scores: Tuple[DimensionScore, ...] = ()
    total: Optional[Fraction] = None
    effective_beta: Dict[str, Fraction] = field(default_factory=dict)
    excluded_dimensions: Tuple[str, ...] = ()
    judgment_history: Tuple[Judgment, ...] = ()
    parent_run_id: Optional[str] = None

    def to_json(self) -> dict:
        def rat(x: Fraction) -> dict:
            return {"num": x.numerator, "den": x.denominator}

        return {
            "run_id": self.run_id,
            "kg_id": self.kg_id,
            "use_case_id": self.use_case_id,
            "profile_id": self.profile_id,
            "catalog_version": self.catalog_version,
            "created_at": self.created_at.isoformat(),
            "status": self.status,
            "snapshot_ref": self.snapshot_ref,
            "probe_report": self.probe_report.to_json() if self.probe_report else None,
            "metric_scores": [s.to_json() for s in self.metric_scores],
            "dimension_scores": [d.to_json() for d in self.dimension_scores],
            "total": rat(self.total) if self.total is not None else None,
            "effective_beta": {d: rat(v) for d, v in sorted(self.effective_beta.items())},
            "excluded_dimensions": list(self.excluded_dimensions),
            "judgment_history": [j.to_json() for j in self.judgment_history],
            "parent_run_id": self.parent_run_id,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "AssessmentRun":
        total = doc.get("total")
        report = doc.get("probe_report")
        return cls(
            run_id=doc["run_id"],
            kg_id=doc["kg_id"],
            use_case_id=doc["use_case_id"],
            profile_id=doc["profile_id"],
            catalog_version=doc["catalog_version"],
            created_at=datetime.fromisoformat(doc["created_at"]),
            status=doc.get("status", PENDING_EVIDENCE),
            snapshot_ref=doc.get("snapshot_ref"),
            probe_report=ProbeReport.from_json(report) if report else None,
            metric_scores=tuple(MetricScore.from_json(s) for s in doc.get("metric_scores", ())),
            dimension_scores=tuple(
                DimensionScore.from_json(d) for d in doc.get("dimension_scores", ())
            ),
            total=Fraction(total["num"], total["den"]) if total else None,
            effective_beta={
                d: Fraction(v["num"], v["den"])
                for d, v in doc.get("effective_beta", {}).items()
            },
            excluded_dimensions=tuple(doc.get("excluded_dimensions", ())),
            judgment_history=tuple(
                Judgment.from_json(j) for j in doc.get("judgment_history", ())
            ),
            parent_run_id=doc.get("parent_run_id"),
        )


def _canonical_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def _checksum(payload: dict) -> str:
    return hashlib.sha256(_canonical_json(payload).encode("utf-8")).hexdigest()


def new_run_id(created_at: Optional[datetime] = None) -> str:
    stamp = (created_at or datetime.now(timezone.utc)).strftime("%Y%m%dT%H%M%S")
    return f"run-{stamp}-{uuid.uuid4().hex[:8]}"


class Store:
    """Directory-backed entity store with checksums and a writer lock."""

    def __init__(self, root: Union[str, Path]):
        self.root = Path(root)
        for name in _COLLECTIONS:
            (self.root / name).mkdir(parents=True, exist_ok=True)
        self._lock_path = self.root / ".lock"

    # -- locking and raw I/O --------------------------------------------------

    class _WriterLock:
        def __init__(self, path: Path):
            self.path = path
            self.handle = None

        def __enter__(self):
            self.handle = open(self.path, "a+")
            fcntl.flock(self.handle.fileno(), fcntl.LOCK_EX)
            return self

        def __exit__(self, *exc):
            fcntl.flock(self.handle.fileno(), fcntl.LOCK_UN)
            self.handle.close()

    def _write(self, collection: str, entity_id: str, payload: dict, overwrite: bool = False) -> None:
        path = self.root / collection / f"{entity_id}.json"
        with self._WriterLock(self._lock_path):
            if path.exists() and not overwrite:
                raise CollisionError(f"{collection[:-1]} {entity_id!r} already exists")
            doc = dict(payload)
            doc["checksum"] = _checksum(payload)
            tmp = path.with_suffix(".json.tmp")
            tmp.write_text(json.dumps(doc, indent=2, ensure_ascii=False), encoding="utf-8")
            os.replace(tmp, path)
            self._update_index()

    def _read(self, collection: str, entity_id: str) -> dict:
        path = self.root / collection / f"{entity_id}.json"
        if not path.exists():
            raise NotFoundError(f"{collection[:-1]} {entity_id!r} not found")
        doc = json.loads(path.read_text(encoding="utf-8"))
        stored = doc.pop("checksum", None)
        if stored != _checksum(doc):
            raise IntegrityError(f"checksum mismatch for {collection}/{entity_id}")
        return doc

    def _ids(self, collection: str) -> List[str]:
        return sorted(p.stem for p in (self.root / collection).glob("*.json"))

    def _update_index(self) -> None:
        payload = {
            "collections": {name: self._ids(name) for name in _COLLECTIONS},
        }
        doc = dict(payload)
        doc["checksum"] = _checksum(payload)
        tmp = self.root / "index.json.tmp"
        tmp.write_text(json.dumps(doc, indent=2, ensure_ascii=False), encoding="utf-8")
        os.replace(tmp, self.root / "index.json")

    # -- registration ----------------------------------------------------------

    def register_kg(self, record: KgRecord) -> str:
        self._write("kgs", record.kg_id, record.to_json())
        return record.kg_id

    def register_usecase(self, usecase: UseCase) -> str:
        missing = []
        if usecase.gold_standard_ref and not self._exists("goldstandards", usecase.gold_standard_ref):
            missing.append(f"gold standard {usecase.gold_standard_ref!r} not registered")
        if usecase.schema_ref and not self._exists("schemas", usecase.schema_ref):
            missing.append(f"schema {usecase.schema_ref!r} not registered")
        if usecase.default_profile_id and not self._exists("profiles", usecase.default_profile_id):
            missing.append(f"profile {usecase.default_profile_id!r} not registered")
        if missing:
            raise ValidationFailure(missing)
        self._write("usecases", usecase.use_case_id, usecase.to_json())
        return usecase.use_case_id

    def register_profile(self, profile: WeightProfile) -> str:
        violations = validate_profile(profile)
        if violations:
            raise ValidationFailure(violations)
        self._write("profiles", profile.profile_id, profile.to_json())
        return profile.profile_id

    def register_gold_standard(self, gold: GoldStandard) -> str:
        self._write("goldstandards", gold.gold_id, gold.to_json())
        return gold.gold_id

    def register_schema(self, schema: SchemaSpec) -> str:
        self._write("schemas", schema.schema_id, schema.to_json())
        return schema.schema_id

    def _exists(self, collection: str, entity_id: str) -> bool:
        return (self.root / collection / f"{entity_id}.json").exists()

    # -- lookups ----------------------------------------------------------------

    def get_kg(self, kg_id: str) -> KgRecord:
        return KgRecord.from_json(self._read("kgs", kg_id))

    def get_usecase(self, use_case_id: str) -> UseCase:
        return UseCase.from_json(self._read("usecases", use_case_id))

    def get_profile(self, profile_id: str) -> WeightProfile:
        return WeightProfile.from_json(self._read("profiles", profile_id))

    def get_gold_standard(self, gold_id: str) -> GoldStandard:
        return GoldStandard.from_json(self._read("goldstandards", gold_id))

    def get_schema(self, schema_id: str) -> SchemaSpec:
        return SchemaSpec.from_json(self._read("schemas", schema_id))

    def list_ids(self, collection: str) -> List[str]:
        if collection not in _COLLECTIONS:
            raise NotFoundError(f"unknown collection {collection!r}")
        return self._ids(collection)

    # -- snapshots ----------------------------------------------------------------

    def save_snapshot(self, snapshot: GraphSnapshot) -> str:
        body = snapshot.serialize()
        digest = hashlib.sha256(body.encode("utf-8")).hexdigest()
        snapshot_id = f"{snapshot.kg_id}-{digest[:12]}"
        nt_path = self.root / "snapshots" / f"{snapshot_id}.nt"
        with self._WriterLock(self._lock_path):
            nt_path.write_text(body, encoding="utf-8")
        payload = {
            "snapshot_id": snapshot_id,
            "kg_id": snapshot.kg_id,
            "source": snapshot.source,
            "ingested_at": snapshot.ingested_at.isoformat(),
            "stats": snapshot.stats.to_json(),
            "triples_sha256": digest,
        }
        self._write("snapshots", snapshot_id, payload, overwrite=True)
        return snapshot_id

    def load_snapshot(self, snapshot_id: str) -> GraphSnapshot:
        meta = self._read("snapshots", snapshot_id)
        nt_path = self.root / "snapshots" / f"{snapshot_id}.nt"
        if not nt_path.exists():
            raise NotFoundError(f"snapshot body {snapshot_id!r} not found")
        body = nt_path.read_text(encoding="utf-8")
        digest = hashlib.sha256(body.encode("utf-8")).hexdigest()
        if digest != meta["triples_sha256"]:
            raise IntegrityError(f"snapshot body checksum mismatch for {snapshot_id}")
        triples, _ = ntriples.parse(body, mode="strict")
        stats = GraphStats.from_json(meta["stats"])
        return GraphSnapshot(
            kg_id=meta["kg_id"],
            triples=tuple(triples),
            source=meta["source"],
            ingested_at=datetime.fromisoformat(meta["ingested_at"]),
            stats=stats,
        )

    def latest_snapshot_id(self, kg_id: str) -> Optional[str]:
        candidates = []
        for snapshot_id in self._ids("snapshots"):
            try:
                meta = self._read("snapshots", snapshot_id)
            except IntegrityError:
                continue
            if meta["kg_id"] == kg_id:
                candidates.append((meta["ingested_at"], snapshot_id))
        if not candidates:
            return None
        return max(candidates)[1]

    # -- runs ------------------------------------------------------------------

    def save_run(self, run: AssessmentRun, overwrite: bool = False) -> str:
        self._write("runs", run.run_id, run.to_json(), overwrite=overwrite)
        return run.run_id

    def load_run(self, run_id: str) -> AssessmentRun:
        run = AssessmentRun.from_json(self._read("runs", run_id))
        if run.catalog_version != CATALOG_VERSION:
            logger.warning(
                "run %s was scored under catalog %s (current %s); "
                "retuning it will be rejected",
                run_id, run.catalog_version, CATALOG_VERSION,
            )
        return run

    def run_exists(self, run_id: str) -> bool:
        return self._exists("runs", run_id)

    def list_runs(
        self,
        kg_id: Optional[str] = None,
        use_case_id: Optional[str] = None,
        status: Optional[str] = None,
    ) -> List[AssessmentRun]:
        """Runs matching the filters, newest first, run_id as tiebreak."""
        runs = []
        for run_id in self._ids("runs"):
            run = self.load_run(run_id)
            if kg_id is not None and run.kg_id != kg_id:
                continue
            if use_case_id is not None and run.use_case_id != use_case_id:
                continue
            if status is not None and run.status != status:
                continue
            runs.append(run)
        runs.sort(key=lambda r: r.run_id)
        runs.sort(key=lambda r: r.created_at, reverse=True)
        return runs
