"""HTTP surface for the engine, versioned under /v1.

Read endpoints never mutate the store. Run execution is synchronous at desk
scale: POST /v1/runs answers 202 with the executed run and clients may poll
GET /v1/runs/{id}. Scores travel as {"num", "den", "decimal"} objects, the
decimal rendered with 12 significant digits; no other rounding happens
server-side.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from starlette.exceptions import HTTPException as StarletteHTTPException

from . import pipeline
from .aggregate import AggregationError, WeightProfile, validate_profile
from .catalog import CATALOG_VERSION, catalog_as_dict, resolve_metric, UnknownMetricError
from .metrics import GoldStandard, Judgment, JudgmentError, SchemaSpec
from .probe import ConfigError
from .rational import RationalParseError, decimal_str, parse_rational
from .registry import (
    AssessmentRun,
    CollisionError,
    IntegrityError,
    KgRecord,
    NotFoundError,
    Store,
    UseCase,
    ValidationFailure,
)
from .terms import TermError


class ApiError(Exception):
    """Carried by every non-success response: code, message, details."""

    def __init__(self, status: int, code: str, message: str, details: Any = None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.details = details

    def response(self) -> JSONResponse:
        return JSONResponse(
            status_code=self.status,
            content={"code": self.code, "message": self.message, "details": self.details},
        )


def _decorate_rationals(node: Any) -> Any:
    """Add a 12-significant-digit decimal next to every {num, den} pair."""
    if isinstance(node, dict):
        if set(node) == {"num", "den"}:
            return {
                "num": node["num"],
                "den": node["den"],
                "decimal": decimal_str(Fraction(node["num"], node["den"])),
            }
        return {k: _decorate_rationals(v) for k, v in node.items()}
    if isinstance(node, list):
        return [_decorate_rationals(v) for v in node]
    return node


def run_document(run: AssessmentRun) -> dict:
    return _decorate_rationals(run.to_json())


def _require(body: dict, *names: str) -> None:
    missing = [n for n in names if body.get(n) in (None, "")]
    if missing:
        raise ApiError(400, "validation", f"missing field(s): {', '.join(missing)}")


def _profile_from_body(body: dict) -> WeightProfile:
    try:
        return WeightProfile.from_json(body)
    except (KeyError, RationalParseError, TypeError) as exc:
        raise ApiError(400, "validation", f"malformed profile: {exc}") from exc


def _inline_profile(body: dict, parent: AssessmentRun) -> WeightProfile:
    """Anonymous profile from inline weights; id derived from content."""
    canonical = json.dumps(
        {"beta": body.get("beta"), "alpha": body.get("alpha")},
        sort_keys=True, separators=(",", ":"),
    )
    digest = hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:12]
    try:
        beta = {d: parse_rational(v) for d, v in body.get("beta", {}).items()}
        alpha = {
            d: {m: parse_rational(v) for m, v in metrics.items()}
            for d, metrics in body.get("alpha", {}).items()
        }
    except RationalParseError as exc:
        raise ApiError(400, "validation", f"malformed weights: {exc}") from exc
    return WeightProfile(
        profile_id=f"inline-{digest}",
        use_case_id=parent.use_case_id,
        catalog_version=parent.catalog_version,
        beta=beta,
        alpha=alpha,
    )


def create_app(
    store: Store,
    cors_origins: Optional[List[str]] = None,
    dashboard_dir: Optional[str] = None,
) -> FastAPI:
    app = FastAPI(title="kgqa", version="0.1.0", docs_url=None, redoc_url=None)

    if cors_origins:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(
            CORSMiddleware,
            allow_origins=cors_origins,
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.exception_handler(ApiError)
    async def _api_error(_request: Request, exc: ApiError):
        return exc.response()

    @app.exception_handler(StarletteHTTPException)
    async def _http_error(_request: Request, exc: StarletteHTTPException):
        return ApiError(exc.status_code, "http-error", str(exc.detail)).response()

    @app.exception_handler(RequestValidationError)
    async def _body_error(_request: Request, exc: RequestValidationError):
        return ApiError(400, "validation", "malformed request body", exc.errors()).response()

    # -- catalog and registries ------------------------------------------------

    @app.get("/v1/catalog")
    def get_catalog():
        return catalog_as_dict()

    @app.get("/v1/kgs")
    def list_kgs():
        return {"kgs": [store.get_kg(i).to_json() for i in store.list_ids("kgs")]}

    @app.get("/v1/usecases")
    def list_usecases():
        return {"usecases": [store.get_usecase(i).to_json() for i in store.list_ids("usecases")]}

    @app.get("/v1/profiles")
    def list_profiles():
        return {
            "profiles": [
                _decorate_rationals(store.get_profile(i).to_json())
                for i in store.list_ids("profiles")
            ]
        }

    @app.get("/v1/profiles/{profile_id}")
    def get_profile(profile_id: str):
        return _decorate_rationals(_load(store.get_profile, profile_id).to_json())

    @app.get("/v1/usecases/{use_case_id}")
    def get_usecase(use_case_id: str):
        return _load(store.get_usecase, use_case_id).to_json()

    @app.post("/v1/kgs", status_code=201)
    async def post_kg(request: Request):
        body = await _json_body(request)
        _require(body, "kg_id", "name")
        try:
            record = KgRecord.from_json(body)
            return {"id": _register(store.register_kg, record)}
        except (ConfigError, TermError, ValueError) as exc:
            raise ApiError(400, "validation", str(exc)) from exc

    @app.post("/v1/usecases", status_code=201)
    async def post_usecase(request: Request):
        body = await _json_body(request)
        _require(body, "use_case_id", "title")
        return {"id": _register(store.register_usecase, UseCase.from_json(body))}

    @app.post("/v1/profiles", status_code=201)
    async def post_profile(request: Request):
        body = await _json_body(request)
        _require(body, "profile_id")
        profile = _profile_from_body(body)
        return {"id": _register(store.register_profile, profile)}

    @app.post("/v1/goldstandards", status_code=201)
    async def post_gold(request: Request):
        body = await _json_body(request)
        _require(body, "gold_id")
        try:
            gold = GoldStandard.from_json(body)
        except (KeyError, TypeError, ValueError, TermError) as exc:
            raise ApiError(400, "validation", f"malformed gold standard: {exc}") from exc
        return {"id": _register(store.register_gold_standard, gold)}

    @app.post("/v1/schemas", status_code=201)
    async def post_schema(request: Request):
        body = await _json_body(request)
        _require(body, "schema_id")
        try:
            schema = SchemaSpec.from_json(body)
        except (KeyError, TypeError, ValueError) as exc:
            raise ApiError(400, "validation", f"malformed schema: {exc}") from exc
        return {"id": _register(store.register_schema, schema)}

    # -- runs --------------------------------------------------------------------

    @app.post("/v1/runs", status_code=202)
    async def post_run(request: Request):
        body = await _json_body(request)
        _require(body, "kg_id", "use_case_id", "profile_id")
        try:
            run = pipeline.create_run(
                store, body["kg_id"], body["use_case_id"], body["profile_id"],
            )
            run = pipeline.execute_run(store, run)
        except NotFoundError as exc:
            raise ApiError(404, "not-found", str(exc)) from exc
        return run_document(run)

    @app.get("/v1/runs")
    def list_runs(kg: Optional[str] = None, usecase: Optional[str] = None,
                  status: Optional[str] = None):
        runs = store.list_runs(kg_id=kg, use_case_id=usecase, status=status)
        return {"runs": [run_document(r) for r in runs]}

    @app.get("/v1/runs/{run_id}")
    def get_run(run_id: str):
        return run_document(_load(store.load_run, run_id))

    @app.post("/v1/runs/{run_id}/judgments")
    async def post_judgment(request: Request, run_id: str):
        body = await _json_body(request)
        _require(body, "metric_id", "rater")
        if "value" not in body:
            raise ApiError(400, "validation", "missing field(s): value")
        try:
            spec = resolve_metric(body["metric_id"])
        except UnknownMetricError as exc:
            raise ApiError(400, "validation", str(exc)) from exc
        try:
            value = parse_rational(body["value"])
        except RationalParseError as exc:
            raise ApiError(400, "validation", str(exc)) from exc
        judgment = Judgment(
            metric_id=body["metric_id"],
            value=value,
            rater=body["rater"],
            rationale=body.get("rationale", ""),
        )
        try:
            run = pipeline.record_run_judgment(store, run_id, judgment)
        except NotFoundError as exc:
            raise ApiError(404, "not-found", str(exc)) from exc
        except JudgmentError as exc:
            raise ApiError(400, "validation", str(exc)) from exc
        return run_document(run)

    @app.post("/v1/runs/{run_id}/retune")
    async def post_retune(request: Request, run_id: str):
        body = await _json_body(request)
        parent = _load(store.load_run, run_id)
        if "profile_id" in body:
            profile = _load(store.get_profile, body["profile_id"])
        elif "beta" in body or "alpha" in body:
            profile = _inline_profile(body, parent)
        else:
            raise ApiError(400, "validation", "provide profile_id or inline beta/alpha weights")
        violations = validate_profile(profile)
        if violations:
            raise ApiError(400, "validation", "invalid weights", violations)
        try:
            derived = pipeline.retune_run(store, run_id, profile)
        except AggregationError as exc:
            raise ApiError(400, "validation", str(exc)) from exc
        return run_document(derived)

    # -- ranking -------------------------------------------------------------------

    @app.get("/v1/usecases/{use_case_id}/ranking")
    def get_ranking(use_case_id: str, profile: Optional[str] = None):
        usecase = _load(store.get_usecase, use_case_id)
        profile_id = profile or usecase.default_profile_id
        if not profile_id:
            raise ApiError(400, "validation", "no profile given and the use case has no default")
        runs = pipeline.latest_complete_runs(store, use_case_id, profile_id)
        entries = _ranking_entries(runs)
        return {
            "use_case_id": use_case_id,
            "profile_id": profile_id,
            "rankings": entries,
            "recommendation": _recommendation(usecase, entries),
        }

    def _ranking_entries(runs: List[AssessmentRun]) -> List[dict]:
        from .aggregate import rank_kgs

        assessments = [pipeline.assessment_of(r) for r in runs]
        run_by_kg = {r.kg_id: r for r in runs}
        entries = []
        for entry in rank_kgs(assessments):
            strongest, weakest = _extremes(entry.assessment)
            entries.append({
                "rank": entry.rank,
                "kg_id": entry.kg_id,
                "run_id": run_by_kg[entry.kg_id].run_id,
                "total": _decorate_rationals(
                    {"num": entry.total.numerator, "den": entry.total.denominator}
                ),
                "strongest_dimension": strongest,
                "weakest_dimension": weakest,
                "dimensions": {
                    d.dimension_id: _decorate_rationals(
                        {"num": d.value.numerator, "den": d.value.denominator}
                    )
                    for d in entry.assessment.dimension_scores
                    if d.value is not None
                },
            })
        return entries

    def _extremes(assessment) -> tuple:
        scored = [
            (d.value, d.dimension_id)
            for d in assessment.dimension_scores
            if d.value is not None and assessment.effective_beta.get(d.dimension_id)
        ]
        if not scored:
            return None, None
        strongest = min(scored, key=lambda pair: (-pair[0], pair[1]))
        weakest = min(scored, key=lambda pair: (pair[0], pair[1]))
        return strongest[1], weakest[1]

    def _recommendation(usecase: UseCase, entries: List[dict]) -> Optional[str]:
        if not entries:
            return None
        top = entries[0]
        return (
            f"Use {top['kg_id']} for use case {usecase.use_case_id}: "
            f"total score {top['total']['decimal']}, "
            f"strongest dimension {top['strongest_dimension']}, "
            f"weakest dimension {top['weakest_dimension']}."
        )

    # -- dashboard hosting -----------------------------------------------------------

    @app.get("/config.json")
    def bootstrap():
        return {"api_base_url": "/v1", "catalog_version": CATALOG_VERSION}

    if dashboard_dir and Path(dashboard_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=dashboard_dir, html=True), name="dashboard")

    return app


async def _json_body(request: Request) -> dict:
    try:
        body = await request.json()
    except Exception as exc:
        raise ApiError(400, "validation", "request body is not valid JSON") from exc
    if not isinstance(body, dict):
        raise ApiError(400, "validation", "request body must be a JSON object")
    return body


def _register(fn, entity):
    try:
        return fn(entity)
    except ValidationFailure as exc:
        raise ApiError(400, "validation", "validation failed", exc.violations) from exc
    except CollisionError as exc:
        raise ApiError(409, "collision", str(exc)) from exc


def _load(fn, entity_id: str):
    try:
        return fn(entity_id)
    except NotFoundError as exc:
        raise ApiError(404, "not-found", str(exc)) from exc
    except IntegrityError as exc:
        raise ApiError(500, "integrity", str(exc)) from exc
