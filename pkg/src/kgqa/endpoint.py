"""Endpoint sampling: build a snapshot by paged SPARQL retrieval.

Pages through ``SELECT ?s ?p ?o`` with a fixed ordering clause so that a given
endpoint state always yields the same snapshot. Results are read in the SPARQL
JSON results format.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import List, Optional

from .probe import EndpointConfig, ProbeSession, SPARQL_RESULTS_JSON
from .snapshot import DEFAULT_LABELING_PREDICATES, GraphSnapshot, build_snapshot
from .terms import Term, TermError, Triple, blank, iri, literal

QUERY_TEMPLATE = "SELECT ?s ?p ?o WHERE {{ ?s ?p ?o }} ORDER BY ?s ?p ?o LIMIT {limit} OFFSET {offset}"


class EndpointError(RuntimeError):
    """Endpoint unreachable, non-success status or malformed payload."""

    def __init__(self, message: str, status: Optional[int] = None):
        super().__init__(message)
        self.status = status


@dataclass(frozen=True)
class SampleSpec:
    """Bounds for paged retrieval."""

    max_triples: int = 10000
    page_size: int = 1000

    def __post_init__(self) -> None:
        if self.max_triples < 0 or self.page_size <= 0:
            raise ValueError("max_triples must be >= 0 and page_size positive")


def _binding_to_term(doc: dict) -> Term:
    kind = doc.get("type")
    value = doc.get("value", "")
    if kind == "uri":
        return iri(value)
    if kind == "bnode":
        return blank(value)
    if kind in ("literal", "typed-literal"):
        return literal(value, datatype=doc.get("datatype"), language=doc.get("xml:lang"))
    raise ValueError(f"unknown binding type {kind!r}")


def snapshot_from_endpoint(
    config: EndpointConfig,
    sample: SampleSpec,
    labeling_predicates=DEFAULT_LABELING_PREDICATES,
) -> GraphSnapshot:
    """Retrieve up to max_triples statements and build a snapshot."""
    if not config.sparql_endpoint:
        raise EndpointError("no SPARQL endpoint configured")
    session = ProbeSession(config.timeout_ms, config.retries, extra_headers=config.extra_headers)
    try:
        triples: List[Triple] = []
        seen = set()
        offset = 0
        pages = 0
        max_pages = sample.max_triples // sample.page_size + 2
        retrieved_at = datetime.now(timezone.utc)
        while len(triples) < sample.max_triples:
            pages += 1
            if pages > max_pages:
                raise EndpointError("page limit exceeded without progress")
            limit = min(sample.page_size, sample.max_triples - len(triples))
            query = QUERY_TEMPLATE.format(limit=limit, offset=offset)
            rows = _fetch_page(session, config.sparql_endpoint, query)
            before = len(seen)
            for row in rows:
                try:
                    t = Triple(
                        _binding_to_term(row["s"]),
                        _binding_to_term(row["p"]),
                        _binding_to_term(row["o"]),
                    )
                except (KeyError, ValueError, TermError) as exc:
                    raise EndpointError(f"malformed result payload: {exc}") from exc
                if t not in seen:
                    seen.add(t)
                    triples.append(t)
            offset += len(rows)
            if len(rows) < limit:
                break
            if len(seen) == before and rows:
                raise EndpointError("page limit exceeded without progress")
        source = {
            "type": "endpoint",
            "endpoint": config.sparql_endpoint,
            "query_template": QUERY_TEMPLATE,
            "page_size": sample.page_size,
            "max_triples": sample.max_triples,
            "retrieved_at": retrieved_at.isoformat(),
        }
        return build_snapshot(
            config.kg_id, triples, source=source,
            labeling_predicates=labeling_predicates,
        )
    finally:
        session.close()


def _fetch_page(session: ProbeSession, endpoint: str, query: str) -> List[dict]:
    resp, reason, _attempts, _elapsed = session.fetch(
        "POST", endpoint,
        accept=SPARQL_RESULTS_JSON,
        body=query.encode("utf-8"),
        content_type="application/sparql-query",
    )
    if resp is None:
        raise EndpointError(f"endpoint unreachable: {reason}")
    if not (200 <= resp.status_code < 300):
        raise EndpointError(
            f"endpoint answered HTTP {resp.status_code}", status=resp.status_code,
        )
    try:
        payload = json.loads(resp.content)
        return list(payload["results"]["bindings"])
    except (ValueError, KeyError, TypeError) as exc:
        raise EndpointError(f"malformed result payload: {exc}") from exc
