"""Network-facing evidence collection.

Probes never mutate their target (HEAD, GET and read-only SPARQL forms only)
and never raise on network failure: every outcome lands in an Observation, and
assemble_report folds observations into summary fields that stay recomputable
from the raw list. Retries use exponential backoff starting at 250 ms.
"""

from __future__ import annotations

import json
import statistics
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import requests

USER_AGENT = "kgqa-probe/0.1 (quality assessment; read-only)"
DEFAULT_ACCEPT_TYPES: Tuple[str, ...] = (
    "text/turtle",
    "application/n-triples",
    "application/rdf+xml",
)
BACKOFF_BASE_MS = 250
MAX_REDIRECTS = 5


class ConfigError(ValueError):
    """EndpointConfig invariant violation."""


@dataclass(frozen=True)
class EndpointConfig:
    """How to reach one KG: endpoint, dump, sample IRIs and declarations."""

    kg_id: str
    sparql_endpoint: Optional[str] = None
    dump_url: Optional[str] = None
    sample_entity_iris: Tuple[str, ...] = ()
    accept_types: Tuple[str, ...] = DEFAULT_ACCEPT_TYPES
    timeout_ms: int = 5000
    retries: int = 1
    supports_update_declared: Optional[bool] = None
    edit_interface_declared: Optional[bool] = None
    license_iri_declared: Optional[str] = None
    signature_iri_declared: Optional[str] = None
    extra_headers: Tuple[Tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        if not (self.sparql_endpoint or self.dump_url or self.sample_entity_iris):
            raise ConfigError(
                "config needs a SPARQL endpoint, a dump URL or sample entity IRIs"
            )
        if self.timeout_ms <= 0:
            raise ConfigError("timeout must be positive")
        if self.retries < 0:
            raise ConfigError("retries cannot be negative")

    def to_json(self) -> dict:
        return {
            "kg_id": self.kg_id,
            "sparql_endpoint": self.sparql_endpoint,
            "dump_url": self.dump_url,
            "sample_entity_iris": list(self.sample_entity_iris),
            "accept_types": list(self.accept_types),
            "timeout_ms": self.timeout_ms,
            "retries": self.retries,
            "supports_update_declared": self.supports_update_declared,
            "edit_interface_declared": self.edit_interface_declared,
            "license_iri_declared": self.license_iri_declared,
            "signature_iri_declared": self.signature_iri_declared,
            "extra_headers": [list(h) for h in self.extra_headers],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "EndpointConfig":
        return cls(
            kg_id=doc["kg_id"],
            sparql_endpoint=doc.get("sparql_endpoint"),
            dump_url=doc.get("dump_url"),
            sample_entity_iris=tuple(doc.get("sample_entity_iris", ())),
            accept_types=tuple(doc.get("accept_types", DEFAULT_ACCEPT_TYPES)),
            timeout_ms=doc.get("timeout_ms", 5000),
            retries=doc.get("retries", 1),
            supports_update_declared=doc.get("supports_update_declared"),
            edit_interface_declared=doc.get("edit_interface_declared"),
            license_iri_declared=doc.get("license_iri_declared"),
            signature_iri_declared=doc.get("signature_iri_declared"),
            extra_headers=tuple(tuple(h) for h in doc.get("extra_headers", ())),
        )


@dataclass(frozen=True)
class Observation:
    """One probe outcome. latency_ms covers the whole fetch, retries included."""

    probe: str
    target: str
    ok: bool
    status: Optional[int] = None
    latency_ms: Optional[float] = None
    reason: Optional[str] = None
    attempts: int = 1
    accept: Optional[str] = None
    content_type: Optional[str] = None
    skipped: bool = False

    def to_json(self) -> dict:
        return {
            "probe": self.probe,
            "target": self.target,
            "ok": self.ok,
            "status": self.status,
            "latency_ms": self.latency_ms,
            "reason": self.reason,
            "attempts": self.attempts,
            "accept": self.accept,
            "content_type": self.content_type,
            "skipped": self.skipped,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "Observation":
        return cls(**{k: doc.get(k) for k in (
            "probe", "target", "ok", "status", "latency_ms", "reason",
            "attempts", "accept", "content_type", "skipped",
        )})

    def comparable(self) -> "Observation":
        """Copy with timing stripped, for determinism comparisons."""
        return Observation(
            probe=self.probe, target=self.target, ok=self.ok, status=self.status,
            latency_ms=None, reason=self.reason, attempts=self.attempts,
            accept=self.accept, content_type=self.content_type, skipped=self.skipped,
        )


@dataclass(frozen=True)
class ProbeReport:
    """Summary over one probing session; every field recomputable from raw."""

    kg_id: str
    probed_at: datetime
    available: bool
    sparql_ok: bool
    dereference_success_fraction: Optional[Fraction]
    conneg_success_fraction: Optional[Fraction]
    dump_reachable: bool
    update_supported: bool
    median_latency_ms: Optional[float]
    raw_observations: Tuple[Observation, ...]

    def dereference_counts(self) -> Optional[Tuple[int, int]]:
        obs = [o for o in self.raw_observations if o.probe == "dereference" and not o.skipped]
        if not obs:
            return None
        return sum(1 for o in obs if o.ok), len(obs)

    def conneg_counts(self) -> Optional[Tuple[int, int]]:
        obs = [o for o in self.raw_observations if o.probe == "conneg" and not o.skipped]
        if not obs:
            return None
        return sum(1 for o in obs if o.ok), len(obs)

    def rdf_obtainable(self, rdf_media_types: Iterable[str]) -> bool:
        """Any observation that returned a standard RDF serialization."""
        media = set(rdf_media_types)
        return any(
            o.ok and o.content_type in media
            for o in self.raw_observations
            if o.probe in ("conneg", "dereference", "dump")
        )

    def to_json(self) -> dict:
        def frac(x: Optional[Fraction]) -> Optional[dict]:
            return None if x is None else {"num": x.numerator, "den": x.denominator}

        return {
            "kg_id": self.kg_id,
            "probed_at": self.probed_at.isoformat(),
            "available": self.available,
            "sparql_ok": self.sparql_ok,
            "dereference_success_fraction": frac(self.dereference_success_fraction),
            "conneg_success_fraction": frac(self.conneg_success_fraction),
            "dump_reachable": self.dump_reachable,
            "update_supported": self.update_supported,
            "median_latency_ms": self.median_latency_ms,
            "raw_observations": [o.to_json() for o in self.raw_observations],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "ProbeReport":
        def frac(x: Optional[dict]) -> Optional[Fraction]:
            return None if x is None else Fraction(x["num"], x["den"])

        return cls(
            kg_id=doc["kg_id"],
            probed_at=datetime.fromisoformat(doc["probed_at"]),
            available=doc["available"],
            sparql_ok=doc["sparql_ok"],
            dereference_success_fraction=frac(doc.get("dereference_success_fraction")),
            conneg_success_fraction=frac(doc.get("conneg_success_fraction")),
            dump_reachable=doc["dump_reachable"],
            update_supported=doc["update_supported"],
            median_latency_ms=doc.get("median_latency_ms"),
            raw_observations=tuple(
                Observation.from_json(o) for o in doc.get("raw_observations", ())
            ),
        )


class ProbeSession:
    """requests wrapper with timeout, bounded redirects, retries and backoff."""

    def __init__(
        self,
        timeout_ms: int,
        retries: int,
        extra_headers: Sequence[Tuple[str, str]] = (),
        sleeper: Callable[[float], None] = time.sleep,
    ):
        self.timeout_s = timeout_ms / 1000.0
        self.retries = retries
        self.sleeper = sleeper
        self.session = requests.Session()
        self.session.trust_env = False  # proxy env vars must not affect probes
        self.session.max_redirects = MAX_REDIRECTS
        self.session.headers["User-Agent"] = USER_AGENT
        for name, value in extra_headers:
            self.session.headers[name] = value

    def close(self) -> None:
        self.session.close()

    def fetch(
        self,
        method: str,
        url: str,
        accept: Optional[str] = None,
        body: Optional[bytes] = None,
        content_type: Optional[str] = None,
        range_header: Optional[str] = None,
    ) -> Tuple[Optional[requests.Response], Optional[str], int, float]:
        """(response, failure reason, attempts, total elapsed ms)."""
        headers: Dict[str, str] = {}
        if accept is not None:
            headers["Accept"] = accept
        if content_type is not None:
            headers["Content-Type"] = content_type
        if range_header is not None:
            headers["Range"] = range_header
        started = time.monotonic()
        reason = None
        for attempt in range(self.retries + 1):
            if attempt > 0:
                self.sleeper(BACKOFF_BASE_MS * (2 ** (attempt - 1)) / 1000.0)
            try:
                resp = self.session.request(
                    method, url, headers=headers, data=body,
                    timeout=self.timeout_s, allow_redirects=True,
                )
                elapsed = (time.monotonic() - started) * 1000.0
                return resp, None, attempt + 1, elapsed
            except requests.Timeout:
                reason = "timeout"
            except requests.TooManyRedirects:
                reason = "too-many-redirects"
            except requests.ConnectionError as exc:
                reason = "connection-refused" if "refused" in str(exc).lower() else "connection-error"
            except requests.RequestException as exc:
                reason = f"request-error: {exc.__class__.__name__}"
        elapsed = (time.monotonic() - started) * 1000.0
        return None, reason, self.retries + 1, elapsed


def _content_type(resp: requests.Response) -> Optional[str]:
    raw = resp.headers.get("Content-Type")
    if raw is None:
        return None
    return raw.split(";", 1)[0].strip().lower()


def probe_availability(config: EndpointConfig, session: ProbeSession) -> List[Observation]:
    """GET each configured URL until one answers a success status."""
    targets = [u for u in (config.sparql_endpoint, config.dump_url) if u]
    observations: List[Observation] = []
    for target in targets:
        resp, reason, attempts, elapsed = session.fetch("GET", target)
        if resp is not None:
            ok = 200 <= resp.status_code < 300
            observations.append(Observation(
                probe="availability", target=target, ok=ok, status=resp.status_code,
                latency_ms=elapsed, attempts=attempts,
                reason=None if ok else f"http-{resp.status_code}",
                content_type=_content_type(resp),
            ))
            if ok:
                break
        else:
            observations.append(Observation(
                probe="availability", target=target, ok=False,
                latency_ms=elapsed, attempts=attempts, reason=reason,
            ))
    return observations


ASK_QUERY = "ASK {}"
SPARQL_RESULTS_JSON = "application/sparql-results+json"


def probe_sparql(config: EndpointConfig, session: ProbeSession) -> Observation:
    """POST a trivial ASK and require a well-formed SPARQL JSON result."""
    if not config.sparql_endpoint:
        return Observation(
            probe="sparql", target="", ok=False, skipped=True,
            reason="no endpoint configured",
        )
    resp, reason, attempts, elapsed = session.fetch(
        "POST", config.sparql_endpoint,
        accept=SPARQL_RESULTS_JSON,
        body=ASK_QUERY.encode("utf-8"),
        content_type="application/sparql-query",
    )
    if resp is None:
        return Observation(
            probe="sparql", target=config.sparql_endpoint, ok=False,
            latency_ms=elapsed, attempts=attempts, reason=reason,
        )
    ok = False
    reason = None
    if not (200 <= resp.status_code < 300):
        reason = f"http-{resp.status_code}"
    else:
        try:
            payload = json.loads(resp.content)
            if isinstance(payload.get("boolean"), bool) or "results" in payload:
                ok = True
            else:
                reason = "malformed-result"
        except (ValueError, AttributeError):
            reason = "malformed-result"
    return Observation(
        probe="sparql", target=config.sparql_endpoint, ok=ok,
        status=resp.status_code, latency_ms=elapsed, attempts=attempts,
        reason=reason, content_type=_content_type(resp),
    )


RDF_CONTENT_TYPES = frozenset({
    "text/turtle",
    "application/n-triples",
    "application/rdf+xml",
    "application/ld+json",
    "application/n-quads",
    "text/n3",
})


def probe_dereference(config: EndpointConfig, session: ProbeSession) -> List[Observation]:
    """GET each sample IRI; success needs an RDF media type in the answer."""
    observations = []
    accept = ", ".join(config.accept_types)
    for target in config.sample_entity_iris:
        resp, reason, attempts, elapsed = session.fetch("GET", target, accept=accept)
        if resp is None:
            observations.append(Observation(
                probe="dereference", target=target, ok=False,
                latency_ms=elapsed, attempts=attempts, reason=reason, accept=accept,
            ))
            continue
        ctype = _content_type(resp)
        ok = 200 <= resp.status_code < 300 and ctype in RDF_CONTENT_TYPES
        observations.append(Observation(
            probe="dereference", target=target, ok=ok, status=resp.status_code,
            latency_ms=elapsed, attempts=attempts, accept=accept, content_type=ctype,
            reason=None if ok else (
                f"http-{resp.status_code}" if resp.status_code >= 300 else "non-rdf-content-type"
            ),
        ))
    return observations


def probe_content_negotiation(config: EndpointConfig, session: ProbeSession) -> List[Observation]:
    """GET one target once per accept type; the response type must match."""
    target = None
    if config.sample_entity_iris:
        target = config.sample_entity_iris[0]
    elif config.dump_url:
        target = config.dump_url
    elif config.sparql_endpoint:
        target = config.sparql_endpoint
    if target is None or not config.accept_types:
        return []
    observations = []
    for accept in config.accept_types:
        resp, reason, attempts, elapsed = session.fetch("GET", target, accept=accept)
        if resp is None:
            observations.append(Observation(
                probe="conneg", target=target, ok=False,
                latency_ms=elapsed, attempts=attempts, reason=reason, accept=accept,
            ))
            continue
        ctype = _content_type(resp)
        ok = 200 <= resp.status_code < 300 and ctype == accept
        observations.append(Observation(
            probe="conneg", target=target, ok=ok, status=resp.status_code,
            latency_ms=elapsed, attempts=attempts, accept=accept, content_type=ctype,
            reason=None if ok else "accept-not-honored",
        ))
    return observations


def probe_dump(config: EndpointConfig, session: ProbeSession) -> Observation:
    """HEAD the dump URL, falling back to a one-byte ranged GET."""
    if not config.dump_url:
        return Observation(
            probe="dump", target="", ok=False, skipped=True,
            reason="no dump URL configured",
        )
    resp, reason, attempts, elapsed = session.fetch("HEAD", config.dump_url)
    if resp is not None and resp.status_code in (405, 501):
        resp, reason, attempts, elapsed = session.fetch(
            "GET", config.dump_url, range_header="bytes=0-0",
        )
    if resp is None:
        return Observation(
            probe="dump", target=config.dump_url, ok=False,
            latency_ms=elapsed, attempts=attempts, reason=reason,
        )
    ok = 200 <= resp.status_code < 300 or resp.status_code == 206
    return Observation(
        probe="dump", target=config.dump_url, ok=ok, status=resp.status_code,
        latency_ms=elapsed, attempts=attempts,
        reason=None if ok else f"http-{resp.status_code}",
        content_type=_content_type(resp),
    )


def observe_update_capability(config: EndpointConfig) -> Observation:
    """Declaration-only: no write is ever attempted against the target."""
    declared = bool(config.supports_update_declared or config.edit_interface_declared)
    return Observation(
        probe="update", target="declared", ok=declared,
        reason="declared by configuration" if declared else "no update capability declared",
    )


def assemble_report(
    kg_id: str,
    observations: Sequence[Observation],
    probed_at: Optional[datetime] = None,
) -> ProbeReport:
    """Fold raw observations into a report; summaries derive only from raw."""
    obs = tuple(observations)

    def fraction_for(probe: str) -> Optional[Fraction]:
        hits = [o for o in obs if o.probe == probe and not o.skipped]
        if not hits:
            return None
        return Fraction(sum(1 for o in hits if o.ok), len(hits))

    latencies = [o.latency_ms for o in obs if o.ok and o.latency_ms is not None]
    return ProbeReport(
        kg_id=kg_id,
        probed_at=probed_at or datetime.now(timezone.utc),
        available=any(o.probe == "availability" and o.ok for o in obs),
        sparql_ok=any(o.probe == "sparql" and o.ok for o in obs),
        dereference_success_fraction=fraction_for("dereference"),
        conneg_success_fraction=fraction_for("conneg"),
        dump_reachable=any(o.probe == "dump" and o.ok for o in obs),
        update_supported=any(o.probe == "update" and o.ok for o in obs),
        median_latency_ms=statistics.median(latencies) if latencies else None,
        raw_observations=obs,
    )


def probe_all(
    config: EndpointConfig,
    sleeper: Callable[[float], None] = time.sleep,
) -> ProbeReport:
    """Run the full probe battery for one KG configuration."""
    session = ProbeSession(
        config.timeout_ms, config.retries,
        extra_headers=config.extra_headers, sleeper=sleeper,
    )
    try:
        observations: List[Observation] = []
        observations += probe_availability(config, session)
        observations.append(probe_sparql(config, session))
        observations += probe_dereference(config, session)
        observations += probe_content_negotiation(config, session)
        observations.append(probe_dump(config, session))
        observations.append(observe_update_capability(config))
        return assemble_report(config.kg_id, observations)
    finally:
        session.close()
