"""Scripted HTTP server for bit-exact probe replay.

A script is a JSON document mapping (method, path, accept) to a sequence of
responses. Each matching request consumes the next response in its rule; the
last response repeats. Unmatched requests get 404. Intended for deterministic
probe and ingestion tests against a real local socket.

Script shape:

    {"rules": [
        {"method": "GET", "path": "/entity/1", "accept": "text/turtle",
         "responses": [
            {"status": 200, "content_type": "text/turtle",
             "body": "...", "delay_ms": 0, "headers": {"Location": "..."}}
         ]}
    ]}

``accept`` may be omitted or "*" to match any Accept header.
"""

from __future__ import annotations

import json
import threading
import time
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import List, Optional, Tuple, Union


@dataclass
class _Rule:
    method: str
    path: str
    accept: Optional[str]
    responses: List[dict]
    cursor: int = 0

    def matches(self, method: str, path: str, accept: Optional[str]) -> bool:
        if self.method.upper() != method.upper() or self.path != path:
            return False
        if self.accept in (None, "*"):
            return True
        return accept == self.accept

    def next_response(self) -> dict:
        resp = self.responses[min(self.cursor, len(self.responses) - 1)]
        self.cursor += 1
        return resp


@dataclass(frozen=True)
class RequestRecord:
    method: str
    path: str
    accept: Optional[str]
    body: bytes = b""


def load_script(source: Union[str, Path, dict]) -> List[_Rule]:
    if isinstance(source, dict):
        doc = source
    else:
        doc = json.loads(Path(source).read_text(encoding="utf-8"))
    rules = []
    for entry in doc["rules"]:
        rules.append(_Rule(
            method=entry.get("method", "GET"),
            path=entry["path"],
            accept=entry.get("accept"),
            responses=list(entry["responses"]),
        ))
    return rules


class ScriptedServer:
    """Threaded HTTP server replaying a response script."""

    def __init__(self, script: Union[str, Path, dict]):
        self.rules = load_script(script)
        self.requests: List[RequestRecord] = []
        self._lock = threading.Lock()
        self._server: Optional[ThreadingHTTPServer] = None
        self._thread: Optional[threading.Thread] = None

    # -- lifecycle -----------------------------------------------------------

    def start(self) -> str:
        outer = self

        class Handler(BaseHTTPRequestHandler):
            protocol_version = "HTTP/1.1"

            def log_message(self, *args):  # silence stderr noise
                pass

            def handle(self):
                try:
                    super().handle()
                except (BrokenPipeError, ConnectionResetError):
                    pass  # client gave up (timeout scenarios); not an error

            def _serve(self, method: str):
                length = int(self.headers.get("Content-Length") or 0)
                body = self.rfile.read(length) if length else b""
                accept = self.headers.get("Accept")
                with outer._lock:
                    outer.requests.append(
                        RequestRecord(method, self.path, accept, body)
                    )
                    rule = next(
                        (r for r in outer.rules if r.matches(method, self.path, accept)),
                        None,
                    )
                    resp = rule.next_response() if rule else None
                if resp is None:
                    payload = b"unscripted request"
                    self.send_response(404)
                    self.send_header("Content-Type", "text/plain")
                    self.send_header("Content-Length", str(len(payload)))
                    self.end_headers()
                    if method != "HEAD":
                        self.wfile.write(payload)
                    return
                delay = resp.get("delay_ms", 0)
                if delay:
                    time.sleep(delay / 1000.0)
                payload = resp.get("body", "").encode("utf-8")
                self.send_response(resp.get("status", 200))
                if resp.get("content_type"):
                    self.send_header("Content-Type", resp["content_type"])
                for name, value in resp.get("headers", {}).items():
                    self.send_header(name, value)
                self.send_header("Content-Length", str(len(payload)))
                self.end_headers()
                if method != "HEAD":
                    self.wfile.write(payload)

            def do_GET(self):
                self._serve("GET")

            def do_HEAD(self):
                self._serve("HEAD")

            def do_POST(self):
                self._serve("POST")

        self._server = ThreadingHTTPServer(("127.0.0.1", 0), Handler)
        self._thread = threading.Thread(target=self._server.serve_forever, daemon=True)
        self._thread.start()
        host, port = self._server.server_address[:2]
        return f"http://{host}:{port}"

    def stop(self) -> None:
        if self._server is not None:
            self._server.shutdown()
            self._server.server_close()
            self._server = None

    def __enter__(self) -> "ScriptedServer":
        self.base_url = self.start()
        return self

    def __exit__(self, *exc) -> None:
        self.stop()

    # -- assertions ----------------------------------------------------------

    def request_count(self, method: Optional[str] = None, path: Optional[str] = None) -> int:
        with self._lock:
            return sum(
                1 for r in self.requests
                if (method is None or r.method == method)
                and (path is None or r.path == path)
            )


def closed_port_url() -> str:
    """URL on a local port that is (almost surely) not listening."""
    import socket

    sock = socket.socket()
    sock.bind(("127.0.0.1", 0))
    port = sock.getsockname()[1]
    sock.close()
    return f"http://127.0.0.1:{port}/"


def sparql_select_page(rows: List[Tuple[dict, dict, dict]]) -> str:
    """SPARQL JSON result document for ?s ?p ?o rows of binding dicts."""
    return json.dumps({
        "head": {"vars": ["s", "p", "o"]},
        "results": {"bindings": [{"s": s, "p": p, "o": o} for s, p, o in rows]},
    })


def sparql_uri(value: str) -> dict:
    return {"type": "uri", "value": value}


def sparql_bnode(label: str) -> dict:
    return {"type": "bnode", "value": label}


def sparql_literal(value: str, datatype: Optional[str] = None, lang: Optional[str] = None) -> dict:
    doc: dict = {"type": "literal", "value": value}
    if datatype:
        doc["datatype"] = datatype
    if lang:
        doc["xml:lang"] = lang
    return doc
