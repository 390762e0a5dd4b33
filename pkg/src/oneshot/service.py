"""Session service: exposes one induction run over HTTP so a browser
teacher can answer preference queries.

Protocol (newline-delimited JSON records, see session.py for kinds):

    GET  /records?cursor=N   long-polls for records beyond N
    POST /prefer             {"id": "q1", "choice": 0 | null}
    GET  /status             {"records": n, "done": bool, "pending": id}

The service accepts one client at a time.  If the client goes away the
run simply stays parked at the pending query until someone answers it.
"""

from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from .advice import AdvicePreference, AdviceQuery
from .domain import ConstraintLibrary, Domain
from .logic import GroundExample
from .loop import IterationTrace, LoopConfig, run_induction
from .session import (
    done_record,
    dumps,
    error_record,
    hello_record,
    prefer_record,
    query_record,
    state_record,
    trace_record,
)

POLL_SECONDS = 25.0


class SessionHub:
    """Append-only record stream plus the handshake around one pending
    query.  All access is guarded by one condition variable."""

    def __init__(self) -> None:
        self.records: list[dict] = []
        self.cond = threading.Condition()
        self.pending_id: str | None = None
        self.pending_choice: int | None = None
        self.answered = False
        self.done = False
        self.polling = False

    def append(self, rec: dict) -> None:
        with self.cond:
            self.records.append(rec)
            self.cond.notify_all()

    def finish(self) -> None:
        with self.cond:
            self.done = True
            self.cond.notify_all()

    def ask(self, qid: str, rec: dict) -> int | None:
        """Publish a query record and block until a preference arrives."""
        with self.cond:
            self.records.append(rec)
            self.pending_id = qid
            self.answered = False
            self.cond.notify_all()
            self.cond.wait_for(lambda: self.answered)
            choice = self.pending_choice
            self.pending_id = None
            self.pending_choice = None
            return choice

    def prefer(self, qid: str, choice: int | None) -> str | None:
        """Deliver an answer; returns an error message when it does not
        match the pending query."""
        with self.cond:
            if self.pending_id is None:
                return "no pending query"
            if qid != self.pending_id:
                return f"pending query is {self.pending_id}, not {qid}"
            if not isinstance(choice, (int, type(None))):
                return "choice must be an integer or null"
            self.records.append(prefer_record(qid, choice))
            self.pending_choice = choice
            self.answered = True
            self.cond.notify_all()
            return None

    def wait_records(self, cursor: int, timeout: float) -> list[dict]:
        with self.cond:
            self.cond.wait_for(
                lambda: len(self.records) > cursor or self.done, timeout
            )
            return list(self.records[cursor:])

    def status(self) -> dict:
        with self.cond:
            return {
                "records": len(self.records),
                "done": self.done,
                "pending": self.pending_id,
            }

    def begin_poll(self) -> bool:
        with self.cond:
            if self.polling:
                return False
            self.polling = True
            return True

    def end_poll(self) -> None:
        with self.cond:
            self.polling = False


class HubTeacher:
    """Bridges the induction loop to the HTTP client: each query becomes
    a record, and the loop blocks until /prefer delivers the answer."""

    def __init__(self, hub: SessionHub):
        self.hub = hub
        self.count = 0
        self.last_iteration: int | None = None
        self.last_qid: str | None = None

    def start_session(self, x: GroundExample) -> None:
        pass

    def answer(self, query: AdviceQuery) -> AdvicePreference:
        self.count += 1
        qid = f"q{self.count}"
        self.last_iteration = query.iteration
        self.last_qid = qid
        choice = self.hub.ask(qid, query_record(qid, query))
        return AdvicePreference(choice)

    def qid_for(self, iteration: int) -> str | None:
        return self.last_qid if self.last_iteration == iteration else None


def run_session(
    hub: SessionHub,
    x: GroundExample,
    domain: Domain,
    library: ConstraintLibrary,
    cfg: LoopConfig,
) -> None:
    hub.append(hello_record(x, cfg))
    teacher = HubTeacher(hub)

    def emit(tr: IterationTrace) -> None:
        hub.append(state_record(tr.index, tr.theory))
        hub.append(trace_record(tr, teacher.qid_for(tr.index)))

    try:
        result = run_induction(x, domain, library, teacher, cfg, observer=emit)
        hub.append(done_record(result))
    except Exception as exc:  # surface failures to the client
        hub.append(error_record(f"{type(exc).__name__}: {exc}"))
    finally:
        hub.finish()


_CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".svg": "image/svg+xml",
    ".map": "application/json",
}


def make_handler(hub: SessionHub, ui_dir: Path | None):
    class Handler(BaseHTTPRequestHandler):
        protocol_version = "HTTP/1.1"

        def log_message(self, fmt, *args):  # keep the terminal quiet
            pass

        def _send(self, code: int, body: bytes, ctype: str) -> None:
            self.send_response(code)
            self.send_header("Content-Type", ctype)
            self.send_header("Content-Length", str(len(body)))
            self.send_header("Cache-Control", "no-store")
            self.end_headers()
            self.wfile.write(body)

        def _json(self, code: int, obj: dict) -> None:
            self._send(code, (dumps(obj) + "\n").encode(), "application/json")

        def do_GET(self) -> None:
            url = urlparse(self.path)
            if url.path == "/records":
                self._records(url)
            elif url.path == "/status":
                self._json(200, hub.status())
            elif ui_dir is not None:
                self._static(url.path)
            else:
                self._json(404, {"error": "not found"})

        def _records(self, url) -> None:
            q = parse_qs(url.query)
            try:
                cursor = int(q.get("cursor", ["0"])[0])
            except ValueError:
                self._json(400, {"error": "bad cursor"})
                return
            if not hub.begin_poll():
                self._json(409, {"error": "session already has a client"})
                return
            try:
                recs = hub.wait_records(cursor, POLL_SECONDS)
            finally:
                hub.end_poll()
            body = "".join(dumps(r) + "\n" for r in recs).encode()
            self._send(200, body, "application/x-ndjson")

        def _static(self, path: str) -> None:
            name = "index.html" if path == "/" else path.lstrip("/")
            target = (ui_dir / name).resolve()
            if not str(target).startswith(str(ui_dir.resolve())) or not target.is_file():
                self._json(404, {"error": "not found"})
                return
            ctype = _CONTENT_TYPES.get(target.suffix, "application/octet-stream")
            self._send(200, target.read_bytes(), ctype)

        def do_POST(self) -> None:
            url = urlparse(self.path)
            if url.path != "/prefer":
                self._json(404, {"error": "not found"})
                return
            try:
                n = int(self.headers.get("Content-Length", "0"))
                payload = json.loads(self.rfile.read(n) or b"{}")
                qid = payload["id"]
                choice = payload.get("choice")
            except (ValueError, KeyError):
                self._json(400, {"error": "body must be json with id and choice"})
                return
            err = hub.prefer(qid, choice)
            if err is not None:
                self._json(409, {"error": err})
            else:
                self._json(200, {"ok": True})

    return Handler


def serve(
    x: GroundExample,
    domain: Domain,
    library: ConstraintLibrary,
    cfg: LoopConfig,
    host: str = "127.0.0.1",
    port: int = 8765,
    ui_dir: str | Path | None = None,
) -> None:
    hub = SessionHub()
    worker = threading.Thread(
        target=run_session, args=(hub, x, domain, library, cfg), daemon=True
    )
    ui = Path(ui_dir) if ui_dir else None
    httpd = ThreadingHTTPServer((host, port), make_handler(hub, ui))
    worker.start()
    print(f"listening on http://{host}:{httpd.server_address[1]}", flush=True)
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()
