"""HTTP facade over planner sessions, with journaled persistence.

Each session owns one planner pipeline over a shared per-scenario store.
Successful turns are appended to a JSON-lines journal under the data
directory; on startup every journal is replayed through the configured
backend, so a restarted service answers /plan exactly as it did before
(scripted backends make the replay deterministic).

Message handling takes a per-session lock without blocking: a second
message racing on the same session gets 409 rather than interleaving
turns inside one conversation.
"""

from __future__ import annotations

import json
import logging
import threading
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .agents import (
    PlanParseError,
    PlannerSession,
    make_session,
    planner_feedback,
    planner_respond,
)
from .docstore import DocumentStore, HashedBagOfWordsEmbedder, ingest
from .evalharness import (
    BackendConfig,
    Condition,
    EvalConfig,
    load_backend_config,
    planner_backend_for,
    retriever_backend_for,
    run_condition,
    run_full,
)
from .gateway import GatewayError
from .scenarios import BUNDLED_NAMES, load_bundled

log = logging.getLogger(__name__)


class MessageBody(BaseModel):
    text: str


class EvalRunBody(BaseModel):
    scenarios: list[str] = list(BUNDLED_NAMES)
    condition: str = "both"
    trials: int = 3
    backend: dict[str, Any] = {"kind": "truncation"}


@dataclass
class SessionState:
    session_id: str
    scenario_name: str
    pipeline: PlannerSession
    journal: Path
    created_at: str
    lock: threading.Lock = field(default_factory=threading.Lock)


class ServiceState:
    """Sessions, shared stores, and eval jobs behind the route handlers."""

    def __init__(self, data_dir: str, backend: BackendConfig) -> None:
        self.backend = backend
        self.sessions: dict[str, SessionState] = {}
        self.stores: dict[str, DocumentStore] = {}
        self.jobs: dict[str, dict[str, Any]] = {}
        self.jobs_lock = threading.Lock()
        self.sessions_dir = Path(data_dir) / "sessions"
        self.sessions_dir.mkdir(parents=True, exist_ok=True)

    # -- session plumbing ---------------------------------------------------

    def store_for(self, scenario_name: str) -> DocumentStore:
        if scenario_name not in self.stores:
            scenario = load_bundled(scenario_name)
            self.stores[scenario_name] = ingest(
                scenario.documents_map(), HashedBagOfWordsEmbedder()
            )
        return self.stores[scenario_name]

    def create_session(
        self, scenario_name: str, session_id: Optional[str] = None
    ) -> SessionState:
        scenario = load_bundled(scenario_name)
        store = self.store_for(scenario_name)
        pipeline = make_session(
            scenario,
            planner_backend_for(self.backend, scenario, Condition.MULTI_AGENT),
            retriever_backend_for(self.backend, scenario),
            store=store,
        )
        sid = session_id or uuid.uuid4().hex[:12]
        state = SessionState(
            session_id=sid,
            scenario_name=scenario_name,
            pipeline=pipeline,
            journal=self.sessions_dir / f"{sid}.jsonl",
            created_at=datetime.now(timezone.utc).isoformat(),
        )
        self.sessions[sid] = state
        return state

    def journal_event(self, state: SessionState, event: dict[str, Any]) -> None:
        with state.journal.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(event, sort_keys=True) + "\n")

    def restore_sessions(self) -> None:
        for path in sorted(self.sessions_dir.glob("*.jsonl")):
            try:
                self._replay_journal(path)
            except Exception:
                log.exception("skipping unreadable session journal %s", path)

    def _replay_journal(self, path: Path) -> None:
        events = [
            json.loads(line)
            for line in path.read_text(encoding="utf-8").splitlines()
            if line.strip()
        ]
        if not events or events[0].get("event") != "created":
            log.warning("journal %s does not start with a created event", path)
            return
        head = events[0]
        state = self.create_session(head["scenario"], session_id=head["session_id"])
        state.created_at = head.get("created_at", state.created_at)
        for event in events[1:]:
            if event["event"] == "message":
                planner_respond(state.pipeline, event["text"])
            elif event["event"] == "feedback":
                planner_feedback(state.pipeline, event["text"])

    def session_or_404(self, session_id: str) -> SessionState:
        state = self.sessions.get(session_id)
        if state is None:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id!r}")
        return state

    # -- eval jobs ------------------------------------------------------

    def submit_eval(self, body: EvalRunBody) -> str:
        unknown = [s for s in body.scenarios if s not in BUNDLED_NAMES]
        if unknown:
            raise HTTPException(status_code=422, detail=f"unknown scenarios: {unknown}")
        if body.condition not in ("mono", "map", "both"):
            raise HTTPException(status_code=422, detail="condition must be mono, map, or both")
        try:
            backend = BackendConfig.from_dict(body.backend)
            if body.trials < 1:
                raise ValueError("trials must be at least 1")
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        job_id = uuid.uuid4().hex[:12]
        with self.jobs_lock:
            self.jobs[job_id] = {"status": "running"}

        def work() -> None:
            try:
                if body.condition == "both":
                    report = run_full(
                        tuple(body.scenarios), trials=body.trials, backend=backend
                    )
                else:
                    report = run_condition(
                        EvalConfig(
                            scenarios=tuple(body.scenarios),
                            condition=Condition(body.condition),
                            trials=body.trials,
                            backend=backend,
                        )
                    )
                result = {"status": "done", "report": report.to_dict()}
            except Exception as exc:
                log.exception("eval job %s failed", job_id)
                result = {"status": "failed", "error": str(exc)}
            with self.jobs_lock:
                self.jobs[job_id] = result

        threading.Thread(target=work, name=f"eval-{job_id}", daemon=True).start()
        return job_id


def create_app(
    data_dir: str,
    backend: str | BackendConfig = "reference",
    static_dir: Optional[str] = None,
) -> FastAPI:
    """Build the service; replays any journaled sessions under data_dir."""
    config = backend if isinstance(backend, BackendConfig) else load_backend_config(backend)
    state = ServiceState(data_dir, config)
    app = FastAPI(title="concord", docs_url=None, redoc_url=None)
    app.state.service = state
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.get("/healthz")
    def healthz() -> dict[str, str]:
        return {"status": "ok"}

    @app.get("/api/scenarios")
    def list_scenarios() -> list[dict[str, Any]]:
        out = []
        for name in BUNDLED_NAMES:
            scenario = load_bundled(name)
            out.append(
                {
                    "name": name,
                    "title": scenario.name,
                    "users": [u.first_name for u in scenario.users],
                }
            )
        return out

    @app.post("/api/scenarios/{name}/sessions", status_code=201)
    def create_session(name: str) -> dict[str, str]:
        if name not in BUNDLED_NAMES:
            raise HTTPException(status_code=404, detail=f"unknown scenario {name!r}")
        session = state.create_session(name)
        state.journal_event(
            session,
            {
                "event": "created",
                "scenario": name,
                "session_id": session.session_id,
                "created_at": session.created_at,
            },
        )
        return {"session_id": session.session_id, "scenario": name}

    def run_turn(session_id: str, text: str, *, feedback: bool) -> dict[str, Any]:
        session = state.session_or_404(session_id)
        if not session.lock.acquire(blocking=False):
            raise HTTPException(
                status_code=409,
                detail=f"session {session_id!r} is already handling a message",
            )
        try:
            if feedback:
                output = planner_feedback(session.pipeline, text)
            else:
                output = planner_respond(session.pipeline, text)
        except (ValueError, PlanParseError) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        except GatewayError as exc:
            raise HTTPException(status_code=502, detail=str(exc)) from exc
        finally:
            session.lock.release()
        state.journal_event(
            session,
            {"event": "feedback" if feedback else "message", "text": text},
        )
        return output.to_dict()

    @app.post("/api/sessions/{session_id}/messages")
    def post_message(session_id: str, body: MessageBody) -> dict[str, Any]:
        return run_turn(session_id, body.text, feedback=False)

    @app.post("/api/sessions/{session_id}/feedback")
    def post_feedback(session_id: str, body: MessageBody) -> dict[str, Any]:
        return run_turn(session_id, body.text, feedback=True)

    @app.get("/api/sessions/{session_id}/rulesheet")
    def get_rulesheet(session_id: str) -> dict[str, Any]:
        session = state.session_or_404(session_id)
        sheet = session.pipeline.sheet
        return sheet.to_dict() if sheet is not None else {}

    @app.get("/api/sessions/{session_id}/plan")
    def get_plan(session_id: str) -> Optional[dict[str, Any]]:
        session = state.session_or_404(session_id)
        output = session.pipeline.last_output
        return output.to_dict() if output is not None else None

    @app.post("/api/eval/run", status_code=202)
    def eval_run(body: EvalRunBody) -> dict[str, str]:
        return {"job_id": state.submit_eval(body)}

    @app.get("/api/eval/{job_id}")
    def eval_status(job_id: str) -> dict[str, Any]:
        with state.jobs_lock:
            job = state.jobs.get(job_id)
        if job is None:
            raise HTTPException(status_code=404, detail=f"unknown eval job {job_id!r}")
        return job

    state.restore_sessions()

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app


__all__ = ["EvalRunBody", "MessageBody", "ServiceState", "SessionState", "create_app"]
