"""HTTP diagnosis service: sessions over a pluggable in-memory store.

The API is versioned under ``/api/v1``:

    GET  /api/v1/areas                    list problem areas
    POST /api/v1/sessions                 create a session (201)
    GET  /api/v1/sessions/{id}            session envelope (for resumption)
    POST /api/v1/sessions/{id}/answers    submit {prompt_id, selection}
    GET  /api/v1/sessions/{id}/results    ranked results once complete

Error bodies are always ``{"code", "message"}`` with code one of
NOT_FOUND, INVALID_OPTION, STALE_PROMPT, SESSION_COMPLETE, BAD_REQUEST.

The store serializes mutations per session_id; the knowledge base and
engine are shared immutably, so reads never block. An optional
newline-delimited JSON journal makes sessions survive restarts: every
mutation appends a full session snapshot, and replaying the file
(last snapshot per id wins) reconstructs the store exactly.
"""

from __future__ import annotations

import json
import os
import threading
from typing import Any

from fastapi import Body, FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .engine import AnswerSet, DiagnosisResult, EngineConfig, diagnose
from .errors import InvalidOptionError, SessionCompleteError, StalePromptError
from .knowledge_base import KnowledgeBase
from .render import result_document
from .session import Phase, Session, pending_prompts, start_session, submit


class ApiError(Exception):
    def __init__(self, http_status: int, code: str, message: str):
        self.http_status = http_status
        self.code = code
        self.message = message
        super().__init__(message)


# ---------------------------------------------------------------------------
# Session snapshots (journal format; full float precision)


def session_to_doc(session: Session) -> dict[str, Any]:
    return {
        "session_id": session.session_id,
        "kb_id": session.kb_id,
        "phase": session.phase.value,
        "area_id": session.area_id,
        "answers": {
            "selected_symptom_ids": sorted(session.answers.selected_symptom_ids),
            "level_answers": dict(session.answers.level_answers),
            "catalyst_answers": dict(session.answers.catalyst_answers),
        },
        "created_at": session.created_at,
        "updated_at": session.updated_at,
        "results": None
        if session.results is None
        else [r.__dict__.copy() for r in session.results],
    }


def session_from_doc(doc: dict[str, Any]) -> Session:
    answers = AnswerSet(
        selected_symptom_ids=set(doc["answers"]["selected_symptom_ids"]),
        level_answers=dict(doc["answers"]["level_answers"]),
        catalyst_answers=dict(doc["answers"]["catalyst_answers"]),
    )
    results = None
    if doc["results"] is not None:
        results = [DiagnosisResult(**entry) for entry in doc["results"]]
    return Session(
        session_id=doc["session_id"],
        kb_id=doc["kb_id"],
        phase=Phase(doc["phase"]),
        area_id=doc["area_id"],
        answers=answers,
        created_at=doc["created_at"],
        updated_at=doc["updated_at"],
        results=results,
    )


class SessionStore:
    """In-memory session map with optional append-only journal.

    get-after-put always returns the stored session. Mutating callers
    must hold ``lock_for(session_id)`` around the read-modify-put cycle;
    the service does this in the answers endpoint.
    """

    def __init__(self, journal_path: str | None = None):
        self._sessions: dict[str, Session] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._mutex = threading.Lock()
        self._journal_path = journal_path
        self._journal = None
        if journal_path:
            if os.path.exists(journal_path):
                self._replay(journal_path)
            self._journal = open(journal_path, "a", encoding="utf-8")

    def _replay(self, path: str) -> None:
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                session = session_from_doc(json.loads(line))
                self._sessions[session.session_id] = session

    def get(self, session_id: str) -> Session | None:
        with self._mutex:
            return self._sessions.get(session_id)

    def put(self, session: Session) -> None:
        with self._mutex:
            self._sessions[session.session_id] = session
            if self._journal is not None:
                self._journal.write(json.dumps(session_to_doc(session)) + "\n")
                self._journal.flush()

    def lock_for(self, session_id: str) -> threading.Lock:
        with self._mutex:
            return self._locks.setdefault(session_id, threading.Lock())

    def session_ids(self) -> list[str]:
        with self._mutex:
            return list(self._sessions)

    def close(self) -> None:
        if self._journal is not None:
            self._journal.close()
            self._journal = None


# ---------------------------------------------------------------------------
# Application


def _envelope(kb: KnowledgeBase, session: Session) -> dict[str, Any]:
    if session.phase is Phase.COMPLETE:
        prompts = []
    else:
        prompts = pending_prompts(kb, session)
    doc: dict[str, Any] = {
        "session_id": session.session_id,
        "phase": session.phase.value,
        "area_id": session.area_id,
        "prompts": [
            {
                "prompt_id": p.prompt_id,
                "kind": p.kind.value,
                "text": p.text,
                "options": [
                    {"option_id": option_id, "label": label}
                    for option_id, label in p.options
                ],
            }
            for p in prompts
        ],
        "answers": {
            "selected_symptom_ids": sorted(session.answers.selected_symptom_ids),
            "level_answers": dict(session.answers.level_answers),
            "catalyst_answers": dict(session.answers.catalyst_answers),
        },
    }
    if session.phase is Phase.COMPLETE:
        doc["results_url"] = f"/api/v1/sessions/{session.session_id}/results"
    return doc


def create_app(
    kb: KnowledgeBase,
    config: EngineConfig = EngineConfig(),
    store: SessionStore | None = None,
) -> FastAPI:
    app = FastAPI(title="fuzzydx diagnosis service", docs_url=None, redoc_url=None)
    app.state.kb = kb
    app.state.config = config
    app.state.store = store if store is not None else SessionStore()
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(ApiError)
    async def _api_error(_request: Request, exc: ApiError) -> JSONResponse:
        return JSONResponse(
            status_code=exc.http_status,
            content={"code": exc.code, "message": exc.message},
        )

    @app.exception_handler(RequestValidationError)
    async def _bad_body(_request: Request, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse(
            status_code=400,
            content={"code": "BAD_REQUEST", "message": "malformed request body"},
        )

    def _get_session(session_id: str) -> Session:
        session = app.state.store.get(session_id)
        if session is None:
            raise ApiError(404, "NOT_FOUND", f"no session {session_id!r}")
        return session

    @app.get("/api/v1/areas")
    def list_areas() -> list[dict[str, str]]:
        return [
            {"area_id": a.area_id, "display_name": a.display_name}
            for a in app.state.kb.areas
        ]

    @app.post("/api/v1/sessions", status_code=201)
    def create_session(body: Any = Body(default=None)) -> dict[str, Any]:
        if body is not None and not isinstance(body, dict):
            raise ApiError(400, "BAD_REQUEST", "request body must be a JSON object")
        session = start_session(app.state.kb)
        app.state.store.put(session)
        return _envelope(app.state.kb, session)

    @app.get("/api/v1/sessions/{session_id}")
    def get_session(session_id: str) -> dict[str, Any]:
        return _envelope(app.state.kb, _get_session(session_id))

    @app.post("/api/v1/sessions/{session_id}/answers")
    def submit_answer(session_id: str, body: Any = Body(...)) -> dict[str, Any]:
        if not isinstance(body, dict):
            raise ApiError(400, "BAD_REQUEST", "request body must be a JSON object")
        prompt_id = body.get("prompt_id")
        if not isinstance(prompt_id, str):
            raise ApiError(400, "BAD_REQUEST", "prompt_id must be a string")
        if "selection" not in body:
            raise ApiError(400, "BAD_REQUEST", "selection is required")
        selection = body["selection"]
        if not isinstance(selection, (str, list)):
            raise ApiError(400, "BAD_REQUEST",
                           "selection must be a string or a list of strings")

        with app.state.store.lock_for(session_id):
            session = _get_session(session_id)
            try:
                submit(app.state.kb, session, prompt_id, selection, app.state.config)
            except StalePromptError as exc:
                raise ApiError(409, "STALE_PROMPT", str(exc)) from exc
            except InvalidOptionError as exc:
                raise ApiError(422, "INVALID_OPTION", str(exc)) from exc
            except SessionCompleteError as exc:
                raise ApiError(409, "SESSION_COMPLETE", str(exc)) from exc
            app.state.store.put(session)
        return _envelope(app.state.kb, session)

    @app.get("/api/v1/sessions/{session_id}/results")
    def get_results(session_id: str) -> dict[str, Any]:
        session = _get_session(session_id)
        if session.phase is not Phase.COMPLETE:
            raise ApiError(
                409, "SESSION_COMPLETE",
                f"session is in phase {session.phase.value}, not COMPLETE",
            )
        # recompute from the stored answers: results are a pure function of them
        assert session.area_id is not None
        results = diagnose(
            app.state.kb, session.area_id, session.answers, app.state.config
        )
        return {
            "session_id": session.session_id,
            "results": result_document(app.state.kb, results),
        }

    return app
