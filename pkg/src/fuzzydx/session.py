"""Staged question flow: a session walks fixed phases and collects answers.

Phases run strictly forward:

    AREA_SELECTION -> SYMPTOM_SELECTION -> LEVEL_QUESTIONS
        -> HISTORY_QUESTIONS -> COMPLETE

A phase with nothing left to ask is skipped automatically (for example,
selecting zero symptoms jumps straight past the level questions).
Entering COMPLETE runs the engine and stores the ranked results on the
session. Submissions that fail validation leave the session untouched.
"""

from __future__ import annotations

import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum

from .engine import AnswerSet, DiagnosisResult, EngineConfig, diagnose
from .errors import InvalidOptionError, SessionCompleteError, StalePromptError
from .knowledge_base import KnowledgeBase


class Phase(str, Enum):
    AREA_SELECTION = "AREA_SELECTION"
    SYMPTOM_SELECTION = "SYMPTOM_SELECTION"
    LEVEL_QUESTIONS = "LEVEL_QUESTIONS"
    HISTORY_QUESTIONS = "HISTORY_QUESTIONS"
    COMPLETE = "COMPLETE"


_PHASE_ORDER = [
    Phase.AREA_SELECTION,
    Phase.SYMPTOM_SELECTION,
    Phase.LEVEL_QUESTIONS,
    Phase.HISTORY_QUESTIONS,
    Phase.COMPLETE,
]


class PromptKind(str, Enum):
    AREA = "AREA"
    SYMPTOM_MULTI = "SYMPTOM_MULTI"
    LEVEL = "LEVEL"
    HISTORY = "HISTORY"


@dataclass(frozen=True)
class Prompt:
    prompt_id: str
    kind: PromptKind
    text: str
    options: tuple[tuple[str, str], ...]  # (option_id, label), ordered


@dataclass
class Session:
    session_id: str
    kb_id: str
    phase: Phase
    area_id: str | None
    answers: AnswerSet
    created_at: str
    updated_at: str
    results: list[DiagnosisResult] | None = None


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="microseconds")


def start_session(kb: KnowledgeBase) -> Session:
    """Fresh session at the area-selection step with a unique id."""
    now = _now()
    return Session(
        session_id=uuid.uuid4().hex,
        kb_id=kb.kb_id,
        phase=Phase.AREA_SELECTION,
        area_id=None,
        answers=AnswerSet(),
        created_at=now,
        updated_at=now,
    )


def _area_history_question_ids(kb: KnowledgeBase, area_id: str) -> list[str]:
    """History questions attached to any disease of the area, KB order, deduped."""
    area = kb.area(area_id)
    attached = set()
    for did in area.disease_ids:
        attached |= kb.diseases[did].catalyst_question_ids
    return [qid for qid in kb.catalyst_questions if qid in attached]


def _prompts_for_phase(kb: KnowledgeBase, session: Session, phase: Phase) -> list[Prompt]:
    if phase is Phase.AREA_SELECTION:
        return [
            Prompt(
                prompt_id="area",
                kind=PromptKind.AREA,
                text="Select your problem area",
                options=tuple((a.area_id, a.display_name) for a in kb.areas),
            )
        ]
    assert session.area_id is not None
    area = kb.area(session.area_id)
    if phase is Phase.SYMPTOM_SELECTION:
        return [
            Prompt(
                prompt_id="symptoms",
                kind=PromptKind.SYMPTOM_MULTI,
                text="Select every symptom that applies to you",
                options=tuple(
                    (sid, kb.symptoms[sid].display_name) for sid in area.symptom_ids
                ),
            )
        ]
    if phase is Phase.LEVEL_QUESTIONS:
        prompts = []
        for sid in area.symptom_ids:  # area order
            if sid in session.answers.selected_symptom_ids \
                    and sid not in session.answers.level_answers:
                symptom = kb.symptoms[sid]
                prompts.append(
                    Prompt(
                        prompt_id=f"level:{sid}",
                        kind=PromptKind.LEVEL,
                        text=symptom.level_question,
                        options=tuple((level, level) for level in symptom.levels),
                    )
                )
        return prompts
    if phase is Phase.HISTORY_QUESTIONS:
        return [
            Prompt(
                prompt_id=f"history:{qid}",
                kind=PromptKind.HISTORY,
                text=kb.catalyst_questions[qid].prompt,
                options=(("yes", "Yes"), ("no", "No")),
            )
            for qid in _area_history_question_ids(kb, session.area_id)
            if qid not in session.answers.catalyst_answers
        ]
    raise SessionCompleteError("session is already complete")


def pending_prompts(kb: KnowledgeBase, session: Session) -> list[Prompt]:
    """Everything the user must answer to leave the current phase.

    Pure given (kb, session). Raises ``SessionCompleteError`` once the
    session has results.
    """
    if session.phase is Phase.COMPLETE:
        raise SessionCompleteError("session is already complete")
    return _prompts_for_phase(kb, session, session.phase)


def _advance(kb: KnowledgeBase, session: Session, config: EngineConfig) -> None:
    """Move past every phase with no pending prompts; diagnose on COMPLETE."""
    while session.phase is not Phase.COMPLETE:
        if _prompts_for_phase(kb, session, session.phase):
            return
        session.phase = _PHASE_ORDER[_PHASE_ORDER.index(session.phase) + 1]
    assert session.area_id is not None
    session.results = diagnose(kb, session.area_id, session.answers, config)


def submit(
    kb: KnowledgeBase,
    session: Session,
    prompt_id: str,
    selection: str | list[str],
    config: EngineConfig = EngineConfig(),
) -> Session:
    """Record one answer and advance the flow as far as it will go.

    ``selection`` is a single option id, or a list of them for the
    symptom multi-select (the empty list is a valid "none of these").
    Raises ``StalePromptError`` if ``prompt_id`` is not currently pending
    and ``InvalidOptionError`` for unknown option ids; rejected
    submissions leave the session unchanged.
    """
    if session.phase is Phase.COMPLETE:
        raise SessionCompleteError("session is already complete")
    prompt = next(
        (p for p in pending_prompts(kb, session) if p.prompt_id == prompt_id), None
    )
    if prompt is None:
        raise StalePromptError(f"prompt {prompt_id!r} is not pending")

    chosen = selection if isinstance(selection, list) else [selection]
    if any(not isinstance(c, str) for c in chosen):
        raise InvalidOptionError("selections must be option id strings")
    valid_ids = {option_id for option_id, _ in prompt.options}
    for c in chosen:
        if c not in valid_ids:
            raise InvalidOptionError(f"{c!r} is not an option of {prompt_id!r}")
    if prompt.kind is not PromptKind.SYMPTOM_MULTI and len(chosen) != 1:
        raise InvalidOptionError(f"prompt {prompt_id!r} takes exactly one selection")

    # validation done; now mutate
    if prompt.kind is PromptKind.AREA:
        session.area_id = chosen[0]
        session.phase = Phase.SYMPTOM_SELECTION
    elif prompt.kind is PromptKind.SYMPTOM_MULTI:
        session.answers.selected_symptom_ids = set(chosen)
        session.phase = Phase.LEVEL_QUESTIONS
    elif prompt.kind is PromptKind.LEVEL:
        sid = prompt.prompt_id.split(":", 1)[1]
        session.answers.level_answers[sid] = chosen[0]
    else:
        qid = prompt.prompt_id.split(":", 1)[1]
        session.answers.catalyst_answers[qid] = chosen[0] == "yes"

    _advance(kb, session, config)
    session.updated_at = _now()
    return session
