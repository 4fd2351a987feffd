"""fuzzydx: knowledge-base-driven fuzzy expert system for staged diagnosis."""

from .engine import (
    AnswerSet,
    DiagnosisResult,
    EngineConfig,
    apply_catalysts,
    confidence,
    diagnose,
    fuzzify,
    major_penalty,
    raw_score,
    temp_probability,
)
from .errors import (
    FuzzydxError,
    InvalidOptionError,
    KnowledgeBaseParseError,
    KnowledgeBaseValidationError,
    MalformedAnswersError,
    SessionCompleteError,
    StalePromptError,
    UnknownIdError,
)
from .knowledge_base import (
    DEFAULT_LABELS,
    CatalystQuestion,
    Disease,
    FuzzyLabel,
    FuzzyLabelConfig,
    KnowledgeBase,
    ProblemArea,
    Symptom,
    ValidationReport,
    kb_to_document,
    load_kb,
    load_kb_file,
    max_level_weight,
    serialize_kb,
    validate_kb,
)
from .session import Phase, Prompt, PromptKind, Session, pending_prompts, start_session, submit

__version__ = "0.1.0"

__all__ = [
    "AnswerSet",
    "CatalystQuestion",
    "DEFAULT_LABELS",
    "DiagnosisResult",
    "Disease",
    "EngineConfig",
    "FuzzydxError",
    "FuzzyLabel",
    "FuzzyLabelConfig",
    "InvalidOptionError",
    "KnowledgeBase",
    "KnowledgeBaseParseError",
    "KnowledgeBaseValidationError",
    "MalformedAnswersError",
    "Phase",
    "ProblemArea",
    "Prompt",
    "PromptKind",
    "Session",
    "SessionCompleteError",
    "StalePromptError",
    "Symptom",
    "UnknownIdError",
    "ValidationReport",
    "apply_catalysts",
    "confidence",
    "diagnose",
    "fuzzify",
    "kb_to_document",
    "load_kb",
    "load_kb_file",
    "major_penalty",
    "max_level_weight",
    "pending_prompts",
    "raw_score",
    "serialize_kb",
    "start_session",
    "submit",
    "temp_probability",
    "validate_kb",
]
