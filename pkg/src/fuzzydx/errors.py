"""Exception types shared across the package."""


class FuzzydxError(Exception):
    """Base class for all domain errors."""


class KnowledgeBaseParseError(FuzzydxError):
    """The knowledge-base document is not well-formed (bad JSON, wrong root type)."""


class KnowledgeBaseValidationError(FuzzydxError):
    """The knowledge-base document parsed but violates an invariant.

    Carries the first error of the full validation report so callers can
    show a precise location.
    """

    def __init__(self, code: str, path: str, message: str):
        self.code = code
        self.path = path
        super().__init__(f"{code} at {path}: {message}")


class UnknownIdError(FuzzydxError):
    """An id (area, disease, symptom, question) does not resolve in the KB."""


class MalformedAnswersError(FuzzydxError):
    """An answer set fails well-formedness checks against the KB."""


class SessionError(FuzzydxError):
    """Base class for session-flow violations."""


class StalePromptError(SessionError):
    """The submitted prompt_id is not currently pending."""


class InvalidOptionError(SessionError):
    """The submitted selection is not among the prompt's options."""


class SessionCompleteError(SessionError):
    """The session is already complete and accepts no further submissions."""
