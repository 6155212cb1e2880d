"""Exception hierarchy shared across the toolkit."""


class TaskmixError(Exception):
    """Base class for all toolkit errors."""


class FormatError(TaskmixError):
    """A string violates the task-word text format."""


class LexiconError(TaskmixError):
    """Label lexicon loading or lookup failure."""


class ConfigurationError(TaskmixError):
    """Invalid or unsupported configuration (language pair, template, flags)."""


class TransportError(TaskmixError):
    """Live completion endpoint failed after the retry budget was spent."""


class CassetteMissError(TaskmixError):
    """Replay mode was asked for a request that is not in the cassette."""


class AnnotationError(TaskmixError):
    """Text-level label annotation produced no usable label."""


class CorpusError(TaskmixError):
    """Corpus or records file does not match the JSONL schema."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ReviewConflictError(TaskmixError):
    """Optimistic-concurrency revision mismatch on a review decision."""


class ReviewStateError(TaskmixError):
    """Decision submitted for a record that is not pending."""


class ReviewValidationError(TaskmixError):
    """Decision payload is malformed (e.g. edit without a valid candidate)."""
