"""taskmix: multi-task IE dataset toolkit.

Parse and serialize the slash-delimited task-word text format, translate
corpora through a model gateway with rule-based label lexicons, filter
candidates, review them over HTTP, manage splits, and score generations with
the TL/WL/ALL metric.
"""

from .errors import TaskmixError
from .format import (
    DATASETS,
    LANGUAGES,
    LabelEntityPair,
    ParsedOutput,
    Sample,
    build_input,
    parse_input,
    parse_output,
    serialize_output,
    validate_sample,
)

__version__ = "0.1.0"

__all__ = [
    "DATASETS",
    "LANGUAGES",
    "LabelEntityPair",
    "ParsedOutput",
    "Sample",
    "TaskmixError",
    "build_input",
    "parse_input",
    "parse_output",
    "serialize_output",
    "validate_sample",
    "__version__",
]
