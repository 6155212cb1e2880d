"""Parser and serializer for the task-word text format.

Every sample is a pair of lines:

  input:   ``<text> /<TASKWORD>``
  output:  ``<text label> <TASKWORD>:<label1>;<entity1>:<label2>;<entity2>...``

The task word rides after a ``/`` suffix on the input side and separates the
text-level label from the word-level pairs on the output side. ``:`` opens a
label-entity chunk and ``;`` splits a chunk into its fields; the format has no
escaping, so those three characters are reserved. Decoding is deliberately
permissive (any string decodes to *something*); strictness lives in
:func:`validate_sample` and the filter rules built on top of it.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field

from .errors import FormatError

DATASETS = (
    "SCNM",
    "SCPOS-RW",
    "SCPOS-AdjN",
    "SCPOS-Adj",
    "SCPOS-N",
    "TCREE",
    "TCONER",
)
LANGUAGES = ("ja", "en", "zh")

#: Dataset whose word-level output is an opaque tail rather than pair chunks.
TCREE = "TCREE"

#: Characters that may not appear in a task word.
TASK_WORD_RESERVED = ":;/"
#: Characters that may not appear in a pair label or entity.
PAIR_RESERVED = ":;"

INPUT_MARKER = "/"


def nfc(s: str) -> str:
    """NFC-normalize a string; the single normalization applied at ingestion."""
    return unicodedata.normalize("NFC", s)


def validate_task_word(word: str) -> None:
    """Raise :class:`FormatError` unless ``word`` is a legal task word.

    Legal task words are non-empty and contain no whitespace and none of
    ``:``, ``;``, ``/``.
    """
    if not word:
        raise FormatError("empty task word")
    for ch in word:
        if ch.isspace():
            raise FormatError(f"whitespace {ch!r} in task word {word!r}")
        if ch in TASK_WORD_RESERVED:
            raise FormatError(f"reserved character {ch!r} in task word {word!r}")


@dataclass(frozen=True, slots=True)
class LabelEntityPair:
    """One word-level unit: a label and the entity it tags."""

    label: str
    entity: str

    def as_tuple(self) -> tuple[str, str]:
        return (self.label, self.entity)


def pair_from_tuple(parts: tuple[str, ...]) -> LabelEntityPair:
    """Build a pair from a decoded chunk tuple.

    Chunks decode to tuples of any arity. A proper chunk gives a 2-tuple;
    a chunk with no ``;`` gives a 1-tuple (entity becomes empty) and extra
    ``;`` fields are folded back into the entity. Either defect is caught by
    :func:`validate_sample`, never silently repaired.
    """
    if not parts:
        return LabelEntityPair("", "")
    return LabelEntityPair(parts[0], ";".join(parts[1:]))


@dataclass(frozen=True, slots=True)
class ParsedOutput:
    """Decoded output line: text-level label plus the word-level carrier.

    ``pairs`` holds the chunk tuples as a set. In tail mode (TCREE-style
    datasets) the word-level side is the single opaque ``raw_tail`` string
    instead and ``pairs`` is empty.
    """

    text_label: str
    pairs: frozenset[tuple[str, ...]]
    raw_tail: str | None = None


@dataclass(slots=True)
class Sample:
    """One datum: text, task word, text-level label, ordered pairs."""

    id: str
    dataset: str
    language: str
    text: str
    task_word: str
    text_label: str
    pairs: list[LabelEntityPair] = field(default_factory=list)
    meta: dict = field(default_factory=dict)


@dataclass(frozen=True, slots=True)
class Violation:
    """A named invariant breach found by :func:`validate_sample`."""

    field: str
    rule: str
    detail: str

    def __str__(self) -> str:
        return f"{self.field}: {self.rule} ({self.detail})"


def build_input(text: str, task_word: str) -> str:
    """Encode the input line: text, one space, ``/`` and the task word."""
    if not text:
        raise FormatError("empty text")
    validate_task_word(task_word)
    return f"{text} {INPUT_MARKER}{task_word}"


def parse_input(line: str) -> tuple[str, str]:
    """Decode an input line into (text, task word).

    The task word is everything after the last ``/``, so the text itself may
    contain slashes. Exactly one separator space before the marker is removed,
    which makes this the inverse of :func:`build_input`.
    """
    line = line.rstrip()
    idx = line.rfind(INPUT_MARKER)
    if idx < 0:
        raise FormatError("no task-word marker '/' found")
    word = line[idx + 1 :]
    if not word:
        raise FormatError("empty task word after marker")
    validate_task_word(word)
    text = line[:idx]
    if text.endswith(" "):
        text = text[:-1]
    return text, word


def split_output(
    output: str, instruct_word: str, tcree_mode: bool = False
) -> tuple[bool, str, list[tuple[str, ...]], str | None]:
    """Core output-line decoder, preserving chunk order.

    Returns ``(found, text_label, chunk_tuples, raw_tail)``. When the
    instruct word does not occur in ``output`` at all, ``found`` is False and
    everything else is empty. Otherwise the string is split once at the first
    occurrence: the trimmed prefix is the text label; in tail mode the trimmed
    remainder (minus the canonical ``:`` separator, if present) becomes
    ``raw_tail``; otherwise the remainder splits on ``:`` into non-empty
    chunks, each trimmed and split on ``;`` into a field tuple. Chunks with no
    ``;`` stay as 1-tuples - the decoder never rejects, downstream validation
    does.
    """
    if not instruct_word:
        raise FormatError("empty task word")
    if instruct_word not in output:
        return False, "", [], None
    head, tail = output.split(instruct_word, 1)
    text_label = head.strip()
    if tcree_mode:
        raw = tail.strip()
        if raw.startswith(":"):
            raw = raw[1:].strip()
        return True, text_label, [], raw
    chunks = [chunk.strip() for chunk in tail.split(":") if chunk]
    return True, text_label, [tuple(chunk.split(";")) for chunk in chunks], None


def parse_output(output: str, instruct_word: str, tcree_mode: bool = False) -> ParsedOutput:
    """Decode an output line; total over strings, duplicate chunks collapse.

    A missing instruct word yields ``("", {})`` rather than an error so that
    arbitrary model generations always score.
    """
    found, text_label, chunks, raw_tail = split_output(output, instruct_word, tcree_mode)
    if not found:
        return ParsedOutput("", frozenset())
    return ParsedOutput(text_label, frozenset(chunks), raw_tail)


def serialize_output(
    text_label: str,
    pairs: "list[LabelEntityPair] | tuple[LabelEntityPair, ...]",
    task_word: str,
    raw_tail: str | None = None,
) -> str:
    """Encode an output line, pairs in the given order.

    Raises :class:`FormatError` when a label or entity contains a reserved
    delimiter (the format has no escaping) or when the text label contains the
    task word itself, which would make the line undecodable.
    """
    validate_task_word(task_word)
    if task_word in text_label:
        raise FormatError(
            f"text label {text_label!r} contains the task word {task_word!r}"
        )
    out = f"{text_label} {task_word}"
    if raw_tail is not None:
        if pairs:
            raise FormatError("raw_tail and pairs are mutually exclusive")
        return f"{out}:{raw_tail}" if raw_tail else out
    for pair in pairs:
        for name, value in (("label", pair.label), ("entity", pair.entity)):
            for ch in value:
                if ch in PAIR_RESERVED:
                    raise FormatError(
                        f"reserved character {ch!r} in pair {name} {value!r}"
                    )
        out += f":{pair.label};{pair.entity}"
    return out


def output_line(sample: Sample) -> str:
    """Canonical output line for a sample."""
    return serialize_output(sample.text_label, sample.pairs, sample.task_word)


def input_line(sample: Sample) -> str:
    """Canonical input line for a sample."""
    return build_input(sample.text, sample.task_word)


def validate_sample(sample: Sample, grounding: bool = False) -> list[Violation]:
    """Check every type invariant; returns one violation per breach.

    With ``grounding`` enabled, every entity must also occur as a contiguous
    substring of the text (exact, case-sensitive, no normalization).
    """
    violations: list[Violation] = []

    def bad(field_name: str, rule: str, detail: str) -> None:
        violations.append(Violation(field_name, rule, detail))

    if sample.dataset not in DATASETS:
        bad("dataset", "unknown", f"{sample.dataset!r} not one of {DATASETS}")
    if sample.language not in LANGUAGES:
        bad("language", "unknown", f"{sample.language!r} not one of {LANGUAGES}")
    if not sample.text:
        bad("text", "empty", "text must be non-empty")
    if not sample.text_label.strip():
        bad("text_label", "empty", "text label must be non-empty")
    try:
        validate_task_word(sample.task_word)
    except FormatError as exc:
        bad("task_word", "invalid", str(exc))
    else:
        if sample.task_word in sample.text_label:
            bad(
                "text_label",
                "reserved",
                f"label {sample.text_label!r} contains task word {sample.task_word!r}",
            )

    for i, pair in enumerate(sample.pairs):
        where = f"pairs[{i}]"
        if not pair.label.strip():
            bad(f"{where}.label", "empty", "label must be non-empty")
        if not pair.entity.strip():
            bad(f"{where}.entity", "empty", "entity must be non-empty")
        for name, value in (("label", pair.label), ("entity", pair.entity)):
            hit = next((ch for ch in value if ch in PAIR_RESERVED), None)
            if hit is not None:
                bad(f"{where}.{name}", "reserved", f"contains {hit!r}")
        if grounding and pair.entity and pair.entity not in sample.text:
            bad(f"{where}.entity", "grounding", f"{pair.entity!r} not in text")

    return violations
