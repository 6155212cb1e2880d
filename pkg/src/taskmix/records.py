"""Translation records: the unit of work flowing translate -> filter -> review.

A record keeps the source sample, the raw model reply verbatim (always, also
on failure - the filter stage must stay auditable), the parsed candidate if
the reply decoded, every filter verdict, and the review status.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import sample_from_dict, sample_to_dict
from .errors import CorpusError
from .format import Sample

#: Verdict rule identifiers, in the order the filter chain applies them.
RULE_PARSE = "parse"
RULE_SCRIPT = "residual-script"
RULE_GROUNDING = "entity-grounding"
RULE_FORMAT = "format"

STATUSES = ("pending", "accepted", "edited", "rejected")


@dataclass(frozen=True, slots=True)
class FilterVerdict:
    """Outcome of one rule on one record; detail names the offending part."""

    rule_id: str
    passed: bool
    detail: str = ""

    def __post_init__(self):
        if not self.passed and not self.detail:
            raise ValueError("failing verdict requires a detail")


@dataclass(slots=True)
class TranslationRecord:
    id: str
    source: Sample
    target_language: str
    prompt_id: str
    raw_reply: str
    candidate: Sample | None = None
    verdicts: list[FilterVerdict] = field(default_factory=list)
    status: str = "pending"
    revision: int = 0
    flagged: bool = False


def record_to_dict(record: TranslationRecord) -> dict:
    return {
        "id": record.id,
        "status": record.status,
        "revision": record.revision,
        "flagged": record.flagged,
        "target_language": record.target_language,
        "prompt_id": record.prompt_id,
        "raw_reply": record.raw_reply,
        "source": sample_to_dict(record.source),
        "candidate": sample_to_dict(record.candidate) if record.candidate else None,
        "verdicts": [
            {"rule_id": v.rule_id, "passed": v.passed, "detail": v.detail}
            for v in record.verdicts
        ],
    }


def record_from_dict(d: dict, line: int | None = None) -> TranslationRecord:
    for key in ("id", "status", "target_language", "raw_reply", "source"):
        if key not in d:
            raise CorpusError(f"record missing field {key!r}", line)
    if d["status"] not in STATUSES:
        raise CorpusError(f"unknown record status {d['status']!r}", line)
    candidate = d.get("candidate")
    return TranslationRecord(
        id=d["id"],
        source=sample_from_dict(d["source"], line),
        target_language=d["target_language"],
        prompt_id=d.get("prompt_id", ""),
        raw_reply=d["raw_reply"],
        candidate=sample_from_dict(candidate, line) if candidate else None,
        verdicts=[
            FilterVerdict(v["rule_id"], v["passed"], v.get("detail", ""))
            for v in d.get("verdicts", [])
        ],
        status=d["status"],
        revision=int(d.get("revision", 0)),
        flagged=bool(d.get("flagged", False)),
    )


def read_records(path: str | Path) -> list[TranslationRecord]:
    records = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            raw = raw.strip()
            if not raw:
                continue
            try:
                obj = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"invalid JSON: {exc.msg}", lineno) from None
            record = record_from_dict(obj, lineno)
            if record.id in seen:
                raise CorpusError(f"duplicate record id {record.id!r}", lineno)
            seen.add(record.id)
            records.append(record)
    return records


def write_records(records: list[TranslationRecord], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for record in records:
            f.write(json.dumps(record_to_dict(record), ensure_ascii=False))
            f.write("\n")
