"""Rule-based candidate filtering and retention accounting.

Three rules run in a fixed order on every parsed candidate:

1. ``residual-script`` - no character of the candidate may fall in a script
   range that is forbidden for the language pair (kana and ideographs for
   ja->en; kana only for ja->zh, since ideographs are legitimate Chinese).
2. ``entity-grounding`` - every entity must occur verbatim in the text.
3. ``format`` - the candidate must satisfy every type invariant.

The first failing rule gets the rejection in the statistics; all computed
verdicts are recorded on the record either way.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ConfigurationError
from .format import TCREE, Sample, validate_sample
from .records import (
    RULE_FORMAT,
    RULE_GROUNDING,
    RULE_SCRIPT,
    FilterVerdict,
    TranslationRecord,
)

# Forbidden script ranges per (source, target) language pair. The en-source
# directions forbid nothing: Latin is legitimate inside Japanese and Chinese
# text, so those rely on the grounding and format rules alone.
_HIRAGANA = (0x3040, 0x309F, "hiragana")
_KATAKANA = (0x30A0, 0x30FF, "katakana")
_KATAKANA_EXT = (0x31F0, 0x31FF, "katakana")
_CJK_IDEOGRAPHS = (0x4E00, 0x9FFF, "cjk-ideograph")

FORBIDDEN_SCRIPTS: dict[tuple[str, str], tuple[tuple[int, int, str], ...]] = {
    ("ja", "en"): (_HIRAGANA, _KATAKANA, _KATAKANA_EXT, _CJK_IDEOGRAPHS),
    ("ja", "zh"): (_HIRAGANA, _KATAKANA, _KATAKANA_EXT),
    ("en", "ja"): (),
    ("en", "zh"): (),
}


@dataclass(frozen=True, slots=True)
class FilterConfig:
    """Switches for the contested corners of the rules."""

    #: Apply entity grounding to TCREE candidates (their slots may be labels
    #: that never occur verbatim in the text, so default off).
    ground_tcree: bool = False
    #: Require entities to match at word boundaries instead of any substring.
    word_boundary: bool = False


def detect_residual_script(
    fields: list[tuple[str, str]], src_lang: str, tgt_lang: str
) -> FilterVerdict:
    """Scan named strings for characters forbidden in the target language.

    ``fields`` is a list of (field name, value) so the verdict can point at
    the offending field, character, and offset.
    """
    try:
        ranges = FORBIDDEN_SCRIPTS[(src_lang, tgt_lang)]
    except KeyError:
        raise ConfigurationError(
            f"unsupported language pair {src_lang}->{tgt_lang} for script filtering"
        ) from None
    for name, value in fields:
        for offset, ch in enumerate(value):
            cp = ord(ch)
            for lo, hi, script in ranges:
                if lo <= cp <= hi:
                    return FilterVerdict(
                        RULE_SCRIPT,
                        False,
                        f"{script} character {ch!r} (U+{cp:04X}) in {name} at offset {offset}",
                    )
    return FilterVerdict(RULE_SCRIPT, True)


def candidate_fields(candidate: Sample) -> list[tuple[str, str]]:
    fields = [("text", candidate.text), ("text_label", candidate.text_label)]
    for i, pair in enumerate(candidate.pairs):
        fields.append((f"pairs[{i}].label", pair.label))
        fields.append((f"pairs[{i}].entity", pair.entity))
    return fields


def check_entity_grounding(
    candidate: Sample, word_boundary: bool = False
) -> FilterVerdict:
    """Every entity must match the text exactly: byte-level substring, no case
    folding, no normalization beyond the NFC applied at ingestion."""
    for i, pair in enumerate(candidate.pairs):
        if word_boundary:
            grounded = re.search(
                rf"\b{re.escape(pair.entity)}\b", candidate.text
            ) is not None
        else:
            grounded = pair.entity in candidate.text
        if not grounded:
            return FilterVerdict(
                RULE_GROUNDING,
                False,
                f"entity {pair.entity!r} (pairs[{i}]) not found in text",
            )
    return FilterVerdict(RULE_GROUNDING, True)


def check_format(candidate: Sample) -> FilterVerdict:
    """Format conformance via the sample validator (grounding excluded here;
    it is its own rule)."""
    violations = validate_sample(candidate, grounding=False)
    if violations:
        return FilterVerdict(RULE_FORMAT, False, str(violations[0]))
    return FilterVerdict(RULE_FORMAT, True)


@dataclass(slots=True)
class CellRetention:
    input: int = 0
    parse_failed: int = 0
    rejected: dict[str, int] = field(
        default_factory=lambda: {RULE_SCRIPT: 0, RULE_GROUNDING: 0, RULE_FORMAT: 0}
    )
    accepted: int = 0

    @property
    def balanced(self) -> bool:
        return self.input == self.accepted + self.parse_failed + sum(self.rejected.values())


class RetentionStats:
    """Per (dataset, target language) retention counts."""

    def __init__(self):
        self.cells: dict[tuple[str, str], CellRetention] = {}

    def cell(self, dataset: str, language: str) -> CellRetention:
        return self.cells.setdefault((dataset, language), CellRetention())

    @property
    def balanced(self) -> bool:
        return all(cell.balanced for cell in self.cells.values())

    def to_rows(self) -> list[dict]:
        rows = []
        for (dataset, language), cell in sorted(self.cells.items()):
            rows.append(
                {
                    "dataset": dataset,
                    "language": language,
                    "input": cell.input,
                    "parse_failed": cell.parse_failed,
                    "rejected_residual_script": cell.rejected[RULE_SCRIPT],
                    "rejected_entity_grounding": cell.rejected[RULE_GROUNDING],
                    "rejected_format": cell.rejected[RULE_FORMAT],
                    "accepted": cell.accepted,
                }
            )
        return rows

    def render_table(self) -> str:
        headers = (
            "dataset", "language", "input", "parse", "script", "grounding",
            "format", "accepted",
        )
        rows = [
            (
                d, l, str(c.input), str(c.parse_failed),
                str(c.rejected[RULE_SCRIPT]), str(c.rejected[RULE_GROUNDING]),
                str(c.rejected[RULE_FORMAT]), str(c.accepted),
            )
            for (d, l), c in sorted(self.cells.items())
        ]
        widths = [
            max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
            for i, h in enumerate(headers)
        ]
        fmt = "  ".join(f"{{:<{w}}}" for w in widths)
        lines = [fmt.format(*headers), fmt.format(*("-" * w for w in widths))]
        lines.extend(fmt.format(*row) for row in rows)
        return "\n".join(lines)


def filter_record(
    record: TranslationRecord, config: FilterConfig | None = None
) -> list[FilterVerdict]:
    """Compute the rule verdicts for one parsed candidate, in rule order."""
    config = config or FilterConfig()
    candidate = record.candidate
    if candidate is None:
        raise ValueError("filter_record requires a parsed candidate")
    verdicts = []
    src, tgt = record.source.language, record.target_language
    if src != tgt:
        verdicts.append(
            detect_residual_script(candidate_fields(candidate), src, tgt)
        )
    if candidate.dataset != TCREE or config.ground_tcree:
        verdicts.append(check_entity_grounding(candidate, config.word_boundary))
    verdicts.append(check_format(candidate))
    return verdicts


def run_filters(
    records: list[TranslationRecord], config: FilterConfig | None = None
) -> tuple[list[TranslationRecord], list[TranslationRecord], RetentionStats]:
    """Apply the rule chain to every record.

    Records whose reply never parsed count as parse failures. Otherwise the
    first failing rule is charged with the rejection; survivors stay pending
    and move on to human review. The per-cell counts always balance.
    """
    config = config or FilterConfig()
    accepted: list[TranslationRecord] = []
    rejected: list[TranslationRecord] = []
    stats = RetentionStats()
    for record in records:
        cell = stats.cell(record.source.dataset, record.target_language)
        cell.input += 1
        if record.candidate is None:
            cell.parse_failed += 1
            record.status = "rejected"
            rejected.append(record)
            continue
        verdicts = filter_record(record, config)
        record.verdicts.extend(verdicts)
        first_fail = next((v for v in verdicts if not v.passed), None)
        if first_fail is None:
            cell.accepted += 1
            accepted.append(record)
        else:
            cell.rejected[first_fail.rule_id] += 1
            record.status = "rejected"
            rejected.append(record)
    return accepted, rejected, stats
