"""Rule-based translation of closed-set labels.

Labels are translated by table lookup before any model is involved: the label
sets are small, fixed per dataset, and a reviewed table file keeps the mapping
auditable. Unknown labels are a hard error so that nothing unmapped ever
reaches a prompt.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import LexiconError

_DATA_PACKAGE = "taskmix.data"
_DEFAULT_LEXICON = "label_lexicon.tsv"
_DEFAULT_REGISTRIES = "label_registries.json"


@dataclass(frozen=True, slots=True)
class LabelRegistry:
    """The closed label inventory of one dataset plus its translation targets."""

    dataset: str
    source_language: str
    target_languages: tuple[str, ...]
    text_labels: tuple[str, ...]
    word_labels: tuple[str, ...]

    @property
    def labels(self) -> tuple[str, ...]:
        return self.text_labels + self.word_labels


class LabelLexicon:
    """Immutable (dataset, source, target, label) -> label lookup table."""

    def __init__(self, entries: dict[tuple[str, str, str, str], str]):
        self._entries = dict(entries)
        self._pairs = {key[:3] for key in entries}

    def __len__(self) -> int:
        return len(self._entries)

    def supports(self, dataset: str, src_lang: str, tgt_lang: str) -> bool:
        return src_lang == tgt_lang or (dataset, src_lang, tgt_lang) in self._pairs

    def translate(self, dataset: str, src_lang: str, tgt_lang: str, label: str) -> str:
        """Deterministic lookup; identity when source equals target language."""
        if src_lang == tgt_lang:
            return label
        key = (dataset, src_lang, tgt_lang, label)
        hit = self._entries.get(key)
        if hit is not None:
            return hit
        if (dataset, src_lang, tgt_lang) in self._pairs:
            raise LexiconError(
                f"unknown label {label!r} for {dataset} {src_lang}->{tgt_lang}"
            )
        raise LexiconError(
            f"unsupported language pair {src_lang}->{tgt_lang} for dataset {dataset}"
        )


def _read_text(path: str | Path | None, default_name: str) -> str:
    if path is None:
        return (resources.files(_DATA_PACKAGE) / default_name).read_text("utf-8")
    return Path(path).read_text("utf-8")


def load_registries(path: str | Path | None = None) -> dict[str, LabelRegistry]:
    """Load the per-dataset label inventories (bundled file by default).

    Open-label datasets (TCONER) have no registry: their labels are not a
    closed set and cannot be table-translated.
    """
    raw = json.loads(_read_text(path, _DEFAULT_REGISTRIES))
    registries = {}
    for dataset, entry in raw.items():
        registries[dataset] = LabelRegistry(
            dataset=dataset,
            source_language=entry["source_language"],
            target_languages=tuple(entry["target_languages"]),
            text_labels=tuple(entry["text_labels"]),
            word_labels=tuple(entry["word_labels"]),
        )
    return registries


def audit_totality(
    lexicon: LabelLexicon, registries: dict[str, LabelRegistry]
) -> list[str]:
    """List every registered label that some supported pair cannot translate."""
    missing = []
    for registry in registries.values():
        for tgt in registry.target_languages:
            for label in registry.labels:
                try:
                    lexicon.translate(registry.dataset, registry.source_language, tgt, label)
                except LexiconError:
                    missing.append(
                        f"{registry.dataset} {registry.source_language}->{tgt}: {label}"
                    )
    return missing


def load_lexicon(
    path: str | Path | None = None,
    registries: dict[str, LabelRegistry] | None = None,
) -> LabelLexicon:
    """Parse the lexicon table and audit it against the registries.

    File format: UTF-8, tab-separated ``dataset  src  tgt  src_label
    tgt_label`` rows; ``#``-prefixed lines and blank lines are ignored.
    Conflicting duplicate rows and registry labels left uncovered are load
    errors.
    """
    text = _read_text(path, _DEFAULT_LEXICON)
    entries: dict[tuple[str, str, str, str], str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 5:
            raise LexiconError(
                f"line {lineno}: expected 5 tab-separated fields, got {len(parts)}"
            )
        dataset, src, tgt, src_label, tgt_label = (p.strip() for p in parts)
        key = (dataset, src, tgt, src_label)
        if key in entries and entries[key] != tgt_label:
            raise LexiconError(
                f"line {lineno}: conflicting rows for {dataset} {src}->{tgt} "
                f"{src_label!r}: {entries[key]!r} vs {tgt_label!r}"
            )
        entries[key] = tgt_label

    lexicon = LabelLexicon(entries)
    if registries is None:
        registries = load_registries()
    missing = audit_totality(lexicon, registries)
    if missing:
        raise LexiconError(
            "lexicon does not cover all registered labels: " + "; ".join(missing)
        )
    return lexicon
