"""Prompt templates: instruction, constraint list, and one in-context example.

Templates are data, not code - the wording is expected to be edited and
iterated on, so each one lives in a JSON file. Rendering is a pure function of
(template, sample, labels): equal inputs produce byte-equal prompts, which is
what makes cassette replay possible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import ConfigurationError
from .format import LabelEntityPair, Sample

_DATA_PACKAGE = "taskmix.data.templates"

#: Dataset wildcard in a template's applicability.
ANY_DATASET = "*"


@dataclass(frozen=True, slots=True)
class PromptTemplate:
    id: str
    instruction: str
    constraints: tuple[str, ...]
    one_shot_input: str
    one_shot_output: str
    dataset: str
    source_language: str
    target_language: str

    def applies_to(self, dataset: str, src_lang: str, tgt_lang: str) -> bool:
        return (
            self.dataset in (ANY_DATASET, dataset)
            and self.source_language == src_lang
            and self.target_language == tgt_lang
        )


def _template_from_dict(d: dict, origin: str) -> PromptTemplate:
    try:
        template = PromptTemplate(
            id=d["id"],
            instruction=d["instruction"],
            constraints=tuple(d.get("constraints", ())),
            one_shot_input=d["one_shot"]["input"],
            one_shot_output=d["one_shot"]["output"],
            dataset=d.get("dataset", ANY_DATASET),
            source_language=d["source_language"],
            target_language=d["target_language"],
        )
    except KeyError as exc:
        raise ConfigurationError(f"template {origin}: missing field {exc}") from None
    if not template.instruction:
        raise ConfigurationError(f"template {origin}: empty instruction")
    return template


class TemplateRegistry:
    def __init__(self, templates: list[PromptTemplate]):
        self._by_id = {}
        for t in templates:
            if t.id in self._by_id:
                raise ConfigurationError(f"duplicate template id {t.id!r}")
            self._by_id[t.id] = t

    def get(self, template_id: str) -> PromptTemplate:
        try:
            return self._by_id[template_id]
        except KeyError:
            raise ConfigurationError(f"no template with id {template_id!r}") from None

    def resolve(self, dataset: str, src_lang: str, tgt_lang: str) -> PromptTemplate:
        """Dataset-specific template first, wildcard template second."""
        exact = wildcard = None
        for t in self._by_id.values():
            if not t.applies_to(dataset, src_lang, tgt_lang):
                continue
            if t.dataset == dataset:
                exact = exact or t
            else:
                wildcard = wildcard or t
        hit = exact or wildcard
        if hit is None:
            raise ConfigurationError(
                f"no template for dataset {dataset} {src_lang}->{tgt_lang}"
            )
        return hit


def load_templates(directory: str | Path | None = None) -> TemplateRegistry:
    """Load every ``*.json`` template (bundled set by default)."""
    templates = []
    if directory is None:
        root = resources.files(_DATA_PACKAGE)
        names = sorted(
            entry.name for entry in root.iterdir() if entry.name.endswith(".json")
        )
        for name in names:
            raw = json.loads((root / name).read_text("utf-8"))
            templates.append(_template_from_dict(raw, name))
    else:
        for path in sorted(Path(directory).glob("*.json")):
            raw = json.loads(path.read_text("utf-8"))
            templates.append(_template_from_dict(raw, path.name))
    if not templates:
        raise ConfigurationError("no templates found")
    return TemplateRegistry(templates)


def render_translation_prompt(
    template: PromptTemplate,
    sample: Sample,
    target_language: str,
    text_label: str,
    pair_labels: list[str],
) -> str:
    """Assemble the full translation prompt.

    ``text_label`` and ``pair_labels`` are the (possibly pre-translated)
    labels to embed; entities and text are passed through untranslated for the
    model to translate.
    """
    if not template.applies_to(sample.dataset, sample.language, target_language):
        raise ConfigurationError(
            f"template {template.id} does not apply to {sample.dataset} "
            f"{sample.language}->{target_language}"
        )
    if len(pair_labels) != len(sample.pairs):
        raise ConfigurationError(
            f"{len(pair_labels)} pair labels for {len(sample.pairs)} pairs"
        )
    lines = [template.instruction, ""]
    if template.constraints:
        lines.append("Constraints:")
        lines.extend(
            f"{i}. {c}" for i, c in enumerate(template.constraints, start=1)
        )
        lines.append("")
    lines += [
        "Example input:",
        template.one_shot_input,
        "Example output:",
        template.one_shot_output,
        "",
        f"Task word: {sample.task_word}",
        f"Text label: {text_label}",
        "Pairs (label -> entity):",
    ]
    if sample.pairs:
        lines.extend(
            f"{label} -> {pair.entity}"
            for label, pair in zip(pair_labels, sample.pairs)
        )
    else:
        lines.append("(none)")
    lines += ["Text:", sample.text]
    return "\n".join(lines)


def render_annotation_prompt(
    template: PromptTemplate, text: str, pairs: list[LabelEntityPair]
) -> str:
    """Assemble the prompt asking for an open-domain text-level label."""
    lines = [template.instruction, ""]
    if template.constraints:
        lines.append("Constraints:")
        lines.extend(
            f"{i}. {c}" for i, c in enumerate(template.constraints, start=1)
        )
        lines.append("")
    lines += [
        "Example input:",
        template.one_shot_input,
        "Example output:",
        template.one_shot_output,
        "",
        "Pairs (label -> entity):",
    ]
    if pairs:
        lines.extend(f"{p.label} -> {p.entity}" for p in pairs)
    else:
        lines.append("(none)")
    lines += ["Text:", text]
    return "\n".join(lines)
