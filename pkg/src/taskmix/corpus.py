"""Corpus persistence, train/test splitting, and corpus statistics.

Corpora are JSONL, one sample per line:

  {"id": ..., "dataset": ..., "language": ..., "text": ..., "task_word": ...,
   "text_label": ..., "pairs": [{"label": ..., "entity": ...}], "meta": {...}}

Text fields are NFC-normalized once, at ingestion.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path

from .errors import CorpusError
from .format import DATASETS, LANGUAGES, LabelEntityPair, Sample, nfc

_REQUIRED_KEYS = ("id", "dataset", "language", "text", "task_word", "text_label", "pairs")

# Default train-set size per (dataset, language) cell; everything beyond the
# train size goes to the test set.
DEFAULT_TRAIN_SIZES: dict[tuple[str, str], int] = {
    ("SCNM", "ja"): 1000, ("SCNM", "en"): 1000, ("SCNM", "zh"): 1000,
    ("SCPOS-RW", "ja"): 1000, ("SCPOS-RW", "en"): 500, ("SCPOS-RW", "zh"): 500,
    ("SCPOS-AdjN", "ja"): 1000, ("SCPOS-AdjN", "en"): 1000, ("SCPOS-AdjN", "zh"): 1000,
    ("SCPOS-Adj", "ja"): 1000, ("SCPOS-Adj", "en"): 1000, ("SCPOS-Adj", "zh"): 1000,
    ("SCPOS-N", "ja"): 1000, ("SCPOS-N", "en"): 1000, ("SCPOS-N", "zh"): 1000,
    ("TCREE", "ja"): 1000, ("TCREE", "en"): 500, ("TCREE", "zh"): 500,
    ("TCONER", "ja"): 2000, ("TCONER", "en"): 2000, ("TCONER", "zh"): 2000,
}


def default_train_size(dataset: str, language: str) -> int:
    try:
        return DEFAULT_TRAIN_SIZES[(dataset, language)]
    except KeyError:
        raise CorpusError(f"no default train size for ({dataset}, {language})") from None


def sample_to_dict(sample: Sample) -> dict:
    d = {
        "id": sample.id,
        "dataset": sample.dataset,
        "language": sample.language,
        "text": sample.text,
        "task_word": sample.task_word,
        "text_label": sample.text_label,
        "pairs": [{"label": p.label, "entity": p.entity} for p in sample.pairs],
    }
    if sample.meta:
        d["meta"] = sample.meta
    return d


def sample_from_dict(d: dict, line: int | None = None) -> Sample:
    """Decode one schema object; field errors carry the source line number."""
    if not isinstance(d, dict):
        raise CorpusError("sample is not a JSON object", line)
    for key in _REQUIRED_KEYS:
        if key not in d:
            raise CorpusError(f"missing field {key!r}", line)
    for key in ("id", "dataset", "language", "text", "task_word", "text_label"):
        if not isinstance(d[key], str):
            raise CorpusError(f"field {key!r} must be a string", line)
    if d["dataset"] not in DATASETS:
        raise CorpusError(f"unknown dataset {d['dataset']!r}", line)
    if d["language"] not in LANGUAGES:
        raise CorpusError(f"unknown language {d['language']!r}", line)
    if not isinstance(d["pairs"], list):
        raise CorpusError("field 'pairs' must be an array", line)
    pairs = []
    for i, p in enumerate(d["pairs"]):
        if not isinstance(p, dict) or "label" not in p or "entity" not in p:
            raise CorpusError(f"pairs[{i}] must be an object with label and entity", line)
        pairs.append(LabelEntityPair(nfc(str(p["label"])), nfc(str(p["entity"]))))
    meta = d.get("meta") or {}
    if not isinstance(meta, dict):
        raise CorpusError("field 'meta' must be an object", line)
    return Sample(
        id=d["id"],
        dataset=d["dataset"],
        language=d["language"],
        text=nfc(d["text"]),
        task_word=d["task_word"],
        text_label=nfc(d["text_label"]),
        pairs=pairs,
        meta=meta,
    )


def read_corpus(path: str | Path) -> list[Sample]:
    """Read a corpus file; malformed lines and duplicate ids are errors."""
    samples: list[Sample] = []
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
            sample = sample_from_dict(obj, lineno)
            if sample.id in seen:
                raise CorpusError(f"duplicate id {sample.id!r}", lineno)
            seen.add(sample.id)
            samples.append(sample)
    return samples


def write_corpus(samples: list[Sample], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for sample in samples:
            f.write(json.dumps(sample_to_dict(sample), ensure_ascii=False))
            f.write("\n")


@dataclass(frozen=True, slots=True)
class SplitSpec:
    """Train size and shuffle seed for one corpus cell."""

    train_size: int
    seed: int


def split_train_test(samples: list[Sample], spec: SplitSpec) -> tuple[list[Sample], list[Sample]]:
    """Seeded-shuffle partition: first ``train_size`` shuffled samples train,
    the rest test. Same seed, same split."""
    if spec.train_size > len(samples):
        raise CorpusError(
            f"train size {spec.train_size} exceeds corpus size {len(samples)}"
        )
    shuffled = list(samples)
    random.Random(spec.seed).shuffle(shuffled)
    return shuffled[: spec.train_size], shuffled[spec.train_size :]


def split_manifest(
    cells: list[dict], seed: int
) -> dict:
    """Manifest recording how a split was made, id lists included."""
    return {"seed": seed, "cells": cells}


def group_by_cell(samples: list[Sample]) -> dict[tuple[str, str], list[Sample]]:
    """Group samples by (dataset, language), canonical cell order."""
    cells: dict[tuple[str, str], list[Sample]] = {}
    for sample in samples:
        cells.setdefault((sample.dataset, sample.language), []).append(sample)
    order = {(d, l): (i, j) for i, d in enumerate(DATASETS) for j, l in enumerate(LANGUAGES)}
    return dict(sorted(cells.items(), key=lambda kv: order.get(kv[0], (99, 99))))


@dataclass(frozen=True, slots=True)
class CellStats:
    sample_count: int
    mean_pairs: float
    label_inventory: int


def compute_stats(samples: list[Sample]) -> dict[tuple[str, str], CellStats]:
    """Per-cell sample count, mean pairs per sample, distinct-label count."""
    out: dict[tuple[str, str], CellStats] = {}
    for cell, members in group_by_cell(samples).items():
        labels = {s.text_label for s in members}
        labels.update(p.label for s in members for p in s.pairs)
        total_pairs = sum(len(s.pairs) for s in members)
        out[cell] = CellStats(
            sample_count=len(members),
            mean_pairs=total_pairs / len(members),
            label_inventory=len(labels),
        )
    return out


def stats_rows(stats: dict[tuple[str, str], CellStats]) -> list[dict]:
    return [
        {
            "dataset": dataset,
            "language": language,
            "samples": cell.sample_count,
            "mean_pairs": round(cell.mean_pairs, 4),
            "label_inventory": cell.label_inventory,
        }
        for (dataset, language), cell in stats.items()
    ]


def render_stats(stats: dict[tuple[str, str], CellStats]) -> str:
    """Aligned text table of corpus statistics."""
    headers = ("dataset", "language", "samples", "mean_pairs", "labels")
    rows = [
        (d, l, str(c.sample_count), f"{c.mean_pairs:.2f}", str(c.label_inventory))
        for (d, l), c in stats.items()
    ]
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
              for i, h in enumerate(headers)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    lines = [fmt.format(*headers), fmt.format(*("-" * w for w in widths))]
    lines.extend(fmt.format(*row) for row in rows)
    return "\n".join(lines)
