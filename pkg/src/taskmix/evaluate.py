"""Scoring of model generations: text-level, word-level, and combined.

Both sides of every comparison go through the same output-line decoder: the
gold sample is serialized to its canonical output line and re-parsed, the
generation is parsed as-is. The word-level score is micro-averaged set
precision/recall/F1 over label-entity chunks; the text-level score is exact
(trimmed) label equality; ALL is the fraction of samples where both levels
match exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .format import DATASETS, LANGUAGES, TCREE, Sample, output_line, parse_output


@dataclass(frozen=True, slots=True)
class SampleScore:
    tl_correct: bool
    wl_intersection: int
    wl_generated: int
    wl_gold: int
    all_correct: bool


@dataclass(frozen=True, slots=True)
class EvalCell:
    sample_count: int
    tl_precision: float
    tl_recall: float
    tl_f1: float
    wl_precision: float
    wl_recall: float
    wl_f1: float
    all_score: float


def f1(precision: float, recall: float) -> float:
    """Harmonic mean with the zero convention: 0 when both sides are 0."""
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def score_sample(
    gold: Sample, generated_text: str, tcree_mode: bool | None = None
) -> SampleScore:
    """Score one generation against its gold sample.

    Unparseable generations score zero by construction: a missing task word
    decodes to an empty label and an empty set. In tail mode the word-level
    carrier is the single opaque tail string on both sides.
    """
    if tcree_mode is None:
        tcree_mode = gold.dataset == TCREE
    gold_parsed = parse_output(output_line(gold), gold.task_word, tcree_mode)
    gen_parsed = parse_output(generated_text, gold.task_word, tcree_mode)
    if tcree_mode:
        gold_set = {gold_parsed.raw_tail} if gold_parsed.raw_tail is not None else set()
        gen_set = {gen_parsed.raw_tail} if gen_parsed.raw_tail is not None else set()
    else:
        gold_set = set(gold_parsed.pairs)
        gen_set = set(gen_parsed.pairs)
    tl_correct = gold_parsed.text_label == gen_parsed.text_label
    return SampleScore(
        tl_correct=tl_correct,
        wl_intersection=len(gold_set & gen_set),
        wl_generated=len(gen_set),
        wl_gold=len(gold_set),
        all_correct=tl_correct and gold_set == gen_set,
    )


def aggregate(scores: list[SampleScore]) -> EvalCell:
    """Fold per-sample scores into one report cell.

    Word-level is micro-averaged: counts are summed across the corpus before
    precision and recall are taken. With one label per sample, text-level
    precision equals recall equals the correct fraction, and ALL reduces to
    the fraction of samples with both levels exact.
    """
    if not scores:
        raise ValueError("cannot aggregate an empty score list")
    n = len(scores)
    tl_fraction = sum(s.tl_correct for s in scores) / n
    generated = sum(s.wl_generated for s in scores)
    gold = sum(s.wl_gold for s in scores)
    intersection = sum(s.wl_intersection for s in scores)
    wl_precision = intersection / generated if generated else 0.0
    wl_recall = intersection / gold if gold else 0.0
    return EvalCell(
        sample_count=n,
        tl_precision=tl_fraction,
        tl_recall=tl_fraction,
        tl_f1=f1(tl_fraction, tl_fraction),
        wl_precision=wl_precision,
        wl_recall=wl_recall,
        wl_f1=f1(wl_precision, wl_recall),
        all_score=sum(s.all_correct for s in scores) / n,
    )


class EvalReport:
    """Per (dataset, language) evaluation cells."""

    def __init__(self, cells: dict[tuple[str, str], EvalCell]):
        order = {
            (d, l): (i, j)
            for i, d in enumerate(DATASETS)
            for j, l in enumerate(LANGUAGES)
        }
        self.cells = dict(sorted(cells.items(), key=lambda kv: order.get(kv[0], (99, 99))))

    def to_rows(self) -> list[dict]:
        return [
            {
                "dataset": dataset,
                "language": language,
                "samples": cell.sample_count,
                "tl_precision": cell.tl_precision,
                "tl_recall": cell.tl_recall,
                "tl_f1": cell.tl_f1,
                "wl_precision": cell.wl_precision,
                "wl_recall": cell.wl_recall,
                "wl_f1": cell.wl_f1,
                "all": cell.all_score,
            }
            for (dataset, language), cell in self.cells.items()
        ]

    def render_table(self) -> str:
        """Aligned table with TL / WL / ALL columns as 2-decimal percentages."""
        headers = ("dataset", "language", "N", "TL", "WL", "ALL")
        rows = [
            (
                dataset,
                language,
                str(cell.sample_count),
                f"{100 * cell.tl_f1:.2f}",
                f"{100 * cell.wl_f1:.2f}",
                f"{100 * cell.all_score:.2f}",
            )
            for (dataset, language), cell in self.cells.items()
        ]
        widths = [
            max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
            for i, h in enumerate(headers)
        ]
        fmt = "  ".join(f"{{:<{w}}}" for w in widths)
        lines = [fmt.format(*headers), fmt.format(*("-" * w for w in widths))]
        lines.extend(fmt.format(*row) for row in rows)
        return "\n".join(lines)


def evaluate_corpus(golds: list[Sample], generations: list[str]) -> EvalReport:
    """Score aligned gold/generation lists and aggregate per corpus cell.

    ``generations[i]`` is the raw output line for ``golds[i]``. Cells with no
    samples are simply absent from the report.
    """
    if len(golds) != len(generations):
        raise ValueError(
            f"{len(golds)} gold samples but {len(generations)} generations"
        )
    grouped: dict[tuple[str, str], list[SampleScore]] = {}
    for gold, generated in zip(golds, generations):
        score = score_sample(gold, generated)
        grouped.setdefault((gold.dataset, gold.language), []).append(score)
    return EvalReport({cell: aggregate(scores) for cell, scores in grouped.items()})
