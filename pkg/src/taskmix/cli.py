"""Command-line entry point wiring the pipeline stages.

One subcommand per stage; stages communicate only through files, so any stage
can be re-run in isolation:

  translate    corpus -> translation records (live, record, or replay mode)
  filter       records -> accepted/rejected partitions + retention stats
  serve-review start the HTTP review service
  split        corpus -> train/test files + split manifest
  stats        corpus statistics table
  eval         gold corpus + generations -> TL/WL/ALL report
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import corpus as corpus_mod
from .errors import ConfigurationError, CorpusError, TaskmixError
from .evaluate import evaluate_corpus
from .filters import FilterConfig, run_filters
from .gateway import LiveProvider, RecordingProvider, ReplayProvider, Translator
from .lexicon import load_lexicon
from .records import read_records, write_records
from .templates import load_templates


def _require_file(path: str) -> Path:
    p = Path(path)
    if not p.is_file():
        raise ConfigurationError(f"no such file: {path}")
    return p


def _cmd_translate(args) -> int:
    if args.mode in ("replay", "record") and not args.cassette:
        raise ConfigurationError(f"--mode {args.mode} requires --cassette")
    _require_file(args.input)
    if args.mode == "replay":
        _require_file(args.cassette)
        provider = ReplayProvider(args.cassette)
    elif args.mode == "record":
        provider = RecordingProvider(LiveProvider(), args.cassette)
    else:
        provider = LiveProvider()
    translator = Translator(
        provider,
        templates=load_templates(args.templates) if args.templates else None,
        lexicon=load_lexicon(args.lexicon) if args.lexicon else None,
        temperature=args.temperature,
    )
    samples = corpus_mod.read_corpus(args.input)
    records = translator.translate_corpus(
        samples, args.target_lang, concurrency=args.concurrency
    )
    write_records(records, args.output)
    parsed = sum(r.candidate is not None for r in records)
    print(f"translated {len(records)} samples ({parsed} parsed) -> {args.output}")
    return 0


def _cmd_filter(args) -> int:
    _require_file(args.records)
    records = read_records(args.records)
    config = FilterConfig(ground_tcree=args.ground_tcree, word_boundary=args.word_boundary)
    accepted, rejected, stats = run_filters(records, config)
    write_records(accepted, args.accepted)
    write_records(rejected, args.rejected)
    if args.accepted_corpus:
        corpus_mod.write_corpus(
            [r.candidate for r in accepted if r.candidate], args.accepted_corpus
        )
    print(stats.render_table())
    if args.stats_json:
        Path(args.stats_json).write_text(
            json.dumps(stats.to_rows(), ensure_ascii=False, indent=2) + "\n", "utf-8"
        )
    return 0


def _cmd_split(args) -> int:
    _require_file(args.input)
    samples = corpus_mod.read_corpus(args.input)
    train: list = []
    test: list = []
    manifest_cells = []
    for (dataset, language), members in corpus_mod.group_by_cell(samples).items():
        size = (
            args.train_size
            if args.train_size is not None
            else corpus_mod.default_train_size(dataset, language)
        )
        spec = corpus_mod.SplitSpec(train_size=size, seed=args.seed)
        cell_train, cell_test = corpus_mod.split_train_test(members, spec)
        train.extend(cell_train)
        test.extend(cell_test)
        manifest_cells.append(
            {
                "dataset": dataset,
                "language": language,
                "train_size": size,
                "train_ids": [s.id for s in cell_train],
                "test_ids": [s.id for s in cell_test],
            }
        )
        print(f"{dataset}/{language}: {len(cell_train)} train / {len(cell_test)} test")
    corpus_mod.write_corpus(train, args.train)
    corpus_mod.write_corpus(test, args.test)
    if args.manifest:
        Path(args.manifest).write_text(
            json.dumps(corpus_mod.split_manifest(manifest_cells, args.seed),
                       ensure_ascii=False, indent=2) + "\n",
            "utf-8",
        )
    return 0


def _cmd_stats(args) -> int:
    _require_file(args.input)
    stats = corpus_mod.compute_stats(corpus_mod.read_corpus(args.input))
    print(corpus_mod.render_stats(stats))
    if args.json:
        Path(args.json).write_text(
            json.dumps(corpus_mod.stats_rows(stats), ensure_ascii=False, indent=2) + "\n",
            "utf-8",
        )
    return 0


def _cmd_eval(args) -> int:
    _require_file(args.gold)
    _require_file(args.pred)
    golds = corpus_mod.read_corpus(args.gold)
    generations = Path(args.pred).read_text("utf-8").splitlines()
    if len(golds) != len(generations):
        raise CorpusError(
            f"{args.pred} has {len(generations)} lines for {len(golds)} gold samples"
        )
    report = evaluate_corpus(golds, generations)
    print(report.render_table())
    if args.json:
        Path(args.json).write_text(
            json.dumps(report.to_rows(), ensure_ascii=False, indent=2) + "\n", "utf-8"
        )
    return 0


def _cmd_serve_review(args) -> int:
    from .review import serve

    _require_file(args.records)
    serve(args.records, args.audit, host=args.host, port=args.port, ui_dir=args.ui_dir)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="taskmix",
        description="Dataset translation, filtering, review, and scoring toolkit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("translate", help="translate a corpus via the model gateway")
    p.add_argument("--input", required=True, help="source corpus JSONL")
    p.add_argument("--output", required=True, help="translation records JSONL")
    p.add_argument("--target-lang", required=True, choices=("ja", "en", "zh"))
    p.add_argument("--mode", default="replay", choices=("live", "record", "replay"))
    p.add_argument("--cassette", help="cassette JSONL (required for record/replay)")
    p.add_argument("--templates", help="prompt template directory (default: bundled)")
    p.add_argument("--lexicon", help="label lexicon table (default: bundled)")
    p.add_argument("--temperature", type=float, default=0.0)
    p.add_argument("--concurrency", type=int, default=8)
    p.set_defaults(func=_cmd_translate)

    p = sub.add_parser("filter", help="apply the rule chain to translation records")
    p.add_argument("--records", required=True)
    p.add_argument("--accepted", required=True)
    p.add_argument("--rejected", required=True)
    p.add_argument("--accepted-corpus",
                   help="also write accepted candidates as a corpus JSONL")
    p.add_argument("--stats-json", help="write retention stats rows as JSON")
    p.add_argument("--ground-tcree", action="store_true",
                   help="apply entity grounding to TCREE candidates too")
    p.add_argument("--word-boundary", action="store_true",
                   help="ground entities at word boundaries instead of substrings")
    p.set_defaults(func=_cmd_filter)

    p = sub.add_parser("serve-review", help="start the review HTTP service")
    p.add_argument("--records", required=True, help="filtered records JSONL")
    p.add_argument("--audit", help="append-only decision log")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8571)
    p.add_argument("--ui-dir", help="serve a built review UI from this directory")
    p.set_defaults(func=_cmd_serve_review)

    p = sub.add_parser("split", help="seeded train/test split with manifest")
    p.add_argument("--input", required=True)
    p.add_argument("--train", required=True)
    p.add_argument("--test", required=True)
    p.add_argument("--manifest", help="write the split manifest JSON here")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--train-size", type=int,
                   help="override the per-cell default train size")
    p.set_defaults(func=_cmd_split)

    p = sub.add_parser("stats", help="corpus statistics table")
    p.add_argument("--input", required=True)
    p.add_argument("--json", help="write stats rows as JSON")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("eval", help="score generations against a gold corpus")
    p.add_argument("--gold", required=True, help="gold corpus JSONL")
    p.add_argument("--pred", required=True, help="one raw output line per gold sample")
    p.add_argument("--json", help="write report rows as JSON")
    p.set_defaults(func=_cmd_eval)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"taskmix: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"taskmix: no such file: {exc.filename}", file=sys.stderr)
        return 2
    except TaskmixError as exc:
        print(f"taskmix: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
