"""Command-line interface.

Subcommands: ingest, build-seen, build-unseen, stats, export,
export-instructions, query. Exit codes: 0 success, 1 input error,
2 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
import traceback

from .dataset import compute_stats, export_dataset, import_dataset, query
from .errors import VckbError
from .ingest import load_kb, load_scene_corpus
from .instructions import (
    ExportConfig,
    InstructionTemplates,
    build_instruction_samples,
    write_instruction_samples,
)
from .lexicon import Lexicon
from .pipeline import build_records
from .taxonomy import parse_category


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--scene", help="scene corpus file")
    parser.add_argument("--kb", help="knowledge-base edge file")
    parser.add_argument("--lexicon", help="lexicon directory (default: bundled tables)")
    parser.add_argument("--data", help="previously exported dataset file")
    parser.add_argument("--out", help="output file")
    parser.add_argument("--config", help="JSON file with export configuration")
    parser.add_argument("--tau", type=float, help="region overlap threshold")
    parser.add_argument("--m", type=int, help="seen tails sampled per pair")
    parser.add_argument("--k", type=int, help="top unseen tails kept")
    parser.add_argument("--j", type=int, help="random extra unseen tails")
    parser.add_argument("--seed", type=int, help="sampling seed")
    parser.add_argument("--sep", help="separator token for joined tails")
    parser.add_argument("--workers", type=int, default=1, help="parallel image workers")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vckb",
        description="Build, inspect, and export a grounded visual-commonsense dataset.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, description in (
        ("ingest", "validate a scene corpus (and optional KB), report counts"),
        ("build-seen", "build and export the seen layer only"),
        ("build-unseen", "build and export the unseen layer only"),
        ("export", "build and export the full dataset"),
        ("stats", "report statistics of an exported dataset"),
        ("export-instructions", "generate instruction-tuning samples"),
        ("query", "look up triples by object name and category"),
    ):
        command = sub.add_parser(name, help=description)
        _add_common_flags(command)
        if name == "query":
            command.add_argument("--name", required=True, help="object name to look up")
            command.add_argument(
                "--category", required=True, help="canonical category path"
            )
    return parser


def _require(args, *flags: str) -> None:
    missing = [f"--{flag}" for flag in flags if getattr(args, flag) is None]
    if missing:
        raise VckbError(f"missing required flags: {', '.join(missing)}")


def _config_from(args) -> ExportConfig:
    return ExportConfig.load(
        args.config,
        m=args.m,
        k=args.k,
        j=args.j,
        tau=args.tau,
        seed=args.seed,
        sep_token=args.sep,
    )


def _load_inputs(args, need_kb: bool):
    _require(args, "scene")
    if need_kb:
        _require(args, "kb")
    lexicon = Lexicon.load(args.lexicon) if args.lexicon else Lexicon.default()
    corpus = load_scene_corpus(args.scene)
    kb = load_kb(args.kb) if args.kb else None
    return corpus, kb, lexicon


def _emit_diagnostics(diagnostics) -> None:
    print(json.dumps({"diagnostics": diagnostics.as_dict()}), file=sys.stderr)


def _cmd_ingest(args) -> int:
    corpus, kb, _ = _load_inputs(args, need_kb=False)
    if args.out:
        corpus.save(args.out)
    summary = {
        "images": corpus.image_count,
        "bboxes": corpus.bbox_count,
        "unique_object_names": corpus.unique_object_names,
    }
    if kb is not None:
        summary["kb_edges"] = len(kb)
    print(json.dumps(summary))
    return 0


def _cmd_build(args, include_seen: bool, include_unseen: bool) -> int:
    corpus, kb, lexicon = _load_inputs(args, need_kb=include_unseen)
    _require(args, "out")
    config = _config_from(args)
    records, diagnostics = build_records(
        corpus,
        lexicon,
        kb=kb if include_unseen else None,
        config=config,
        workers=args.workers,
        include_seen=include_seen,
        include_unseen=include_unseen,
    )
    export_dataset(records, args.out)
    _emit_diagnostics(diagnostics)
    return 0


def _cmd_stats(args) -> int:
    _require(args, "data")
    records = import_dataset(args.data)
    print(compute_stats(records).to_json())
    return 0


def _cmd_export_instructions(args) -> int:
    _require(args, "out")
    config = _config_from(args)
    if args.data:
        records = import_dataset(args.data)
    else:
        corpus, kb, lexicon = _load_inputs(args, need_kb=True)
        records, diagnostics = build_records(
            corpus, lexicon, kb=kb, config=config, workers=args.workers
        )
        _emit_diagnostics(diagnostics)
    templates = InstructionTemplates.load(config.template_path)
    samples = []
    for record in records:
        samples.extend(build_instruction_samples(record, config, templates))
    write_instruction_samples(samples, args.out)
    return 0


def _cmd_query(args) -> int:
    _require(args, "data")
    lexicon = Lexicon.load(args.lexicon) if args.lexicon else Lexicon.default()
    category = parse_category(args.category)
    records = import_dataset(args.data)
    for triple in query(records, args.name, category, lexicon):
        head = triple.head
        print(
            "\t".join(
                (
                    head.image_id,
                    head.object_id,
                    head.name,
                    triple.category.text,
                    triple.tail,
                    repr(triple.score),
                )
            )
        )
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "ingest":
            return _cmd_ingest(args)
        if args.command == "build-seen":
            return _cmd_build(args, include_seen=True, include_unseen=False)
        if args.command == "build-unseen":
            return _cmd_build(args, include_seen=False, include_unseen=True)
        if args.command == "export":
            return _cmd_build(args, include_seen=True, include_unseen=True)
        if args.command == "stats":
            return _cmd_stats(args)
        if args.command == "export-instructions":
            return _cmd_export_instructions(args)
        if args.command == "query":
            return _cmd_query(args)
        raise AssertionError(f"unhandled command {args.command!r}")
    except (VckbError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception:
        print("internal error:", file=sys.stderr)
        traceback.print_exc()
        return 2


if __name__ == "__main__":
    sys.exit(main())
