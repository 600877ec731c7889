"""End-to-end dataset construction over a loaded corpus.

Per-image builds are pure functions, so images can be processed by any
number of workers; results are collected in corpus order and the output is
byte-identical regardless of worker count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

from .dataset import DatasetRecord, group_triples
from .ingest import ImageEntry, KbIndex, SceneCorpus
from .instructions import ExportConfig
from .lexicon import Lexicon
from .seen import BuildDiagnostics, CommonsenseTriple, build_seen
from .unseen import build_unseen


def build_image_record(
    entry: ImageEntry,
    lexicon: Lexicon,
    kb: KbIndex | None,
    config: ExportConfig,
    include_seen: bool = True,
    include_unseen: bool = True,
) -> tuple[DatasetRecord, BuildDiagnostics]:
    """Build one image's record. Seen triples are always computed; they are
    needed to deduplicate the unseen layer even when not exported."""
    diagnostics = BuildDiagnostics()
    objects = entry.objects
    seen = build_seen(
        objects, entry.triples, entry.regions, lexicon, config.tau, diagnostics
    )
    seen_by_object: dict[str, list[CommonsenseTriple]] = {}
    for triple in seen:
        seen_by_object.setdefault(triple.head.object_id, []).append(triple)

    unseen_by_object: dict[str, list[CommonsenseTriple]] = {}
    if include_unseen and kb is not None:
        unseen_by_object = build_unseen(
            objects, seen_by_object, kb, lexicon, dedup_seen=config.dedup_unseen
        )

    entries = []
    for obj in objects:
        triples = []
        if include_seen:
            triples.extend(seen_by_object.get(obj.object_id, []))
        triples.extend(unseen_by_object.get(obj.object_id, []))
        entries.append(group_triples(obj, triples))
    return DatasetRecord(image_id=entry.image_id, entries=entries), diagnostics


def build_records(
    corpus: SceneCorpus,
    lexicon: Lexicon,
    kb: KbIndex | None = None,
    config: ExportConfig | None = None,
    workers: int = 1,
    include_seen: bool = True,
    include_unseen: bool = True,
) -> tuple[list[DatasetRecord], BuildDiagnostics]:
    """Build records for every image, in corpus order."""
    if config is None:
        config = ExportConfig()
    entries = list(corpus.images())

    def job(entry: ImageEntry):
        return build_image_record(
            entry, lexicon, kb, config, include_seen, include_unseen
        )

    if workers <= 1:
        results = [job(entry) for entry in entries]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(job, entries))

    diagnostics = BuildDiagnostics()
    records = []
    for record, diag in results:
        records.append(record)
        diagnostics.merge(diag)
    return records, diagnostics
