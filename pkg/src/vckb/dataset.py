"""Dataset records, on-disk serialization, statistics, and lookup.

One dataset record holds one image's objects, each with its commonsense
triples grouped by category. The on-disk form is line-delimited UTF-8, one
record per line, tab-separated, with free-text fields escaped:

    image_id  n_objects  { object_id  name  x y w h  n_groups
                           { category  n_triples  { tail provenance score }* }* }*

Backslash, tab, newline, and carriage return inside text fields are escaped
as ``\\\\``, ``\\t``, ``\\n``, and ``\\r``. Scores are written with ``repr``
so floats round-trip exactly; repeated runs over identical inputs are
byte-identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import InvalidCategory, IoFailure, MalformedRecord
from .geometry import BBox
from .ingest import GroundedObject
from .lexicon import Lexicon
from .phrase import lemmatize
from .seen import CommonsenseTriple, Provenance
from .taxonomy import ALL_CATEGORIES, CategoryPath, parse_category


@dataclass
class CategoryGroup:
    category: CategoryPath
    triples: list[CommonsenseTriple]


@dataclass
class ObjectEntry:
    obj: GroundedObject
    groups: list[CategoryGroup] = field(default_factory=list)

    def __post_init__(self):
        for group in self.groups:
            for triple in group.triples:
                if triple.head.object_id != self.obj.object_id:
                    raise ValueError(
                        f"triple head {triple.head.object_id!r} does not match "
                        f"entry object {self.obj.object_id!r}"
                    )

    def group(self, category: CategoryPath) -> list[CommonsenseTriple]:
        for group in self.groups:
            if group.category == category:
                return group.triples
        return []


@dataclass
class DatasetRecord:
    image_id: str
    entries: list[ObjectEntry] = field(default_factory=list)


def group_triples(
    obj: GroundedObject, triples: list[CommonsenseTriple]
) -> ObjectEntry:
    """Group one object's triples by category in canonical category order.

    Within a group the incoming order is preserved, so sorted unseen lists
    stay sorted.
    """
    by_category: dict[CategoryPath, list[CommonsenseTriple]] = {}
    for triple in triples:
        by_category.setdefault(triple.category, []).append(triple)
    groups = [
        CategoryGroup(category=category, triples=by_category[category])
        for category in ALL_CATEGORIES
        if category in by_category
    ]
    return ObjectEntry(obj=obj, groups=groups)


def _escape(text: str) -> str:
    # \r must be escaped too: universal-newline reading would otherwise
    # split a record at a stray carriage return.
    return (
        text.replace("\\", "\\\\")
        .replace("\t", "\\t")
        .replace("\n", "\\n")
        .replace("\r", "\\r")
    )


_UNESCAPE_MAP = {"\\": "\\", "t": "\t", "n": "\n", "r": "\r"}


def _unescape(text: str) -> str:
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\\" and i + 1 < len(text):
            mapped = _UNESCAPE_MAP.get(text[i + 1])
            if mapped is not None:
                out.append(mapped)
                i += 2
                continue
        out.append(ch)
        i += 1
    return "".join(out)


def _record_fields(record: DatasetRecord) -> list[str]:
    fields = [record.image_id, str(len(record.entries))]
    for entry in record.entries:
        obj = entry.obj
        box = obj.bbox
        fields.extend(
            [
                obj.object_id,
                _escape(obj.name),
                str(box.x),
                str(box.y),
                str(box.w),
                str(box.h),
                str(len(entry.groups)),
            ]
        )
        for group in entry.groups:
            fields.extend([group.category.text, str(len(group.triples))])
            for triple in group.triples:
                fields.extend(
                    [_escape(triple.tail), triple.provenance.value, repr(triple.score)]
                )
    return fields


def export_dataset(records: list[DatasetRecord], path) -> None:
    """Write records one per line; byte-identical across repeat runs."""
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            for record in records:
                handle.write("\t".join(_record_fields(record)))
                handle.write("\n")
    except OSError as exc:
        raise IoFailure(f"cannot write dataset to {path}: {exc}") from exc


class _FieldReader:
    def __init__(self, fields: list[str], path, line_number: int):
        self.fields = fields
        self.path = path
        self.line_number = line_number
        self.index = 0

    def take(self, what: str) -> str:
        if self.index >= len(self.fields):
            raise MalformedRecord(self.path, self.line_number, f"missing field: {what}")
        value = self.fields[self.index]
        self.index += 1
        return value

    def take_int(self, what: str) -> int:
        value = self.take(what)
        try:
            number = int(value)
        except ValueError:
            raise MalformedRecord(
                self.path, self.line_number, f"{what} is not an integer: {value!r}"
            ) from None
        if number < 0:
            raise MalformedRecord(self.path, self.line_number, f"{what} is negative")
        return number

    def done(self) -> None:
        if self.index != len(self.fields):
            raise MalformedRecord(
                self.path, self.line_number, "trailing fields after record"
            )


def _parse_record(reader: _FieldReader) -> DatasetRecord:
    image_id = reader.take("image_id")
    entries = []
    for _ in range(reader.take_int("object count")):
        object_id = reader.take("object_id")
        name = _unescape(reader.take("name"))
        x = reader.take_int("x")
        y = reader.take_int("y")
        w = reader.take_int("w")
        h = reader.take_int("h")
        try:
            obj = GroundedObject(
                object_id=object_id, image_id=image_id, name=name, bbox=BBox(x, y, w, h)
            )
        except ValueError as exc:
            raise MalformedRecord(reader.path, reader.line_number, str(exc)) from None
        groups = []
        for _ in range(reader.take_int("group count")):
            try:
                category = parse_category(reader.take("category"))
            except InvalidCategory as exc:
                raise MalformedRecord(
                    reader.path, reader.line_number, str(exc)
                ) from None
            triples = []
            for _ in range(reader.take_int("triple count")):
                tail = _unescape(reader.take("tail"))
                provenance_text = reader.take("provenance")
                try:
                    provenance = Provenance(provenance_text)
                except ValueError:
                    raise MalformedRecord(
                        reader.path,
                        reader.line_number,
                        f"unknown provenance {provenance_text!r}",
                    ) from None
                score_text = reader.take("score")
                try:
                    score = float(score_text)
                except ValueError:
                    raise MalformedRecord(
                        reader.path,
                        reader.line_number,
                        f"score is not a number: {score_text!r}",
                    ) from None
                try:
                    triples.append(
                        CommonsenseTriple(
                            head=obj,
                            category=category,
                            tail=tail,
                            provenance=provenance,
                            score=score,
                        )
                    )
                except ValueError as exc:
                    raise MalformedRecord(
                        reader.path, reader.line_number, str(exc)
                    ) from None
            groups.append(CategoryGroup(category=category, triples=triples))
        entries.append(ObjectEntry(obj=obj, groups=groups))
    reader.done()
    return DatasetRecord(image_id=image_id, entries=entries)


def import_dataset(path) -> list[DatasetRecord]:
    """Read a dataset file written by export_dataset."""
    records = []
    try:
        with open(path, encoding="utf-8") as handle:
            for line_number, raw in enumerate(handle, start=1):
                line = raw.rstrip("\n")
                if not line:
                    continue
                reader = _FieldReader(line.split("\t"), path, line_number)
                records.append(_parse_record(reader))
    except OSError as exc:
        raise IoFailure(f"cannot read dataset from {path}: {exc}") from exc
    return records


@dataclass
class Stats:
    image_count: int
    bbox_count: int
    unique_object_names: int
    per_category: dict[str, int]

    def as_dict(self) -> dict:
        return {
            "image_count": self.image_count,
            "bbox_count": self.bbox_count,
            "unique_object_names": self.unique_object_names,
            "per_category": dict(self.per_category),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=False)


def compute_stats(records: list[DatasetRecord]) -> Stats:
    """Counts over built records; category counts are distinct triples.

    A distinct triple is a (head name, category, tail) tuple, so the same
    fact attached to many boxes counts once per category.
    """
    names = set()
    distinct: dict[str, set] = {category.text: set() for category in ALL_CATEGORIES}
    bbox_count = 0
    for record in records:
        for entry in record.entries:
            bbox_count += 1
            names.add(entry.obj.name)
            for group in entry.groups:
                bucket = distinct[group.category.text]
                for triple in group.triples:
                    bucket.add((entry.obj.name, triple.tail))
    return Stats(
        image_count=len(records),
        bbox_count=bbox_count,
        unique_object_names=len(names),
        per_category={text: len(bucket) for text, bucket in distinct.items()},
    )


def query(
    records: list[DatasetRecord],
    object_name: str,
    category: CategoryPath,
    lexicon: Lexicon,
) -> list[CommonsenseTriple]:
    """All triples for a head name (lemma match) in one category.

    Unseen results keep their stored object-aware order.
    """
    target = lemmatize(object_name.strip().lower(), lexicon)
    out: list[CommonsenseTriple] = []
    for record in records:
        for entry in record.entries:
            if lemmatize(entry.obj.name, lexicon) != target:
                continue
            out.extend(entry.group(category))
    return out
