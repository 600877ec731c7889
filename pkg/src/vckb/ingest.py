"""Scene-corpus and knowledge-base loading.

Scene corpus format: UTF-8, line-delimited, tab-separated, one record per
line with a one-character type prefix:

    I <tab> image_id [<tab> width <tab> height]
    O <tab> image_id <tab> object_id <tab> name <tab> x <tab> y <tab> w <tab> h
    T <tab> image_id <tab> kind(A|R) <tab> subject_id <tab> predicate <tab> object
    R <tab> image_id <tab> x <tab> y <tab> w <tab> h <tab> phrase

For attribute triples (kind A) the object column holds the attribute text;
for relationship triples (kind R) it holds an object id in the same image.
Images may be declared explicitly with an I record (optionally carrying
pixel dimensions) or implicitly by their first O/T/R record. Fields cannot
contain tabs or newlines; blank lines are skipped.

KB file format: UTF-8, tab-separated `head <tab> relation <tab> tail`
with an optional numeric weight column (default 1.0). Heads and tails are
lowercased and underscores are normalized to spaces so that KB entries
match the space-separated object names used everywhere else.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import DanglingReference, EmptyCorpus, EmptyKb, MalformedRecord
from .geometry import BBox


def _normalize_name(text: str) -> str:
    return " ".join(text.replace("_", " ").lower().split())


@dataclass(frozen=True)
class GroundedObject:
    object_id: str
    image_id: str
    name: str  # lowercase, whitespace-normalized
    bbox: BBox


class TripleKind(enum.Enum):
    ATTRIBUTE = "A"
    RELATIONSHIP = "R"


@dataclass(frozen=True)
class SceneTriple:
    image_id: str
    subject_id: str
    predicate: str
    object_slot: str  # attribute text (A) or object id (R)
    kind: TripleKind


@dataclass(frozen=True)
class Region:
    image_id: str
    phrase: str
    bbox: BBox


@dataclass(frozen=True)
class KbEdge:
    head: str
    relation: str
    tail: str
    weight: float = 1.0


@dataclass
class ImageEntry:
    image_id: str
    width: int | None = None
    height: int | None = None
    objects: list[GroundedObject] = field(default_factory=list)
    triples: list[SceneTriple] = field(default_factory=list)
    regions: list[Region] = field(default_factory=list)


class SceneCorpus:
    """Validated in-memory index of a scene corpus, keyed by image id."""

    def __init__(self, images: dict[str, ImageEntry]):
        self._images = images
        self._objects_by_id: dict[str, dict[str, GroundedObject]] = {
            image_id: {obj.object_id: obj for obj in entry.objects}
            for image_id, entry in images.items()
        }

    def __len__(self) -> int:
        return len(self._images)

    @property
    def image_ids(self) -> list[str]:
        return list(self._images)

    def image(self, image_id: str) -> ImageEntry:
        return self._images[image_id]

    def images(self):
        return iter(self._images.values())

    def objects_by_id(self, image_id: str) -> dict[str, GroundedObject]:
        return self._objects_by_id[image_id]

    @property
    def image_count(self) -> int:
        return len(self._images)

    @property
    def bbox_count(self) -> int:
        return sum(len(entry.objects) for entry in self._images.values())

    @property
    def unique_object_names(self) -> int:
        return len(
            {obj.name for entry in self._images.values() for obj in entry.objects}
        )

    def save(self, path) -> None:
        """Write the corpus back out in its normalized on-disk form."""
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            for entry in self._images.values():
                if entry.width is not None:
                    handle.write(
                        f"I\t{entry.image_id}\t{entry.width}\t{entry.height}\n"
                    )
                else:
                    handle.write(f"I\t{entry.image_id}\n")
                for obj in entry.objects:
                    box = obj.bbox
                    handle.write(
                        f"O\t{entry.image_id}\t{obj.object_id}\t{obj.name}"
                        f"\t{box.x}\t{box.y}\t{box.w}\t{box.h}\n"
                    )
                for triple in entry.triples:
                    handle.write(
                        f"T\t{entry.image_id}\t{triple.kind.value}"
                        f"\t{triple.subject_id}\t{triple.predicate}\t{triple.object_slot}\n"
                    )
                for region in entry.regions:
                    box = region.bbox
                    handle.write(
                        f"R\t{entry.image_id}\t{box.x}\t{box.y}\t{box.w}\t{box.h}"
                        f"\t{region.phrase}\n"
                    )


def _parse_int(value: str, path, line_number, what: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise MalformedRecord(path, line_number, f"{what} is not an integer: {value!r}")


def _parse_bbox(fields: list[str], path, line_number) -> BBox:
    x, y, w, h = (_parse_int(v, path, line_number, "coordinate") for v in fields)
    try:
        return BBox(x, y, w, h)
    except ValueError as exc:
        raise MalformedRecord(path, line_number, str(exc)) from None


def load_scene_corpus(path) -> SceneCorpus:
    """Load and validate a scene corpus file.

    Raises MalformedRecord (with line number) for schema violations,
    DanglingReference when a triple names an unknown object, and
    EmptyCorpus when no records are present.
    """
    images: dict[str, ImageEntry] = {}

    def entry_for(image_id: str) -> ImageEntry:
        entry = images.get(image_id)
        if entry is None:
            entry = ImageEntry(image_id=image_id)
            images[image_id] = entry
        return entry

    with open(path, encoding="utf-8") as handle:
        for line_number, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            fields = line.split("\t")
            kind = fields[0]
            if kind == "I":
                if len(fields) not in (2, 4):
                    raise MalformedRecord(path, line_number, "I record needs 1 or 3 fields")
                entry = entry_for(fields[1])
                if len(fields) == 4:
                    width = _parse_int(fields[2], path, line_number, "width")
                    height = _parse_int(fields[3], path, line_number, "height")
                    if width <= 0 or height <= 0:
                        raise MalformedRecord(path, line_number, "image size must be positive")
                    entry.width, entry.height = width, height
            elif kind == "O":
                if len(fields) != 8:
                    raise MalformedRecord(path, line_number, "O record needs 7 fields")
                _, image_id, object_id, name = fields[:4]
                bbox = _parse_bbox(fields[4:8], path, line_number)
                name = _normalize_name(name)
                if not name:
                    raise MalformedRecord(path, line_number, "object name is empty")
                entry = entry_for(image_id)
                if object_id in {o.object_id for o in entry.objects}:
                    raise MalformedRecord(
                        path, line_number, f"duplicate object id {object_id!r}"
                    )
                entry.objects.append(
                    GroundedObject(object_id=object_id, image_id=image_id, name=name, bbox=bbox)
                )
            elif kind == "T":
                if len(fields) != 6:
                    raise MalformedRecord(path, line_number, "T record needs 5 fields")
                _, image_id, kind_code, subject_id, predicate, object_slot = fields
                try:
                    triple_kind = TripleKind(kind_code)
                except ValueError:
                    raise MalformedRecord(
                        path, line_number, f"unknown triple kind {kind_code!r}"
                    ) from None
                entry_for(image_id).triples.append(
                    SceneTriple(
                        image_id=image_id,
                        subject_id=subject_id,
                        predicate=" ".join(predicate.lower().split()),
                        object_slot=object_slot
                        if triple_kind is TripleKind.RELATIONSHIP
                        else " ".join(object_slot.lower().split()),
                        kind=triple_kind,
                    )
                )
            elif kind == "R":
                if len(fields) != 7:
                    raise MalformedRecord(path, line_number, "R record needs 6 fields")
                _, image_id, *coords, phrase = fields
                bbox = _parse_bbox(coords, path, line_number)
                if not phrase.strip():
                    raise MalformedRecord(path, line_number, "region phrase is empty")
                entry_for(image_id).regions.append(
                    Region(image_id=image_id, phrase=phrase.strip(), bbox=bbox)
                )
            else:
                raise MalformedRecord(path, line_number, f"unknown record type {kind!r}")

    if not images:
        raise EmptyCorpus(f"no records in {path}")

    corpus = SceneCorpus(images)
    _validate_integrity(corpus, path)
    return corpus


def _validate_integrity(corpus: SceneCorpus, path) -> None:
    for entry in corpus.images():
        known = corpus.objects_by_id(entry.image_id)
        for triple in entry.triples:
            if triple.subject_id not in known:
                raise DanglingReference(
                    f"{path}: triple subject {triple.subject_id!r} not in image "
                    f"{entry.image_id!r}"
                )
            if triple.kind is TripleKind.RELATIONSHIP and triple.object_slot not in known:
                raise DanglingReference(
                    f"{path}: triple object {triple.object_slot!r} not in image "
                    f"{entry.image_id!r}"
                )
        if entry.width is not None:
            for obj in entry.objects:
                box = obj.bbox
                if box.x + box.w > entry.width or box.y + box.h > entry.height:
                    raise MalformedRecord(
                        path,
                        0,
                        f"object {obj.object_id!r} box exceeds image "
                        f"{entry.image_id!r} dimensions",
                    )


class KbIndex:
    """Knowledge-base edges indexed by (head lemma, relation)."""

    def __init__(self, edges: list[KbEdge]):
        self._edges = list(edges)
        self._by_key: dict[tuple[str, str], list[KbEdge]] = {}
        for edge in self._edges:
            self._by_key.setdefault((edge.head, edge.relation), []).append(edge)

    def __len__(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> list[KbEdge]:
        return list(self._edges)

    def lookup(self, head: str, relation: str) -> list[KbEdge]:
        return list(self._by_key.get((head, relation), ()))


def load_kb(path) -> KbIndex:
    """Load a tab-separated KB edge file.

    Raises MalformedRecord for rows with fewer than three columns or a
    non-numeric weight, EmptyKb when the file holds no edges.
    """
    edges: list[KbEdge] = []
    with open(path, encoding="utf-8") as handle:
        for line_number, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            fields = line.split("\t")
            if len(fields) < 3 or len(fields) > 4:
                raise MalformedRecord(path, line_number, "expected head, relation, tail[, weight]")
            head = _normalize_name(fields[0])
            relation = fields[1].strip()
            tail = _normalize_name(fields[2])
            if not head or not tail:
                raise MalformedRecord(path, line_number, "head and tail must be non-empty")
            weight = 1.0
            if len(fields) == 4:
                try:
                    weight = float(fields[3])
                except ValueError:
                    raise MalformedRecord(
                        path, line_number, f"weight is not a number: {fields[3]!r}"
                    ) from None
                if weight < 0:
                    raise MalformedRecord(path, line_number, "weight must be non-negative")
            edges.append(KbEdge(head=head, relation=relation, tail=tail, weight=weight))
    if not edges:
        raise EmptyKb(f"no edges in {path}")
    return KbIndex(edges)
