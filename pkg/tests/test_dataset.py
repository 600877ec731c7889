import pytest

from vckb import (
    BBox,
    DatasetRecord,
    GroundedObject,
    Provenance,
    compute_stats,
    export_dataset,
    group_triples,
    import_dataset,
    parse_category,
    query,
)
from vckb.dataset import ObjectEntry
from vckb.errors import MalformedRecord
from vckb.seen import CommonsenseTriple
from vckb.taxonomy import (
    ALL_CATEGORIES,
    SEEN_LOCATED_NEAR,
    UNSEEN_CAPABLE_OF,
)

from conftest import make_object


def triple(obj, category_text, tail, provenance=None, score=0.0):
    category = parse_category(category_text)
    if provenance is None:
        provenance = (
            Provenance.KB_RETRIEVAL
            if category_text.startswith("/Unseen")
            else Provenance.SCENE_TRIPLE
        )
    return CommonsenseTriple(
        head=obj, category=category, tail=tail, provenance=provenance, score=score
    )


@pytest.fixture
def sample_records():
    man = make_object("o1", image_id="img1", name="man", box=(10, 10, 50, 100))
    car = make_object("o2", image_id="img1", name="car", box=(200, 150, 120, 80))
    records = [
        DatasetRecord(
            image_id="img1",
            entries=[
                group_triples(
                    man,
                    [
                        triple(man, "/Seen/Space/LocatedNear", "car"),
                        triple(man, "/Seen/Property/HasProperty", "tall"),
                        triple(man, "/Unseen/Action/CapableOf", "grow up", score=1.5),
                        triple(man, "/Unseen/Action/CapableOf", "read book", score=0.5),
                    ],
                ),
                group_triples(car, [triple(car, "/Seen/Space/LocatedNear", "man")]),
            ],
        )
    ]
    return records


def test_group_order_is_canonical(sample_records):
    entry = sample_records[0].entries[0]
    texts = [group.category.text for group in entry.groups]
    order = [c.text for c in ALL_CATEGORIES]
    assert texts == sorted(texts, key=order.index)


def test_group_preserves_triple_order(sample_records):
    entry = sample_records[0].entries[0]
    unseen = entry.group(UNSEEN_CAPABLE_OF)
    assert [t.tail for t in unseen] == ["grow up", "read book"]


def test_entry_rejects_foreign_head():
    man = make_object("o1", name="man")
    car = make_object("o2", name="car", box=(20, 0, 5, 5))
    with pytest.raises(ValueError):
        ObjectEntry(
            obj=man,
            groups=group_triples(car, [triple(car, "/Seen/Space/LocatedNear", "man")]).groups,
        )


def test_round_trip(sample_records, tmp_path):
    path = tmp_path / "dataset.tsv"
    export_dataset(sample_records, path)
    assert import_dataset(path) == sample_records


def test_round_trip_with_tricky_tails(tmp_path):
    obj = make_object("o1", name="back\\slash")
    record = DatasetRecord(
        image_id="img1",
        entries=[
            group_triples(
                obj,
                [
                    triple(obj, "/Seen/Property/HasProperty", "tab\there"),
                    triple(obj, "/Seen/Property/HasProperty", "new\nline"),
                    triple(obj, "/Seen/Property/HasProperty", "carriage\rreturn"),
                    triple(obj, "/Seen/Property/HasProperty", "both\\\t\n\r"),
                    triple(obj, "/Seen/Property/HasProperty", "literal\\t backslash-t"),
                ],
            )
        ],
    )
    path = tmp_path / "dataset.tsv"
    export_dataset([record], path)
    assert import_dataset(path) == [record]
    # The file itself stays line-delimited.
    assert len(path.read_text(encoding="utf-8").splitlines()) == 1


def test_export_byte_identical(sample_records, tmp_path):
    first = tmp_path / "a.tsv"
    second = tmp_path / "b.tsv"
    export_dataset(sample_records, first)
    export_dataset(sample_records, second)
    assert first.read_bytes() == second.read_bytes()


def test_import_rejects_truncated(tmp_path, sample_records):
    path = tmp_path / "dataset.tsv"
    export_dataset(sample_records, path)
    text = path.read_text(encoding="utf-8")
    path.write_text(text[: len(text) // 2].rstrip("\n") + "\n", encoding="utf-8")
    with pytest.raises(MalformedRecord):
        import_dataset(path)


def test_stats_empty():
    stats = compute_stats([])
    assert stats.image_count == 0
    assert stats.bbox_count == 0
    assert stats.unique_object_names == 0
    assert set(stats.per_category.values()) == {0}


def test_stats_counts(sample_records):
    stats = compute_stats(sample_records)
    assert stats.image_count == 1
    assert stats.bbox_count == 2
    assert stats.unique_object_names == 2
    assert stats.per_category["/Seen/Space/LocatedNear"] == 2
    assert stats.per_category["/Unseen/Action/CapableOf"] == 2
    assert stats.per_category["/Unseen/Property/CreatedBy"] == 0


def test_stats_distinct_by_name(tmp_path):
    # Two boxes with the same name and tail count once per category.
    a = make_object("o1", name="car")
    b = make_object("o2", name="car", box=(30, 0, 5, 5))
    record = DatasetRecord(
        image_id="img1",
        entries=[
            group_triples(a, [triple(a, "/Seen/Property/HasProperty", "red")]),
            group_triples(b, [triple(b, "/Seen/Property/HasProperty", "red")]),
        ],
    )
    assert compute_stats([record]).per_category["/Seen/Property/HasProperty"] == 1


def test_stats_survive_round_trip(sample_records, tmp_path):
    path = tmp_path / "dataset.tsv"
    export_dataset(sample_records, path)
    assert compute_stats(import_dataset(path)).as_dict() == compute_stats(
        sample_records
    ).as_dict()


def test_query_by_name_and_category(sample_records, lexicon):
    hits = query(sample_records, "man", SEEN_LOCATED_NEAR, lexicon)
    assert [t.tail for t in hits] == ["car"]


def test_query_lemmatizes_argument(sample_records, lexicon):
    hits = query(sample_records, "cars", SEEN_LOCATED_NEAR, lexicon)
    assert [t.tail for t in hits] == ["man"]


def test_query_unknown_name_empty(sample_records, lexicon):
    assert query(sample_records, "unicorn", SEEN_LOCATED_NEAR, lexicon) == []


def test_query_preserves_unseen_order(sample_records, lexicon):
    hits = query(sample_records, "man", UNSEEN_CAPABLE_OF, lexicon)
    assert [t.tail for t in hits] == ["grow up", "read book"]
