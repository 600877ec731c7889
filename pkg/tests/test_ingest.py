import pytest

from vckb import TripleKind, load_kb, load_scene_corpus
from vckb.errors import DanglingReference, EmptyCorpus, EmptyKb, MalformedRecord


def test_toy_corpus_counts(toy_scene):
    corpus = load_scene_corpus(toy_scene)
    assert corpus.image_count == 1
    assert corpus.bbox_count == 2
    entry = corpus.image("img1")
    assert len(entry.triples) == 2
    assert len(entry.regions) == 1
    assert entry.width == 640


def test_names_normalized(tmp_path):
    path = tmp_path / "scene.tsv"
    path.write_text("O\timg1\to1\t Traffic   LIGHT \t0\t0\t5\t5\n")
    corpus = load_scene_corpus(path)
    (obj,) = corpus.image("img1").objects
    assert obj.name == "traffic light"


def test_triple_kinds(toy_scene):
    corpus = load_scene_corpus(toy_scene)
    kinds = {t.kind for t in corpus.image("img1").triples}
    assert kinds == {TripleKind.ATTRIBUTE, TripleKind.RELATIONSHIP}


def test_dangling_subject(tmp_path):
    path = tmp_path / "scene.tsv"
    path.write_text(
        "O\timg1\to1\tman\t0\t0\t5\t5\n" "T\timg1\tA\tmissing\tis\ttall\n"
    )
    with pytest.raises(DanglingReference):
        load_scene_corpus(path)


def test_dangling_relationship_object(tmp_path):
    path = tmp_path / "scene.tsv"
    path.write_text(
        "O\timg1\to1\tman\t0\t0\t5\t5\n" "T\timg1\tR\to1\ton\tmissing\n"
    )
    with pytest.raises(DanglingReference):
        load_scene_corpus(path)


def test_malformed_record_reports_line(tmp_path):
    path = tmp_path / "scene.tsv"
    path.write_text("I\timg1\n" "O\timg1\to1\tman\t0\t0\n")
    with pytest.raises(MalformedRecord) as excinfo:
        load_scene_corpus(path)
    assert excinfo.value.line_number == 2


def test_bad_bbox_rejected(tmp_path):
    path = tmp_path / "scene.tsv"
    path.write_text("O\timg1\to1\tman\t0\t0\t0\t5\n")
    with pytest.raises(MalformedRecord):
        load_scene_corpus(path)


def test_bbox_outside_image_rejected(tmp_path):
    path = tmp_path / "scene.tsv"
    path.write_text("I\timg1\t100\t100\nO\timg1\to1\tman\t90\t90\t20\t20\n")
    with pytest.raises(MalformedRecord):
        load_scene_corpus(path)


def test_duplicate_object_id_rejected(tmp_path):
    path = tmp_path / "scene.tsv"
    path.write_text(
        "O\timg1\to1\tman\t0\t0\t5\t5\nO\timg1\to1\tcar\t0\t0\t5\t5\n"
    )
    with pytest.raises(MalformedRecord):
        load_scene_corpus(path)


def test_unknown_record_type(tmp_path):
    path = tmp_path / "scene.tsv"
    path.write_text("X\timg1\tstuff\n")
    with pytest.raises(MalformedRecord):
        load_scene_corpus(path)


def test_bad_image_dimensions(tmp_path):
    path = tmp_path / "scene.tsv"
    path.write_text("I\timg1\t0\t480\n")
    with pytest.raises(MalformedRecord):
        load_scene_corpus(path)


def test_kb_negative_weight_rejected(tmp_path):
    path = tmp_path / "kb.tsv"
    path.write_text("car\tUsedFor\tdrive\t-1.0\n")
    with pytest.raises(MalformedRecord):
        load_kb(path)


def test_kb_non_numeric_weight_rejected(tmp_path):
    path = tmp_path / "kb.tsv"
    path.write_text("car\tUsedFor\tdrive\theavy\n")
    with pytest.raises(MalformedRecord):
        load_kb(path)


def test_empty_corpus(tmp_path):
    path = tmp_path / "scene.tsv"
    path.write_text("\n\n")
    with pytest.raises(EmptyCorpus):
        load_scene_corpus(path)


def test_counts_match_file_rescan(data_dir):
    """Loaded statistics equal counts recomputed from the raw file."""
    path = data_dir / "fixture_scene.tsv"
    corpus = load_scene_corpus(path)
    lines = path.read_text(encoding="utf-8").splitlines()
    image_ids = {l.split("\t")[1] for l in lines if l}
    object_lines = [l for l in lines if l.startswith("O\t")]
    assert corpus.image_count == len(image_ids)
    assert corpus.bbox_count == len(object_lines)
    assert corpus.unique_object_names == len(
        {l.split("\t")[3] for l in object_lines}
    )


def test_load_deterministic(toy_scene):
    first = load_scene_corpus(toy_scene)
    second = load_scene_corpus(toy_scene)
    assert first.image_ids == second.image_ids
    assert first.image("img1").objects == second.image("img1").objects
    assert first.image("img1").triples == second.image("img1").triples


def test_save_round_trips(toy_scene, tmp_path):
    corpus = load_scene_corpus(toy_scene)
    out = tmp_path / "normalized.tsv"
    corpus.save(out)
    again = load_scene_corpus(out)
    assert again.image("img1").objects == corpus.image("img1").objects
    assert again.image("img1").triples == corpus.image("img1").triples
    assert again.image("img1").regions == corpus.image("img1").regions
    # Normalized output is stable.
    out2 = tmp_path / "normalized2.tsv"
    again.save(out2)
    assert out.read_bytes() == out2.read_bytes()


def test_kb_load_and_lookup(toy_kb):
    kb = load_kb(toy_kb)
    assert len(kb) == 6
    (edge,) = kb.lookup("car", "UsedFor")
    assert edge.tail == "drive to work"
    assert edge.weight == 2.0
    # Missing weight defaults to 1.0.
    (created,) = kb.lookup("car", "CreatedBy")
    assert created.weight == 1.0
    assert kb.lookup("tree", "UsedFor") == []


def test_kb_multi_relation_lookup(toy_kb):
    kb = load_kb(toy_kb)
    hits = [e for rel in ("UsedFor", "CreatedBy") for e in kb.lookup("car", rel)]
    assert {(e.relation, e.tail) for e in hits} == {
        ("UsedFor", "drive to work"),
        ("CreatedBy", "factory"),
    }


def test_kb_two_columns_malformed(tmp_path):
    path = tmp_path / "kb.tsv"
    path.write_text("car\tUsedFor\n")
    with pytest.raises(MalformedRecord):
        load_kb(path)


def test_kb_underscores_normalized(tmp_path):
    path = tmp_path / "kb.tsv"
    path.write_text("traffic_light\tUsedFor\tcontrol_traffic\t1.0\n")
    kb = load_kb(path)
    (edge,) = kb.lookup("traffic light", "UsedFor")
    assert edge.tail == "control traffic"


def test_kb_empty(tmp_path):
    path = tmp_path / "kb.tsv"
    path.write_text("\n")
    with pytest.raises(EmptyKb):
        load_kb(path)
