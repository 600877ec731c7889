import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vckb import (
    BBox,
    MatchFailure,
    Provenance,
    Region,
    SceneTriple,
    TripleKind,
    Visibility,
    build_seen,
    cooccurrence_triples,
    extract_region_triples,
    localize,
    map_scene_triple,
    parse_region_phrase,
    tokenize_and_tag,
)
from vckb.seen import BuildDiagnostics

from conftest import make_object


def attribute(subject, text, predicate="is"):
    return SceneTriple(
        image_id="img1",
        subject_id=subject,
        predicate=predicate,
        object_slot=text,
        kind=TripleKind.ATTRIBUTE,
    )


def relationship(subject, predicate, obj):
    return SceneTriple(
        image_id="img1",
        subject_id=subject,
        predicate=predicate,
        object_slot=obj,
        kind=TripleKind.RELATIONSHIP,
    )


@pytest.fixture
def two_objects():
    man = make_object("o1", name="man", box=(10, 10, 50, 100))
    car = make_object("o2", name="car", box=(200, 150, 120, 80))
    return man, car


def index(*objects):
    return {obj.object_id: obj for obj in objects}


class TestMapSceneTriple:
    def test_attribute_adjective(self, lexicon, two_objects):
        man, car = two_objects
        mapped = map_scene_triple(attribute("o1", "tall"), index(man, car), lexicon)
        assert mapped.category.text == "/Seen/Property/HasProperty"
        assert mapped.tail == "tall"
        assert mapped.head is man
        assert mapped.provenance is Provenance.SCENE_TRIPLE

    def test_relationship_preposition(self, lexicon, two_objects):
        man, car = two_objects
        road = make_object("o3", name="road", box=(0, 300, 600, 100))
        mapped = map_scene_triple(
            relationship("o1", "on", "o3"), index(man, car, road), lexicon
        )
        assert mapped.category.text == "/Seen/Space/Relatedness"
        assert mapped.tail == "on road"

    def test_relationship_bare_verb(self, lexicon, two_objects):
        man, car = two_objects
        board = make_object("o4", name="skateboard", box=(30, 100, 40, 20))
        mapped = map_scene_triple(
            relationship("o1", "play", "o4"), index(man, car, board), lexicon
        )
        assert mapped.category.text == "/Seen/Action/CapableOf"
        assert mapped.tail == "play skateboard"

    def test_relationship_participle_passive(self, lexicon, two_objects):
        man, car = two_objects
        mapped = map_scene_triple(
            relationship("o2", "parked", "o1"), index(man, car), lexicon
        )
        assert mapped.category.text == "/Seen/Action/ReceivesAction"

    def test_attribute_vbg(self, lexicon, two_objects):
        man, car = two_objects
        mapped = map_scene_triple(attribute("o1", "running"), index(man, car), lexicon)
        assert mapped.category.text == "/Seen/Action/CapableOf"
        assert mapped.tail == "running"

    def test_attribute_noun_not_mapped(self, lexicon, two_objects):
        man, car = two_objects
        assert map_scene_triple(attribute("o1", "person"), index(man, car), lexicon) is None

    def test_tail_object_name_simplified(self, lexicon):
        man = make_object("o1", name="man")
        cars = make_object("o2", name="yellow cars", box=(20, 0, 30, 30))
        mapped = map_scene_triple(relationship("o1", "behind", "o2"), index(man, cars), lexicon)
        assert mapped.tail == "behind car"


class TestCooccurrence:
    def test_pair_both_directions(self):
        man = make_object("o1", name="man")
        car = make_object("o2", name="car", box=(20, 0, 5, 5))
        triples = cooccurrence_triples([man, car])
        assert {(t.head.object_id, t.tail) for t in triples} == {
            ("o1", "car"),
            ("o2", "man"),
        }
        assert all(t.category.text == "/Seen/Space/LocatedNear" for t in triples)

    def test_single_object_empty(self):
        assert cooccurrence_triples([make_object()]) == []

    def test_three_distinct_names_six_triples(self):
        objects = [
            make_object(f"o{i}", name=name, box=(i * 20, 0, 5, 5))
            for i, name in enumerate(["man", "car", "dog"], start=1)
        ]
        triples = cooccurrence_triples(objects)
        # Brute-force enumeration of ordered pairs.
        expected = {
            (a.object_id, b.name)
            for a in objects
            for b in objects
            if a is not b and a.name != b.name
        }
        assert len(triples) == 6
        assert {(t.head.object_id, t.tail) for t in triples} == expected

    def test_same_name_pairs_suppressed(self):
        men = [make_object(f"o{i}", name="man", box=(i * 20, 0, 5, 5)) for i in (1, 2)]
        assert cooccurrence_triples(men) == []

    @given(st.integers(0, 20))
    @settings(max_examples=50)
    def test_count_is_n_times_n_minus_one(self, n):
        objects = [
            make_object(f"o{i}", name=f"name{i}", box=(i * 10, 0, 5, 5))
            for i in range(n)
        ]
        assert len(cooccurrence_triples(objects)) == n * (n - 1)


class TestExtractRegionTriples:
    def extract(self, lexicon, phrase):
        parse = parse_region_phrase(tokenize_and_tag(phrase, lexicon))
        return {(h, c.text, t) for h, c, t in extract_region_triples(parse)}

    def test_pp_with_adjective_composes(self, lexicon):
        assert self.extract(lexicon, "a thin man behind the yellow car") == {
            ("man", "/Seen/Property/HasProperty", "thin"),
            ("man", "/Seen/Space/Relatedness", "behind car"),
        }

    def test_active_vp(self, lexicon):
        assert self.extract(lexicon, "car driving on the road") == {
            ("car", "/Seen/Action/CapableOf", "driving on road"),
        }

    def test_np_participle(self, lexicon):
        assert self.extract(lexicon, "a running man") == {
            ("man", "/Seen/Action/CapableOf", "run"),
        }


class TestLocalize:
    def fixture_objects(self):
        return [
            make_object("o1", name="man", box=(10, 10, 50, 100)),
            make_object("o2", name="car", box=(300, 200, 100, 60)),
            make_object("o3", name="tree", box=(500, 50, 60, 120)),
        ]

    def test_unique_match(self, lexicon):
        region = Region(image_id="img1", phrase="a man", bbox=BBox(0, 0, 100, 150))
        found = localize("man", region, self.fixture_objects(), 0.5, lexicon)
        assert found.object_id == "o1"

    def test_ambiguous(self, lexicon):
        objects = self.fixture_objects() + [
            make_object("o4", name="man", box=(70, 10, 50, 100))
        ]
        region = Region(image_id="img1", phrase="a man", bbox=BBox(0, 0, 640, 480))
        assert localize("man", region, objects, 0.5, lexicon) is MatchFailure.AMBIGUOUS

    def test_no_match(self, lexicon):
        region = Region(image_id="img1", phrase="a dog", bbox=BBox(0, 0, 100, 150))
        assert (
            localize("dog", region, self.fixture_objects(), 0.5, lexicon)
            is MatchFailure.NO_MATCH
        )

    def test_below_threshold_is_no_match(self, lexicon):
        # Object only half covered by the region at tau=0.9.
        region = Region(image_id="img1", phrase="a man", bbox=BBox(0, 0, 35, 110))
        assert (
            localize("man", region, self.fixture_objects(), 0.9, lexicon)
            is MatchFailure.NO_MATCH
        )

    def test_plural_object_name_matches_lemma(self, lexicon):
        objects = [make_object("o1", name="cars", box=(0, 0, 50, 50))]
        region = Region(image_id="img1", phrase="a car", bbox=BBox(0, 0, 60, 60))
        found = localize("car", region, objects, 0.5, lexicon)
        assert found.object_id == "o1"

    def test_invalid_tau_rejected(self, lexicon):
        region = Region(image_id="img1", phrase="a man", bbox=BBox(0, 0, 10, 10))
        with pytest.raises(ValueError):
            localize("man", region, [], 0.0, lexicon)


class TestBuildSeen:
    def test_toy_image_exact_triples(self, lexicon):
        """Hand-applied rules on a two-object toy image."""
        man = make_object("o1", name="man", box=(10, 10, 50, 100))
        car = make_object("o2", name="car", box=(200, 150, 120, 80))
        triples = [attribute("o1", "tall")]
        regions = [
            Region(
                image_id="img1",
                phrase="a thin running man",
                bbox=BBox(0, 0, 70, 120),
            )
        ]
        result = build_seen([man, car], triples, regions, lexicon)
        assert [(t.head.object_id, t.category.text, t.tail) for t in result] == [
            ("o1", "/Seen/Action/CapableOf", "run"),
            ("o1", "/Seen/Property/HasProperty", "tall"),
            ("o1", "/Seen/Property/HasProperty", "thin"),
            ("o1", "/Seen/Space/LocatedNear", "car"),
            ("o2", "/Seen/Space/LocatedNear", "man"),
        ]

    def test_zero_objects_empty(self, lexicon):
        assert build_seen([], [], [], lexicon) == []

    def test_all_seen_and_grounded(self, lexicon):
        man = make_object("o1", name="man", box=(10, 10, 50, 100))
        car = make_object("o2", name="car", box=(200, 150, 120, 80))
        result = build_seen(
            [man, car],
            [attribute("o1", "tall"), relationship("o1", "on", "o2")],
            [],
            lexicon,
        )
        for triple in result:
            assert triple.category.visibility is Visibility.SEEN
            assert triple.head.image_id == "img1"
            assert triple.tail.strip()

    def test_duplicates_keep_first_provenance(self, lexicon):
        man = make_object("o1", name="man", box=(0, 0, 50, 100))
        region = Region(image_id="img1", phrase="a tall man", bbox=BBox(0, 0, 60, 110))
        result = build_seen([man], [attribute("o1", "tall")], [region], lexicon)
        (triple,) = result
        assert triple.tail == "tall"
        assert triple.provenance is Provenance.SCENE_TRIPLE

    def test_deterministic(self, lexicon):
        man = make_object("o1", name="man", box=(10, 10, 50, 100))
        car = make_object("o2", name="car", box=(200, 150, 120, 80))
        args = (
            [man, car],
            [attribute("o1", "tall"), relationship("o1", "on", "o2")],
            [Region(image_id="img1", phrase="a thin man", bbox=BBox(0, 0, 70, 120))],
        )
        assert build_seen(*args, lexicon) == build_seen(*args, lexicon)

    def test_diagnostics_counts(self, lexicon):
        man = make_object("o1", name="man", box=(10, 10, 50, 100))
        diagnostics = BuildDiagnostics()
        build_seen(
            [man],
            [attribute("o1", "person")],  # noun attribute: not mapped
            [
                Region(image_id="img1", phrase="the the the", bbox=BBox(0, 0, 10, 10)),
                Region(image_id="img1", phrase="a dog", bbox=BBox(0, 0, 640, 480)),
            ],
            lexicon,
            diagnostics=diagnostics,
        )
        assert diagnostics.not_mapped == 1
        assert diagnostics.unparseable == 1
        assert diagnostics.no_match == 1
