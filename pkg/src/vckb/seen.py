"""Builders for directly-observable commonsense triples of one image.

Three sources feed the seen layer: existing scene-graph triples mapped
through part-of-speech rules, object co-occurrence pairs, and triples
extracted from region phrases whose heads are grounded back to object
boxes by overlap ratio.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import EmptyPhrase
from .geometry import overlap_ratio
from .ingest import GroundedObject, Region, SceneTriple, TripleKind
from .lexicon import Lexicon
from .phrase import (
    PhraseKind,
    PhraseParse,
    Pos,
    lemmatize,
    parse_region_phrase,
    simplify_np,
    tokenize_and_tag,
)
from .taxonomy import (
    CategoryPath,
    SEEN_CAPABLE_OF,
    SEEN_HAS_PROPERTY,
    SEEN_LOCATED_NEAR,
    SEEN_RECEIVES_ACTION,
    SEEN_RELATEDNESS,
    Visibility,
    Voice,
    pos_to_seen_category,
)

DEFAULT_TAU = 0.5

_COPULAS = frozenset({"is", "are", "was", "were", "am", "be", "been", "being"})


class Provenance(enum.Enum):
    SCENE_TRIPLE = "scene_triple"
    CO_OCCURRENCE = "co_occurrence"
    REGION_PHRASE = "region_phrase"
    KB_RETRIEVAL = "kb_retrieval"


@dataclass(frozen=True)
class CommonsenseTriple:
    """A grounded head, a taxonomy leaf, and a tail phrase."""

    head: GroundedObject
    category: CategoryPath
    tail: str
    provenance: Provenance
    score: float = 0.0  # KB edge weight; 0 for seen triples

    def __post_init__(self):
        if not self.tail or not self.tail.strip():
            raise ValueError("triple tail must be non-empty")
        unseen = self.category.visibility is Visibility.UNSEEN
        from_kb = self.provenance is Provenance.KB_RETRIEVAL
        if unseen != from_kb:
            raise ValueError(
                f"provenance {self.provenance.value} does not match "
                f"category {self.category.text}"
            )

    @property
    def key(self) -> tuple[str, str, str]:
        """Identity used for deduplication."""
        return (self.head.object_id, self.category.text, self.tail)


@dataclass
class BuildDiagnostics:
    """Skip counts accumulated over one pipeline run."""

    unparseable: int = 0
    no_match: int = 0
    ambiguous: int = 0
    not_mapped: int = 0
    tail_unmatched: int = 0

    def merge(self, other: "BuildDiagnostics") -> None:
        self.unparseable += other.unparseable
        self.no_match += other.no_match
        self.ambiguous += other.ambiguous
        self.not_mapped += other.not_mapped
        self.tail_unmatched += other.tail_unmatched

    def as_dict(self) -> dict[str, int]:
        return {
            "unparseable": self.unparseable,
            "no_match": self.no_match,
            "ambiguous": self.ambiguous,
            "not_mapped": self.not_mapped,
            "tail_unmatched": self.tail_unmatched,
        }


def _strip_copulas(words: list[str]) -> list[str]:
    return [w for w in words if w not in _COPULAS]


def _classify_word(word: str, lexicon: Lexicon):
    """Predicate-context tagging: returns (pos name, voice) or None.

    Unlike region-phrase tagging there is no noun default here; scene-graph
    relationship predicates that are none of the known classes are verbs
    ("play", "hold"), and attribute words that classify as nothing carry no
    mappable commonsense.
    """
    if word in lexicon.prepositions:
        return "PREP", None
    irregular = lexicon.irregular_participles.get(word)
    if irregular is not None:
        if word.endswith("ing"):
            return "VBG", Voice.ACTIVE
        return "VBN", Voice.PASSIVE
    if word in lexicon.adjectives:
        return "ADJ", None
    if word in lexicon.known_nouns:
        return None
    if word.endswith("ing") and len(word) >= 5:
        return "VBG", Voice.ACTIVE
    if word.endswith("ed") and len(word) >= 5:
        return "VBN", Voice.PASSIVE
    return None


def _simplify_name(name: str, lexicon: Lexicon) -> str:
    """Reduce an object name to its head-noun lemma ("yellow cars" -> "car")."""
    try:
        tokens = tokenize_and_tag(name, lexicon)
        return simplify_np(tokens)
    except Exception:
        return lemmatize(name, lexicon)


def map_scene_triple(
    triple: SceneTriple,
    objects_by_id: dict[str, GroundedObject],
    lexicon: Lexicon,
) -> CommonsenseTriple | None:
    """Map one scene-graph triple to a seen commonsense triple.

    Returns None (NotMapped) when the predicate carries no mappable
    part of speech.
    """
    head = objects_by_id[triple.subject_id]
    if triple.kind is TripleKind.ATTRIBUTE:
        words = _strip_copulas(
            (triple.predicate + " " + triple.object_slot).split()
        )
        if not words:
            return None
        classified = None
        for word in words:
            classified = _classify_word(word, lexicon)
            if classified is not None:
                break
        if classified is None:
            return None
        tail = " ".join(words)
    else:
        words = _strip_copulas(triple.predicate.split())
        if not words:
            return None
        classified = None
        for word in words:
            classified = _classify_word(word, lexicon)
            if classified is not None:
                break
        if classified is None:
            # Bare verb stems ("play", "hold") look like nouns to suffix
            # rules; relationship predicates default to active verbs.
            classified = ("VERB", Voice.ACTIVE)
        tail_object = objects_by_id[triple.object_slot]
        tail = " ".join(words) + " " + _simplify_name(tail_object.name, lexicon)
    pos_tag, voice = classified
    category = pos_to_seen_category(pos_tag, voice)
    if category is None:
        return None
    return CommonsenseTriple(
        head=head, category=category, tail=tail, provenance=Provenance.SCENE_TRIPLE
    )


def cooccurrence_triples(objects: list[GroundedObject]) -> list[CommonsenseTriple]:
    """Directed LocatedNear triples for every distinct-name object pair."""
    out = []
    for a in objects:
        emitted = set()
        for b in objects:
            if b is a or b.name == a.name or b.name in emitted:
                continue
            emitted.add(b.name)
            out.append(
                CommonsenseTriple(
                    head=a,
                    category=SEEN_LOCATED_NEAR,
                    tail=b.name,
                    provenance=Provenance.CO_OCCURRENCE,
                )
            )
    return out


def extract_region_triples(parse: PhraseParse) -> list[tuple[str, CategoryPath, str]]:
    """Apply the mapping rules to one parsed region phrase.

    The rules compose: a prepositional phrase with adjectives on its root
    noun yields both a spatial triple and one property triple per adjective.
    """
    root = parse.root_noun
    out: list[tuple[str, CategoryPath, str]] = []
    for modifier in parse.adjectives:
        out.append((root, SEEN_HAS_PROPERTY, modifier))
    if parse.np_participle is not None:
        out.append((root, SEEN_CAPABLE_OF, parse.np_participle))
    if parse.kind is PhraseKind.PP_PHRASE:
        out.append((root, SEEN_RELATEDNESS, f"{parse.prep} {parse.tail_head_noun}"))
    elif parse.kind is PhraseKind.VP_PHRASE:
        if parse.verb.pos is Pos.VBN:
            out.append((root, SEEN_RECEIVES_ACTION, parse.verb.complement))
        else:
            out.append((root, SEEN_CAPABLE_OF, parse.verb.complement))
    return out


class MatchFailure(enum.Enum):
    NO_MATCH = "no_match"
    AMBIGUOUS = "ambiguous"


def _candidates(region: Region, objects: list[GroundedObject], tau: float):
    return [
        obj for obj in objects if overlap_ratio(region.bbox, obj.bbox) >= tau
    ]


def localize(
    head_name: str,
    region: Region,
    objects: list[GroundedObject],
    tau: float,
    lexicon: Lexicon,
) -> GroundedObject | MatchFailure:
    """Ground a phrase head to the unique matching object inside the region.

    Candidates are the objects whose boxes are covered by the region box at
    ratio >= tau; among them the head must match exactly one object name
    (lemma comparison). Zero matches give NO_MATCH, several give AMBIGUOUS.
    """
    if not 0 < tau <= 1:
        raise ValueError(f"tau must be in (0, 1], got {tau}")
    matches = [
        obj
        for obj in _candidates(region, objects, tau)
        if lemmatize(obj.name, lexicon) == head_name
    ]
    if not matches:
        return MatchFailure.NO_MATCH
    if len(matches) > 1:
        return MatchFailure.AMBIGUOUS
    return matches[0]


def build_seen(
    objects: list[GroundedObject],
    triples: list[SceneTriple],
    regions: list[Region],
    lexicon: Lexicon,
    tau: float = DEFAULT_TAU,
    diagnostics: BuildDiagnostics | None = None,
) -> list[CommonsenseTriple]:
    """All seen triples of one image, deduplicated and deterministically ordered.

    Region-derived spatial tails stay textual even when their noun names no
    object in the region's candidate set; only head grounding can discard a
    triple. Duplicate triples keep the first provenance encountered, with
    sources processed in the order scene triples, co-occurrence, regions.
    """
    if diagnostics is None:
        diagnostics = BuildDiagnostics()
    objects_by_id = {obj.object_id: obj for obj in objects}

    collected: list[CommonsenseTriple] = []
    for triple in triples:
        mapped = map_scene_triple(triple, objects_by_id, lexicon)
        if mapped is None:
            diagnostics.not_mapped += 1
        else:
            collected.append(mapped)

    collected.extend(cooccurrence_triples(objects))

    for region in regions:
        try:
            tokens = tokenize_and_tag(region.phrase, lexicon)
        except EmptyPhrase:
            diagnostics.unparseable += 1
            continue
        parse = parse_region_phrase(tokens)
        if parse is None:
            diagnostics.unparseable += 1
            continue
        target = localize(parse.root_noun, region, objects, tau, lexicon)
        if target is MatchFailure.NO_MATCH:
            diagnostics.no_match += 1
            continue
        if target is MatchFailure.AMBIGUOUS:
            diagnostics.ambiguous += 1
            continue
        if parse.kind is PhraseKind.PP_PHRASE:
            candidate_names = {
                lemmatize(obj.name, lexicon)
                for obj in _candidates(region, objects, tau)
            }
            if parse.tail_head_noun not in candidate_names:
                diagnostics.tail_unmatched += 1
        for _, category, tail in extract_region_triples(parse):
            collected.append(
                CommonsenseTriple(
                    head=target,
                    category=category,
                    tail=tail,
                    provenance=Provenance.REGION_PHRASE,
                )
            )

    deduped: dict[tuple[str, str, str], CommonsenseTriple] = {}
    for triple in collected:
        deduped.setdefault(triple.key, triple)
    return sorted(deduped.values(), key=lambda t: t.key)
