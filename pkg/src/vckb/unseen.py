"""Builders for inferred (unseen) commonsense triples of one object.

Object names are expanded into synsets of surface and lemma variants,
looked up in the external KB over the six admitted relations, deduplicated
against the object's seen triples, and finally sorted so that tails
mentioning other objects of the same image rank first.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EmptyPhrase
from .ingest import GroundedObject, KbIndex
from .lexicon import Lexicon
from .phrase import lemmatize, tokenize_and_tag
from .seen import CommonsenseTriple, Provenance
from .taxonomy import UNSEEN_KB_RELATIONS, kb_relation_to_category


@dataclass(frozen=True)
class Synset:
    """Lookup key variants for one object name, surface form first."""

    object_id: str
    forms: tuple[str, ...]

    def __post_init__(self):
        if not self.forms:
            raise ValueError("synset needs at least one form")


def make_synset(obj: GroundedObject, lexicon: Lexicon) -> Synset:
    """Surface name, lemma, and their space/underscore variants, deduplicated."""
    surface = obj.name
    lemma = lemmatize(surface, lexicon)
    forms: list[str] = []
    for form in (surface, lemma, surface.replace(" ", "_"), lemma.replace(" ", "_")):
        if form and form not in forms:
            forms.append(form)
    return Synset(object_id=obj.object_id, forms=tuple(forms))


def retrieve_unseen(
    obj: GroundedObject, kb: KbIndex, lexicon: Lexicon
) -> list[CommonsenseTriple]:
    """All KB triples for the object's synset over the six unseen relations.

    Duplicates on (category, tail) keep the highest edge weight. Output is
    ordered by (category, tail); callers re-rank with object_aware_sort.
    """
    synset = make_synset(obj, lexicon)
    best: dict[tuple[str, str], CommonsenseTriple] = {}
    for relation in UNSEEN_KB_RELATIONS:
        category = kb_relation_to_category(relation)
        for form in synset.forms:
            for edge in kb.lookup(form, relation):
                key = (category.text, edge.tail)
                current = best.get(key)
                if current is None or edge.weight > current.score:
                    best[key] = CommonsenseTriple(
                        head=obj,
                        category=category,
                        tail=edge.tail,
                        provenance=Provenance.KB_RETRIEVAL,
                        score=edge.weight,
                    )
    return [best[key] for key in sorted(best)]


def dedup_against_seen(
    unseen: list[CommonsenseTriple], seen: list[CommonsenseTriple]
) -> list[CommonsenseTriple]:
    """Drop unseen triples whose (relation, tail) duplicates a seen triple."""
    seen_keys = {(t.category.relation, t.tail) for t in seen}
    return [t for t in unseen if (t.category.relation, t.tail) not in seen_keys]


def _tail_lemmas(tail: str, lexicon: Lexicon) -> set[str]:
    try:
        tokens = tokenize_and_tag(tail, lexicon)
    except EmptyPhrase:
        return set()
    return {token.lemma for token in tokens}


def object_aware_sort(
    triples: list[CommonsenseTriple],
    image_lemmas: set[str],
    lexicon: Lexicon,
) -> list[CommonsenseTriple]:
    """Rank triples whose tails mention another image object first.

    Stable sort on (mentions-an-image-object DESC, score DESC, tail ASC);
    the head object's own lemma never counts as a mention.
    """
    if not triples:
        return []
    head_lemma = lemmatize(triples[0].head.name, lexicon)
    relevant = image_lemmas - {head_lemma}

    def sort_key(triple: CommonsenseTriple):
        mentions = bool(_tail_lemmas(triple.tail, lexicon) & relevant)
        return (0 if mentions else 1, -triple.score, triple.tail)

    return sorted(triples, key=sort_key)


def image_object_lemmas(
    objects: list[GroundedObject], lexicon: Lexicon
) -> set[str]:
    """Lemmatized names of all objects in one image."""
    return {lemmatize(obj.name, lexicon) for obj in objects}


def build_unseen(
    objects: list[GroundedObject],
    seen_by_object: dict[str, list[CommonsenseTriple]],
    kb: KbIndex,
    lexicon: Lexicon,
    dedup_seen: bool = True,
) -> dict[str, list[CommonsenseTriple]]:
    """Sorted unseen triples per object id for one image."""
    lemmas = image_object_lemmas(objects, lexicon)
    out: dict[str, list[CommonsenseTriple]] = {}
    for obj in objects:
        triples = retrieve_unseen(obj, kb, lexicon)
        if dedup_seen:
            triples = dedup_against_seen(triples, seen_by_object.get(obj.object_id, []))
        out[obj.object_id] = object_aware_sort(triples, lemmas, lexicon)
    return out
