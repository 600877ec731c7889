"""Tokenizer, part-of-speech tagger, and constrained phrase parser.

Region phrases in scene-graph corpora have a narrow linguistic range, so a
deterministic lexicon-plus-suffix tagger and a small grammar cover them
without any external NLP dependency. The grammar recognizes

    Phrase := NP
            | NP PREP NP                  (prepositional phrase)
            | NP VBG NP? (PREP NP)?       (active verbal phrase)
            | NP VBN (PREP NP)?           (passive verbal phrase)
    NP     := DET* (ADJ | VBG | VBN)* NOUN+

Anything else is rejected as unparseable rather than guessed. Pre-noun VBN
participles are treated like adjectives ("a striped shirt"); suffix tagging
makes many bare adjectives look like participles and rejecting those noun
phrases would lose far too much.
"""

from __future__ import annotations

import enum
import re
import weakref
from dataclasses import dataclass, field

from .errors import EmptyPhrase, NotAnNP
from .lexicon import Lexicon

_VOWELS = "aeiou"

# Copulas, conjunctions, and similar function words that carry no
# commonsense content; phrases containing them are skipped.
_FUNCTION_WORDS = frozenset(
    """
    is are was were am be been being and or nor but not as if so
    it he she they there who whom whose which while when where
    """.split()
)

_WORD_RE = re.compile(r"[^\W_]+(?:['-][^\W_]+)*", re.UNICODE)


class Pos(enum.Enum):
    DET = "DET"
    ADJ = "ADJ"
    NOUN = "NOUN"
    PREP = "PREP"
    VBG = "VBG"
    VBN = "VBN"
    OTHER = "OTHER"


@dataclass(frozen=True)
class TaggedToken:
    surface: str
    lemma: str
    pos: Pos


class PhraseKind(enum.Enum):
    NP = "NP"
    PP_PHRASE = "PP_PHRASE"
    VP_PHRASE = "VP_PHRASE"


@dataclass(frozen=True)
class VerbInfo:
    lemma: str
    surface: str
    pos: Pos  # VBG or VBN
    complement: str  # full simplified verbal text, e.g. "hit by a car"


@dataclass(frozen=True)
class PhraseParse:
    kind: PhraseKind
    root_noun: str
    adjectives: tuple[str, ...] = ()
    np_participle: str | None = None
    prep: str | None = None
    tail_head_noun: str | None = None
    verb: VerbInfo | None = None
    tokens: tuple[TaggedToken, ...] = field(default=(), compare=False)


def lemmatize(name: str, lexicon: Lexicon) -> str:
    """Singularize an object name; multiword names singularize their last word."""
    name = name.strip()
    if not name:
        return name
    words = name.split(" ")
    words[-1] = _singularize(words[-1], lexicon)
    return " ".join(words)


def _singularize(word: str, lexicon: Lexicon) -> str:
    irregular = lexicon.irregular_plurals.get(word)
    if irregular is not None:
        return irregular
    known = lexicon.known_nouns
    if word in known or not word.endswith("s") or len(word) <= 2:
        return word
    if word.endswith(("ss", "us", "is")):
        return word
    if word.endswith("ies") and len(word) > 4:
        if word[:-1] in known:
            return word[:-1]  # cookies, movies
        return word[:-3] + "y"
    if word.endswith("ves"):
        stem = word[:-3]
        for candidate in (stem + "f", stem + "fe", word[:-1]):
            if candidate in known:
                return candidate
        if word.endswith(("elves", "olves", "alves", "arves")):
            return stem + "f"
        if word.endswith("ives"):
            return stem + "fe"
        if word.endswith("eaves") and not word.endswith("deaves"):
            return stem + "f"
        return word[:-1]
    if word.endswith("oes"):
        if word[:-2] in known:
            return word[:-2]
        return word[:-1]
    if word.endswith(("ses", "xes", "zes", "ches", "shes")):
        stripped_es, stripped_s = word[:-2], word[:-1]
        if stripped_es in known:
            return stripped_es
        if stripped_s in known:
            return stripped_s
        # "houses" must keep its e; only sibilant stems drop the whole -es.
        if word.endswith("ses") and not word.endswith("sses"):
            return stripped_s
        return stripped_es
    return word[:-1]


def _vowel_groups(word: str) -> int:
    return len(re.findall(f"[{_VOWELS}]+", word))


def _deinflect(word: str, suffix_len: int) -> str:
    """Strip a participle suffix and repair the stem heuristically."""
    if word.endswith("ied") and suffix_len == 2:
        return word[:-3] + "y"
    stem = word[:-suffix_len]
    if (
        len(stem) >= 3
        and stem[-1] == stem[-2]
        and stem[-1] not in _VOWELS
        and stem[-1] not in "ls"
    ):
        return stem[:-1]
    if (
        len(stem) >= 2
        and _vowel_groups(stem) == 1
        and stem[-1] not in _VOWELS
        and stem[-1] not in "wxy"
        and stem[-2] in _VOWELS
        and (len(stem) == 2 or stem[-3] not in _VOWELS)
    ):
        return stem + "e"
    return stem


def _split_words(phrase: str) -> list[str]:
    words = _WORD_RE.findall(phrase.lower())
    cleaned = []
    for word in words:
        if word.endswith("'s"):
            word = word[:-2]
        elif word.endswith("s'"):
            word = word[:-1]
        if word:
            cleaned.append(word)
    return cleaned


_MULTIWORD_CACHE: "weakref.WeakKeyDictionary[Lexicon, list]" = weakref.WeakKeyDictionary()


def _multiword_entries(lexicon: Lexicon) -> list[tuple[tuple[str, ...], Pos]]:
    cached = _MULTIWORD_CACHE.get(lexicon)
    if cached is not None:
        return cached
    entries = []
    for prep in lexicon.prepositions:
        if " " in prep:
            entries.append((tuple(prep.split(" ")), Pos.PREP))
    for noun in lexicon.known_nouns:
        if " " in noun:
            entries.append((tuple(noun.split(" ")), Pos.NOUN))
    entries.sort(key=lambda item: (-len(item[0]), item[0]))
    _MULTIWORD_CACHE[lexicon] = entries
    return entries


def _merge_multiword(words: list[str], lexicon: Lexicon):
    """Join multiword prepositions and known compounds into single tokens."""
    entries = _multiword_entries(lexicon)
    merged: list[str] = []
    forced: list[Pos | None] = []
    i = 0
    while i < len(words):
        hit = None
        for parts, pos in entries:
            n = len(parts)
            if i + n > len(words):
                continue
            window = words[i : i + n]
            if pos is Pos.PREP and tuple(window) == parts:
                hit = (n, pos)
                break
            if pos is Pos.NOUN:
                candidate = list(window)
                candidate[-1] = _singularize(candidate[-1], lexicon)
                if tuple(candidate) == parts:
                    hit = (n, pos)
                    break
        if hit is None:
            merged.append(words[i])
            forced.append(None)
            i += 1
        else:
            n, pos = hit
            merged.append(" ".join(words[i : i + n]))
            forced.append(pos)
            i += n
    return merged, forced


def _provisional_pos(word: str, lexicon: Lexicon) -> Pos:
    if word in _FUNCTION_WORDS:
        return Pos.OTHER
    if word in lexicon.determiners or word.isdigit():
        return Pos.DET
    if word in lexicon.prepositions:
        return Pos.PREP
    if word in lexicon.irregular_participles:
        return Pos.VBG if word.endswith("ing") else Pos.VBN
    # Adjective/noun ambiguity ("glass", "orange") is decided positionally
    # later; nouns like "building" must beat the -ing suffix rule.
    if word in lexicon.adjectives:
        return Pos.ADJ
    if word in lexicon.known_nouns:
        return Pos.NOUN
    if word.endswith("ing") and len(word) >= 5:
        return Pos.VBG
    if word.endswith("ed") and len(word) >= 5:
        return Pos.VBN
    return Pos.NOUN


def _lemma_for(word: str, pos: Pos, lexicon: Lexicon) -> str:
    if pos is Pos.VBG or pos is Pos.VBN:
        irregular = lexicon.irregular_participles.get(word)
        if irregular is not None:
            return irregular
        return _deinflect(word, 3 if pos is Pos.VBG else 2)
    if pos is Pos.NOUN:
        return lemmatize(word, lexicon)
    return word


def tokenize_and_tag(phrase: str, lexicon: Lexicon) -> list[TaggedToken]:
    """Lowercase, strip punctuation, tag, and lemmatize a phrase.

    Raises EmptyPhrase when nothing tokenizable remains.
    """
    words = _split_words(phrase)
    if not words:
        raise EmptyPhrase(f"no tokens in phrase: {phrase!r}")
    words, forced = _merge_multiword(words, lexicon)
    tags = [
        forced[i] if forced[i] is not None else _provisional_pos(word, lexicon)
        for i, word in enumerate(words)
    ]
    # Adjective/noun ambiguity is positional: a word from the adjective set
    # is an adjective only when something nominal can follow it.
    for i in range(len(words) - 1, -1, -1):
        if tags[i] is Pos.ADJ:
            if i == len(words) - 1 or tags[i + 1] not in (
                Pos.ADJ,
                Pos.NOUN,
                Pos.VBG,
                Pos.VBN,
            ):
                tags[i] = Pos.NOUN
    return [
        TaggedToken(surface=word, lemma=_lemma_for(word, tag, lexicon), pos=tag)
        for word, tag in zip(words, tags)
    ]


@dataclass(frozen=True)
class _NPSpan:
    start: int
    end: int
    det_surface: str | None
    properties: tuple[str, ...]  # ADJ lemmas and pre-noun VBN surfaces
    vbg_lemmas: tuple[str, ...]
    head: str


def _parse_np(tokens: list[TaggedToken], start: int) -> _NPSpan | None:
    i = start
    det_surface = None
    while i < len(tokens) and tokens[i].pos is Pos.DET:
        if det_surface is None:
            det_surface = tokens[i].surface
        i += 1
    properties: list[str] = []
    vbg_lemmas: list[str] = []
    while i < len(tokens) and tokens[i].pos in (Pos.ADJ, Pos.VBG, Pos.VBN):
        token = tokens[i]
        if token.pos is Pos.ADJ:
            properties.append(token.lemma)
        elif token.pos is Pos.VBN:
            properties.append(token.surface)
        else:
            vbg_lemmas.append(token.lemma)
        i += 1
    nouns = []
    while i < len(tokens) and tokens[i].pos is Pos.NOUN:
        nouns.append(tokens[i])
        i += 1
    if not nouns:
        return None
    return _NPSpan(
        start=start,
        end=i,
        det_surface=det_surface,
        properties=tuple(properties),
        vbg_lemmas=tuple(vbg_lemmas),
        head=nouns[-1].lemma,
    )


def simplify_np(tokens: list[TaggedToken]) -> str:
    """Reduce a noun-phrase span to its head noun lemma.

    "the yellow car" simplifies to "car". Raises NotAnNP when the span is
    not a single noun phrase.
    """
    span = _parse_np(list(tokens), 0)
    if span is None or span.end != len(tokens):
        raise NotAnNP(" ".join(t.surface for t in tokens))
    return span.head


def parse_region_phrase(tokens: list[TaggedToken]) -> PhraseParse | None:
    """Parse tagged tokens against the region-phrase grammar.

    Returns None for token sequences outside the grammar; callers count
    those in their diagnostics and skip the phrase.
    """
    tokens = list(tokens)
    root = _parse_np(tokens, 0)
    if root is None:
        return None
    base = dict(
        root_noun=root.head,
        adjectives=root.properties,
        np_participle=root.vbg_lemmas[0] if root.vbg_lemmas else None,
        tokens=tuple(tokens),
    )
    i = root.end
    if i == len(tokens):
        return PhraseParse(kind=PhraseKind.NP, **base)
    head = tokens[i]
    if head.pos is Pos.PREP:
        tail = _parse_np(tokens, i + 1)
        if tail is None or tail.end != len(tokens):
            return None
        return PhraseParse(
            kind=PhraseKind.PP_PHRASE,
            prep=head.surface,
            tail_head_noun=tail.head,
            **base,
        )
    if head.pos is Pos.VBG:
        parts = [head.surface]
        j = i + 1
        if j < len(tokens) and tokens[j].pos is not Pos.PREP:
            obj = _parse_np(tokens, j)
            if obj is None:
                return None
            parts.append(obj.head)
            j = obj.end
        if j < len(tokens):
            if tokens[j].pos is not Pos.PREP:
                return None
            pp = _parse_np(tokens, j + 1)
            if pp is None or pp.end != len(tokens):
                return None
            parts.extend([tokens[j].surface, pp.head])
            j = pp.end
        if j != len(tokens):
            return None
        return PhraseParse(
            kind=PhraseKind.VP_PHRASE,
            verb=VerbInfo(
                lemma=head.lemma,
                surface=head.surface,
                pos=Pos.VBG,
                complement=" ".join(parts),
            ),
            **base,
        )
    if head.pos is Pos.VBN:
        parts = [head.surface]
        j = i + 1
        if j < len(tokens):
            if tokens[j].pos is not Pos.PREP:
                return None
            agent = _parse_np(tokens, j + 1)
            if agent is None or agent.end != len(tokens):
                return None
            # Passive agents keep their determiner: "hit by a car".
            parts.append(tokens[j].surface)
            if agent.det_surface is not None:
                parts.append(agent.det_surface)
            parts.append(agent.head)
            j = agent.end
        if j != len(tokens):
            return None
        return PhraseParse(
            kind=PhraseKind.VP_PHRASE,
            verb=VerbInfo(
                lemma=head.lemma,
                surface=head.surface,
                pos=Pos.VBN,
                complement=" ".join(parts),
            ),
            **base,
        )
    return None
