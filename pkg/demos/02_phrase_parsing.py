"""
Parsing region phrases
======================

Region phrases are short and regular, so a lexicon-driven tagger plus a
four-pattern grammar cover them. Each parse maps to commonsense triples.
"""

from vckb import (
    Lexicon,
    extract_region_triples,
    parse_region_phrase,
    tokenize_and_tag,
)

lexicon = Lexicon.default()

phrases = [
    "a thin man behind the yellow car",   # prepositional phrase
    "man hit by a yellow car",            # passive verbal phrase
    "car driving on the road",            # active verbal phrase
    "a small car",                        # noun phrase with adjective
    "a running man",                      # noun phrase with participle
    "the traffic lights above the intersection",  # compound noun head
    "man and woman",                      # outside the grammar: skipped
]

for phrase in phrases:
    tokens = tokenize_and_tag(phrase, lexicon)
    print(f"\n{phrase!r}")
    print("  tags:", " ".join(f"{t.surface}/{t.pos.value}" for t in tokens))
    parse = parse_region_phrase(tokens)
    if parse is None:
        print("  -> unparseable (skipped, counted in diagnostics)")
        continue
    for head, category, tail in extract_region_triples(parse):
        print(f"  -> ({head}, {category.text}, {tail})")
