"""POS taggers for the sentence-selection stage.

Two implementations of the same small interface: one reads tags embedded in
the corpus records, one is a self-contained lexicon-and-suffix heuristic.
The selection stage only cares about closed-class tags and adjectives, so
the heuristic tagger aims for those categories rather than full accuracy.
"""

from __future__ import annotations

from typing import Protocol, Sequence

from .errors import InputError, InvariantError
from .model import Document, first_char_is_upper

ADJECTIVE_TAGS = frozenset({"JJ", "JJR", "JJS"})

_CLOSED_CLASS = {
    "DT": (
        "the a an this that these those each every no some any all both "
        "either neither another such"
    ),
    "IN": (
        "of in on at by for with from into during including until against "
        "among throughout despite towards toward upon about over after "
        "before between under without within along across behind beyond "
        "near since through per off above below around amid beside besides "
        "past via unless although because while whereas if though than as"
    ),
    "PRP": (
        "i you he she it we they me him her us them himself herself itself "
        "myself yourself ourselves themselves"
    ),
    "PRP$": "my your his its our their hers ours theirs mine yours",
    "CC": "and or but nor yet plus",
    "WDT": "which whichever whatever",
    "WP": "who whom what whoever whomever",
    "WRB": "when where why how whenever wherever however",
    "TO": "to",
    "MD": "can could may might must shall should will would",
    "EX": "there",
    "RB": (
        "not never always often also too very quite rather almost already "
        "still just only even again once twice soon now then here nearly "
        "mostly largely recently previously formerly later early"
    ),
    "VBZ": "is has does",
    "VBP": "are have do am",
    "VBD": "was were did had",
    "VB": "be",
    "VBN": "been",
    "VBG": "being",
}

_WORD_TAGS: dict[str, str] = {}
for _tag, _words in _CLOSED_CLASS.items():
    for _word in _words.split():
        _WORD_TAGS.setdefault(_word, _tag)

_JJ_SUFFIXES = (
    "ous", "ful", "ive", "ish", "able", "ible", "less", "ary",
    "ical", "ian", "ese", "ern",
)


class PosTagger(Protocol):
    def tags(self, doc: Document, sentence_index: int) -> Sequence[str]:
        """Tags aligned one-to-one with the sentence's tokens."""


class EmbeddedTagger:
    """Pass-through for corpora whose records carry a ``pos`` field."""

    def tags(self, doc: Document, sentence_index: int) -> Sequence[str]:
        if doc.pos is None:
            raise InputError(
                f"document {doc.id!r} carries no embedded POS tags; "
                "use the builtin tagger or retag the corpus"
            )
        tags = doc.pos[sentence_index]
        if len(tags) != len(doc.sentences[sentence_index]):
            raise InvariantError(f"document {doc.id!r}: POS length mismatch")
        return tags


class HeuristicTagger:
    """Deterministic lexicon-plus-suffix tagger.

    Closed-class words from a fixed lexicon, numbers as CD, punctuation as
    itself, a few adjective and adverb suffix rules, proper-noun default for
    capitalized words, NN otherwise.
    """

    def tags(self, doc: Document, sentence_index: int) -> list[str]:
        return [self.tag_token(t) for t in doc.sentences[sentence_index]]

    @staticmethod
    def tag_token(token: str) -> str:
        if not token:
            return "SYM"
        folded = token.casefold()
        tag = _WORD_TAGS.get(folded)
        if tag is not None:
            return tag
        if not any(ch.isalnum() for ch in token):
            return token if token in {".", ",", ":", "(", ")", "``", "''"} else "SYM"
        if token[0].isdigit():
            return "CD"
        if folded.endswith("ly") and len(folded) > 3:
            return "RB"
        for suffix in _JJ_SUFFIXES:
            if folded.endswith(suffix) and len(folded) > len(suffix) + 1:
                return "JJ"
        if folded.endswith("iest") and len(folded) > 5:
            return "JJS"
        if folded.endswith("ing") and len(folded) > 4:
            return "VBG"
        if folded.endswith("ed") and len(folded) > 3:
            return "VBD"
        if first_char_is_upper(token):
            return "NNP"
        if folded.endswith("s") and len(folded) > 3:
            return "NNS"
        return "NN"


def make_tagger(kind: str) -> PosTagger:
    if kind == "embedded":
        return EmbeddedTagger()
    if kind == "builtin":
        return HeuristicTagger()
    raise InputError(f"unknown POS tagger {kind!r}; expected 'embedded' or 'builtin'")
