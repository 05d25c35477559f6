"""Shared data model: documents with token-span anchors, the type hierarchy,
the knowledge base, and the case utilities every stage relies on.

All types are immutable values after construction and safe to share across
worker processes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import InvariantError

BUCKETS = ("PER", "LOC", "ORG", "MISC", "NONE")


def fold(token: str) -> str:
    """Case-fold one token for case-insensitive comparison."""
    return token.casefold()


def fold_tokens(tokens: Iterable[str]) -> tuple[str, ...]:
    return tuple(t.casefold() for t in tokens)


def is_lowercase_phrase(tokens: Iterable[str]) -> bool:
    """True iff no token contains an uppercase character."""
    return not any(ch.isupper() for tok in tokens for ch in tok)


def first_char_is_upper(token: str) -> bool:
    return bool(token) and token[0].isupper()


def ci_equal(a: Iterable[str], b: Iterable[str]) -> bool:
    """True iff the two token sequences are equal after case folding."""
    a = tuple(a)
    b = tuple(b)
    return len(a) == len(b) and all(x.casefold() == y.casefold() for x, y in zip(a, b))


@dataclass(frozen=True, slots=True)
class TokenSpan:
    """Half-open token range [start, end) inside one sentence."""

    sentence_index: int
    start: int
    end: int

    def __post_init__(self):
        if self.sentence_index < 0:
            raise InvariantError(f"negative sentence index {self.sentence_index}")
        if not 0 <= self.start < self.end:
            raise InvariantError(f"bad span [{self.start}, {self.end})")

    def overlaps(self, other: "TokenSpan") -> bool:
        return (
            self.sentence_index == other.sentence_index
            and self.start < other.end
            and other.start < self.end
        )


@dataclass(frozen=True, slots=True)
class Anchor:
    """A hyperlink: a token span pointing at a knowledge-base target."""

    span: TokenSpan
    target: str
    surface: tuple[str, ...]

    def __post_init__(self):
        if not self.target:
            raise InvariantError("anchor with empty target")
        if len(self.surface) != self.span.end - self.span.start:
            raise InvariantError("anchor surface length does not match its span")


@dataclass(frozen=True, slots=True)
class Document:
    """Tokenized sentences plus hyperlink anchors over them.

    ``pos`` optionally carries one POS tag per token (same shape as
    ``sentences``) for corpora that were tagged upstream.
    """

    id: str
    sentences: tuple[tuple[str, ...], ...]
    anchors: tuple[Anchor, ...]
    self_entity: str | None = None
    pos: tuple[tuple[str, ...], ...] | None = None

    def __post_init__(self):
        for anchor in self.anchors:
            span = anchor.span
            if span.sentence_index >= len(self.sentences):
                raise InvariantError(
                    f"doc {self.id!r}: anchor sentence {span.sentence_index} out of range"
                )
            sentence = self.sentences[span.sentence_index]
            if span.end > len(sentence):
                raise InvariantError(
                    f"doc {self.id!r}: span [{span.start}, {span.end}) out of bounds "
                    f"for sentence {span.sentence_index} of length {len(sentence)}"
                )
            if anchor.surface != sentence[span.start : span.end]:
                raise InvariantError(
                    f"doc {self.id!r}: anchor surface {anchor.surface!r} does not match tokens"
                )
        by_sentence: dict[int, list[Anchor]] = {}
        for anchor in self.anchors:
            by_sentence.setdefault(anchor.span.sentence_index, []).append(anchor)
        for idx, group in by_sentence.items():
            group.sort(key=lambda a: a.span.start)
            for left, right in zip(group, group[1:]):
                if left.span.end > right.span.start:
                    raise InvariantError(
                        f"doc {self.id!r}: overlapping anchors in sentence {idx}"
                    )
        if self.pos is not None:
            if len(self.pos) != len(self.sentences):
                raise InvariantError(f"doc {self.id!r}: pos row count mismatch")
            for tags, sentence in zip(self.pos, self.sentences):
                if len(tags) != len(sentence):
                    raise InvariantError(f"doc {self.id!r}: pos length mismatch")

    def anchors_in_sentence(self, index: int) -> tuple[Anchor, ...]:
        return tuple(a for a in self.anchors if a.span.sentence_index == index)


def make_anchor(sentences: tuple[tuple[str, ...], ...], sentence_index: int,
                start: int, end: int, target: str) -> Anchor:
    """Build an anchor whose surface is copied from the sentence tokens."""
    span = TokenSpan(sentence_index, start, end)
    if sentence_index >= len(sentences) or end > len(sentences[sentence_index]):
        raise InvariantError(f"span out of bounds: sentence {sentence_index}, [{start}, {end})")
    return Anchor(span=span, target=target, surface=sentences[sentence_index][start:end])


@dataclass(frozen=True, slots=True)
class TypeHierarchy:
    """Prefix-closed set of slash-delimited type paths."""

    paths: frozenset[str]

    def __post_init__(self):
        for path in self.paths:
            validate_type_path(path)
            parent = parent_path(path)
            if parent and parent not in self.paths:
                raise InvariantError(f"hierarchy not prefix-closed: {path!r} lacks {parent!r}")

    def __contains__(self, path: str) -> bool:
        return path in self.paths

    def __len__(self) -> int:
        return len(self.paths)

    def top_level(self) -> frozenset[str]:
        return frozenset(p for p in self.paths if parent_path(p) is None)

    @classmethod
    def from_paths(cls, paths: Iterable[str]) -> "TypeHierarchy":
        """Build a hierarchy, adding any missing prefixes.

        Returns the hierarchy; use :func:`close_paths` if the caller needs to
        know which prefixes were added.
        """
        closed, _ = close_paths(paths)
        return cls(frozenset(closed))


def validate_type_path(path: str) -> None:
    if not path.startswith("/") or path.endswith("/") or "//" in path or path == "/":
        raise InvariantError(f"malformed type path {path!r}")


def parent_path(path: str) -> str | None:
    """Immediate ancestor of a type path, or None for a top-level path."""
    cut = path.rfind("/")
    return path[:cut] if cut > 0 else None


def close_paths(paths: Iterable[str]) -> tuple[set[str], set[str]]:
    """Prefix-close a path set; returns (closed set, auto-added prefixes)."""
    closed: set[str] = set()
    added: set[str] = set()
    for path in paths:
        validate_type_path(path)
        closed.add(path)
    for path in list(closed):
        parent = parent_path(path)
        while parent is not None and parent not in closed:
            closed.add(parent)
            added.add(parent)
            parent = parent_path(parent)
    return closed, added


@dataclass(frozen=True, slots=True)
class KnowledgeBase:
    """Entity types (already in hierarchy vocabulary) and candidate names."""

    types: Mapping[str, frozenset[str]] = field(default_factory=dict)
    aliases: Mapping[str, tuple[tuple[str, ...], ...]] = field(default_factory=dict)

    def __post_init__(self):
        for entity, names in self.aliases.items():
            seen: set[tuple[str, ...]] = set()
            for name in names:
                if not name:
                    raise InvariantError(f"entity {entity!r} has an empty alias")
                folded = fold_tokens(name)
                if folded in seen:
                    raise InvariantError(f"entity {entity!r} has duplicate alias {name!r}")
                seen.add(folded)

    def type_paths(self, entity: str) -> frozenset[str]:
        return self.types.get(entity, frozenset())

    def candidate_names(self, entity: str) -> tuple[tuple[str, ...], ...]:
        """Allowed candidate names: stored aliases plus the display name
        derived from the entity id (underscores as separators)."""
        names = list(self.aliases.get(entity, ()))
        display = tuple(entity.replace("_", " ").split())
        if display:
            folded = {fold_tokens(n) for n in names}
            if fold_tokens(display) not in folded:
                names.append(display)
        return tuple(names)


def labels_in_scope(entity: str, kb: KnowledgeBase, hierarchy: TypeHierarchy) -> frozenset[str]:
    """Hierarchy-scoped labels of an entity; empty when unknown or out of scope."""
    return kb.type_paths(entity) & hierarchy.paths


@dataclass(frozen=True, slots=True)
class AnnotatedMention:
    """One annotated entity mention, the unit of every output dataset."""

    doc_id: str
    span: TokenSpan
    entity: str
    labels: frozenset[str]

    def __post_init__(self):
        if not self.labels:
            raise InvariantError(
                f"mention of {self.entity!r} in {self.doc_id!r} has no labels"
            )

    def key(self) -> tuple[str, int, int, int, str]:
        """Identity used by the overlap analysis: position plus target."""
        return (self.doc_id, self.span.sentence_index, self.span.start, self.span.end, self.entity)
