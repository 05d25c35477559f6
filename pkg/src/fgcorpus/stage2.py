"""Link inference stage.

For each document, two token tries are built from the candidate names of the
document's outgoing link targets: one over all entity and non-entity targets,
one restricted to entity targets that are anchored in lowercase more often
than not across the corpus. Unlinked text is then re-linked in two passes:
pass 1 starts matches at capitalized tokens against the full trie, pass 2
runs over whatever is still unlinked against the lowercase trie. Matches
resolving to a unique entity become new anchors; matches resolving to
non-entities consume their span without emitting a mention; names shared by
several targets are skipped and reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from ._scan import KIND_AMBIGUOUS, KIND_ENTITY, KIND_NON_ENTITY, scan_sentence
from .errors import InvariantError
from .linkstats import LinkStats, is_lowercase_dominant
from .model import (
    Anchor,
    Document,
    KnowledgeBase,
    TokenSpan,
    TypeHierarchy,
    first_char_is_upper,
    fold_tokens,
)
from .stage1 import Category, Stage1Config, categorize_target


class CandidateTrie:
    """Token trie over case-folded candidate names.

    Accepting nodes remember every (target, is_entity) pair inserted for the
    name; ``finalize`` collapses those into the payload the scanner consumes.
    """

    def __init__(self):
        self._root: dict = {}
        self._compiled: dict | None = None

    def insert(self, name: Iterable[str], target: str, is_entity: bool) -> None:
        if self._compiled is not None:
            raise InvariantError("trie already finalized")
        key = fold_tokens(name)
        if not key:
            return
        # each node is [children, accept_map]
        children = self._root
        current = None
        for token in key:
            if token not in children:
                children[token] = [{}, {}]
            current = children[token]
            children = current[0]
        current[1][target] = current[1].get(target, False) or is_entity

    def lookup(self, name: Iterable[str]) -> frozenset[str]:
        """Targets stored for exactly this name; empty when absent."""
        children = self._root
        current = None
        for token in fold_tokens(name):
            if token not in children:
                return frozenset()
            current = children[token]
            children = current[0]
        if current is None:
            return frozenset()
        return frozenset(current[1])

    def keys(self) -> Iterator[tuple[str, ...]]:
        def walk(children: dict, prefix: tuple[str, ...]) -> Iterator[tuple[str, ...]]:
            for token in sorted(children):
                child = children[token]
                key = prefix + (token,)
                if child[1]:
                    yield key
                yield from walk(child[0], key)

        yield from walk(self._root, ())

    def __len__(self) -> int:
        return sum(1 for _ in self.keys())

    def finalize(self) -> dict:
        """Compile to the immutable (children, payload) form used by the scanner."""
        if self._compiled is None:
            self._compiled = self._compile(self._root)
        return self._compiled

    @staticmethod
    def _compile(children: dict) -> dict:
        compiled = {}
        for token, (sub, accepts) in children.items():
            payload = None
            if accepts:
                targets = sorted(accepts)
                if len(targets) == 1:
                    only = targets[0]
                    kind = KIND_ENTITY if accepts[only] else KIND_NON_ENTITY
                    payload = (kind, only if kind == KIND_ENTITY else None)
                elif not any(accepts.values()):
                    payload = (KIND_NON_ENTITY, None)
                else:
                    payload = (KIND_AMBIGUOUS, None)
            compiled[token] = (CandidateTrie._compile(sub), payload)
        return compiled


def collect_outgoing(doc: Document, kb: KnowledgeBase, hierarchy: TypeHierarchy,
                     stats: LinkStats, cfg: Stage1Config,
                     unknown_as_nonentity: bool = False) -> dict[str, Category]:
    """Targets of the document's original anchors plus its own entity.

    Categories come from the same rule the categorization stage uses, so a
    target unlinked there still contributes its candidate names here.
    """
    targets = {anchor.target for anchor in doc.anchors}
    if doc.self_entity:
        targets.add(doc.self_entity)
    out = {}
    for target in sorted(targets):
        category = categorize_target(target, kb, hierarchy, stats, cfg)
        if category is Category.UNKNOWN and unknown_as_nonentity:
            category = Category.NON_ENTITY_LINK
        out[target] = category
    return out


def build_tries(outgoing: Mapping[str, Category], kb: KnowledgeBase,
                stats: LinkStats) -> tuple[CandidateTrie, CandidateTrie]:
    """Full trie over entity and non-entity targets, plus the lowercase-only trie."""
    trie_all = CandidateTrie()
    trie_lower = CandidateTrie()
    for target, category in outgoing.items():
        if category is Category.UNKNOWN:
            continue
        is_entity = category is Category.ENTITY_LINK
        for name in kb.candidate_names(target):
            trie_all.insert(name, target, is_entity)
            if is_entity and is_lowercase_dominant(target, stats):
                trie_lower.insert(name, target, is_entity)
    trie_all.finalize()
    trie_lower.finalize()
    return trie_all, trie_lower


@dataclass(frozen=True, slots=True)
class Stage2Result:
    document: Document
    added: tuple[Anchor, ...]
    consumed: tuple[TokenSpan, ...]
    ambiguous: tuple[TokenSpan, ...]


def infer_links(doc: Document, trie_all: CandidateTrie,
                trie_lower: CandidateTrie) -> Stage2Result:
    """Re-link unlinked text against the document's candidate-name tries."""
    root_all = trie_all.finalize()
    root_lower = trie_lower.finalize()
    added: list[Anchor] = []
    consumed: list[TokenSpan] = []
    ambiguous: list[TokenSpan] = []

    for index, sentence in enumerate(doc.sentences):
        n = len(sentence)
        if n == 0:
            continue
        folded = [t.casefold() for t in sentence]
        blocked = bytearray(n)
        for anchor in doc.anchors:
            if anchor.span.sentence_index == index:
                for pos in range(anchor.span.start, anchor.span.end):
                    blocked[pos] = 1
        upper_start = bytearray(1 if first_char_is_upper(t) else 0 for t in sentence)
        anywhere = bytearray(b"\x01" * n)

        for startable, root in ((upper_start, root_all), (anywhere, root_lower)):
            if not root:
                continue
            for kind, start, end, target in scan_sentence(folded, startable, blocked, root):
                span = TokenSpan(index, start, end)
                if kind == KIND_ENTITY:
                    added.append(Anchor(span=span, target=target,
                                        surface=sentence[start:end]))
                elif kind == KIND_NON_ENTITY:
                    consumed.append(span)
                else:
                    ambiguous.append(span)
                    continue
                for pos in range(start, end):
                    blocked[pos] = 1

    anchors = sorted(
        list(doc.anchors) + added,
        key=lambda a: (a.span.sentence_index, a.span.start),
    )
    out = Document(
        id=doc.id,
        sentences=doc.sentences,
        anchors=tuple(anchors),
        self_entity=doc.self_entity,
        pos=doc.pos,
    )
    return Stage2Result(
        document=out,
        added=tuple(added),
        consumed=tuple(consumed),
        ambiguous=tuple(ambiguous),
    )
