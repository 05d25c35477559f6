"""Link categorization stage.

Every hyperlink is classified as an entity link (its target has in-scope
types), a non-entity link (frequently anchored, mostly in lowercase), or
unknown. A link is additionally tagged referential when its surface matches
one of the target's candidate names case-insensitively. Only referential
entity links survive; everything else is unlinked and reported.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

from .errors import InputError
from .linkstats import LinkStats
from .model import (
    Anchor,
    Document,
    KnowledgeBase,
    TokenSpan,
    TypeHierarchy,
    ci_equal,
    labels_in_scope,
)


class Category(enum.Enum):
    ENTITY_LINK = "entity"
    NON_ENTITY_LINK = "non_entity"
    UNKNOWN = "unknown"


@dataclass(frozen=True, slots=True)
class LinkCategory:
    category: Category
    referential: bool


@dataclass(frozen=True, slots=True)
class Stage1Config:
    support_threshold: int = 50
    confidence_threshold: float = 0.5

    def __post_init__(self):
        if self.support_threshold < 1:
            raise InputError("support threshold must be >= 1")
        if not 0 < self.confidence_threshold <= 1:
            raise InputError("confidence threshold must be in (0, 1]")


@dataclass(frozen=True, slots=True)
class UnlinkRecord:
    """A removed anchor together with why it was removed."""

    doc_id: str
    span: TokenSpan
    target: str
    category: Category
    referential: bool


def is_referential(surface: Iterable[str], target: str, kb: KnowledgeBase) -> bool:
    surface = tuple(surface)
    return any(ci_equal(surface, name) for name in kb.candidate_names(target))


def categorize_target(target: str, kb: KnowledgeBase, hierarchy: TypeHierarchy,
                      stats: LinkStats, cfg: Stage1Config) -> Category:
    """Category of a link target, independent of any particular surface."""
    if labels_in_scope(target, kb, hierarchy):
        return Category.ENTITY_LINK
    total = stats.total(target)
    if total >= cfg.support_threshold and (
        stats.lowercase_count(target) >= cfg.confidence_threshold * total
    ):
        return Category.NON_ENTITY_LINK
    return Category.UNKNOWN


def categorize(anchor: Anchor, kb: KnowledgeBase, hierarchy: TypeHierarchy,
               stats: LinkStats, cfg: Stage1Config) -> LinkCategory:
    return LinkCategory(
        category=categorize_target(anchor.target, kb, hierarchy, stats, cfg),
        referential=is_referential(anchor.surface, anchor.target, kb),
    )


def apply_stage1(doc: Document, kb: KnowledgeBase, hierarchy: TypeHierarchy,
                 stats: LinkStats, cfg: Stage1Config) -> tuple[Document, tuple[UnlinkRecord, ...]]:
    """Keep only referential entity links; report every removed anchor."""
    kept: list[Anchor] = []
    removed: list[UnlinkRecord] = []
    for anchor in doc.anchors:
        verdict = categorize(anchor, kb, hierarchy, stats, cfg)
        if verdict.category is Category.ENTITY_LINK and verdict.referential:
            kept.append(anchor)
        else:
            removed.append(UnlinkRecord(
                doc_id=doc.id,
                span=anchor.span,
                target=anchor.target,
                category=verdict.category,
                referential=verdict.referential,
            ))
    out = Document(
        id=doc.id,
        sentences=doc.sentences,
        anchors=tuple(kept),
        self_entity=doc.self_entity,
        pos=doc.pos,
    )
    return out, tuple(removed)
