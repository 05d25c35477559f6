"""Corpus-level anchor statistics.

One pass over the raw corpus counts, per link target, how often it is
anchored and how often with an all-lowercase surface. These counts feed the
non-entity rule in the categorization stage and the lowercase trie in the
inference stage.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from .errors import InputError
from .model import Document, is_lowercase_phrase


@dataclass(frozen=True, slots=True)
class LinkStats:
    """Per-target anchor counts over the whole input corpus."""

    totals: dict[str, int] = field(default_factory=dict)
    lowercase: dict[str, int] = field(default_factory=dict)

    def total(self, target: str) -> int:
        return self.totals.get(target, 0)

    def lowercase_count(self, target: str) -> int:
        return self.lowercase.get(target, 0)

    def anchor_count(self) -> int:
        return sum(self.totals.values())

    def merge(self, other: "LinkStats") -> "LinkStats":
        """Pure associative merge, so partitions can be folded in any order."""
        totals = dict(self.totals)
        lowercase = dict(self.lowercase)
        for target, count in other.totals.items():
            totals[target] = totals.get(target, 0) + count
        for target, count in other.lowercase.items():
            lowercase[target] = lowercase.get(target, 0) + count
        return LinkStats(totals=totals, lowercase=lowercase)


def compute_link_stats(corpus: Iterable[Document]) -> LinkStats:
    """Count every anchor occurrence exactly once; order-independent."""
    totals: dict[str, int] = {}
    lowercase: dict[str, int] = {}
    for doc in corpus:
        for anchor in doc.anchors:
            totals[anchor.target] = totals.get(anchor.target, 0) + 1
            if is_lowercase_phrase(anchor.surface):
                lowercase[anchor.target] = lowercase.get(anchor.target, 0) + 1
    return LinkStats(totals=totals, lowercase=lowercase)


def is_lowercase_dominant(target: str, stats: LinkStats) -> bool:
    """True iff strictly more than half of the target's anchors are lowercase."""
    total = stats.total(target)
    return total > 0 and stats.lowercase_count(target) > 0.5 * total


def file_sha256(path: str | Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def save_stats_cache(path: str | Path, corpus_hash: str, stats: LinkStats,
                     starter_counts: dict[str, int]) -> None:
    payload = {
        "corpus_sha256": corpus_hash,
        "totals": stats.totals,
        "lowercase": stats.lowercase,
        "starter_counts": starter_counts,
    }
    Path(path).write_text(json.dumps(payload, sort_keys=True), encoding="utf-8")


def load_stats_cache(path: str | Path, corpus_hash: str) -> tuple[LinkStats, dict[str, int]] | None:
    """Return cached stats when the cache matches the corpus hash, else None."""
    path = Path(path)
    if not path.is_file():
        return None
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"unreadable stats cache {path}: {exc}") from exc
    if payload.get("corpus_sha256") != corpus_hash:
        return None
    stats = LinkStats(
        totals={str(k): int(v) for k, v in payload["totals"].items()},
        lowercase={str(k): int(v) for k, v in payload["lowercase"].items()},
    )
    starters = {str(k): int(v) for k, v in payload["starter_counts"].items()}
    return stats, starters


def sentence_starter_counts(corpus: Iterable[Document]) -> dict[str, int]:
    """Case-folded counts of sentence-initial words, computed in the same
    pass style as the anchor stats."""
    counts: dict[str, int] = {}
    for doc in corpus:
        for sentence in doc.sentences:
            if sentence:
                word = sentence[0].casefold()
                counts[word] = counts.get(word, 0) + 1
    return counts


def stats_pass(corpus: Iterable[Document]) -> tuple[LinkStats, dict[str, int]]:
    """Single shared pass producing both anchor stats and starter counts."""
    totals: dict[str, int] = {}
    lowercase: dict[str, int] = {}
    starters: dict[str, int] = {}
    for doc in corpus:
        for anchor in doc.anchors:
            totals[anchor.target] = totals.get(anchor.target, 0) + 1
            if is_lowercase_phrase(anchor.surface):
                lowercase[anchor.target] = lowercase.get(anchor.target, 0) + 1
        for sentence in doc.sentences:
            if sentence:
                word = sentence[0].casefold()
                starters[word] = starters.get(word, 0) + 1
    return LinkStats(totals=totals, lowercase=lowercase), starters
