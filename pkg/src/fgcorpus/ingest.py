"""Readers for the pipeline inputs: linked corpus, knowledge base files,
raw-type mapping and type hierarchy.

Corpus files are UTF-8 JSON lines, one document per line:

    {"id": ..., "self_entity": ...,          # self_entity optional
     "sentences": [["token", ...], ...],
     "anchors": [{"s": 0, "b": 1, "e": 3, "t": "Entity_Id"}, ...],
     "pos": [["DT", ...], ...]}              # optional, same shape as sentences

All readers transparently handle gzip input (by ".gz" extension).
"""

from __future__ import annotations

import gzip
import io
import json
import logging
from pathlib import Path
from typing import Iterable, Iterator

from .errors import InputError, InvariantError
from .model import (
    Anchor,
    Document,
    KnowledgeBase,
    TokenSpan,
    TypeHierarchy,
    close_paths,
    fold_tokens,
)

log = logging.getLogger(__name__)


def open_text(path: str | Path, mode: str = "rt"):
    """Open a text file, decompressing gzip when the name ends in .gz."""
    path = Path(path)
    if path.suffix == ".gz":
        return gzip.open(path, mode, encoding="utf-8")
    return open(path, mode, encoding="utf-8")


def _require_file(path: str | Path) -> Path:
    path = Path(path)
    if not path.is_file():
        raise InputError(f"no such file: {path}")
    return path


def _token_list(value, line_no: int, what: str) -> tuple[str, ...]:
    if not isinstance(value, list) or not all(isinstance(t, str) for t in value):
        raise InputError(f"line {line_no}: {what} must be a list of strings")
    return tuple(value)


def _parse_document(record: dict, line_no: int) -> Document:
    if not isinstance(record, dict):
        raise InputError(f"line {line_no}: record is not an object")
    doc_id = record.get("id")
    if not isinstance(doc_id, str) or not doc_id:
        raise InputError(f"line {line_no}: missing or invalid 'id'")
    raw_sentences = record.get("sentences")
    if not isinstance(raw_sentences, list):
        raise InputError(f"line {line_no}: missing 'sentences'")
    sentences = tuple(_token_list(s, line_no, "sentence") for s in raw_sentences)
    anchors = []
    for raw in record.get("anchors", []):
        if not isinstance(raw, dict) or not {"s", "b", "e", "t"} <= raw.keys():
            raise InputError(f"line {line_no}: anchor must carry s, b, e, t")
        s, b, e, t = raw["s"], raw["b"], raw["e"], raw["t"]
        if not all(isinstance(v, int) for v in (s, b, e)) or not isinstance(t, str):
            raise InputError(f"line {line_no}: anchor fields have wrong types")
        try:
            span = TokenSpan(s, b, e)
        except InvariantError as exc:
            raise InputError(f"line {line_no}: {exc}") from exc
        if s >= len(sentences):
            raise InputError(f"line {line_no}: anchor sentence index {s} out of range")
        if e > len(sentences[s]):
            raise InputError(f"line {line_no}: span out of bounds")
        anchors.append(Anchor(span=span, target=t, surface=sentences[s][b:e]))
    self_entity = record.get("self_entity")
    if self_entity is not None and not isinstance(self_entity, str):
        raise InputError(f"line {line_no}: 'self_entity' must be a string")
    pos = None
    if "pos" in record and record["pos"] is not None:
        if not isinstance(record["pos"], list):
            raise InputError(f"line {line_no}: 'pos' must be a list")
        pos = tuple(_token_list(p, line_no, "pos row") for p in record["pos"])
    try:
        return Document(
            id=doc_id,
            sentences=sentences,
            anchors=tuple(anchors),
            self_entity=self_entity,
            pos=pos,
        )
    except InvariantError as exc:
        raise InputError(f"line {line_no}: {exc}") from exc


def read_corpus(path: str | Path, on_invalid: str = "abort") -> Iterator[Document]:
    """Stream documents from a corpus file in file order.

    ``on_invalid`` controls what happens to documents violating structural
    constraints (overlapping anchors, bad spans): "abort" raises, "skip" logs
    the diagnostic and continues. Unparseable lines always abort.
    """
    if on_invalid not in ("abort", "skip"):
        raise InputError(f"on_invalid must be 'abort' or 'skip', got {on_invalid!r}")
    path = _require_file(path)
    with open_text(path) as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise InputError(f"line {line_no}: invalid JSON ({exc})") from exc
            try:
                yield _parse_document(record, line_no)
            except InputError as exc:
                if on_invalid == "abort":
                    raise
                log.warning("skipping document at %s", exc)


def document_to_record(doc: Document) -> dict:
    record: dict = {
        "id": doc.id,
        "sentences": [list(s) for s in doc.sentences],
        "anchors": [
            {"s": a.span.sentence_index, "b": a.span.start, "e": a.span.end, "t": a.target}
            for a in doc.anchors
        ],
    }
    if doc.self_entity is not None:
        record["self_entity"] = doc.self_entity
    if doc.pos is not None:
        record["pos"] = [list(p) for p in doc.pos]
    return record


def write_corpus(docs: Iterable[Document], path: str | Path) -> None:
    """Inverse of read_corpus; used by the fixture generator and tests."""
    with open_text(path, "wt") as handle:
        for doc in docs:
            handle.write(json.dumps(document_to_record(doc), ensure_ascii=False))
            handle.write("\n")


def read_hierarchy(path: str | Path) -> TypeHierarchy:
    """Load a type hierarchy, one path per line, auto-closing missing prefixes."""
    path = _require_file(path)
    paths = []
    with open_text(path) as handle:
        for line_no, line in enumerate(handle, start=1):
            entry = line.strip()
            if not entry or entry.startswith("#"):
                continue
            if not entry.startswith("/"):
                raise InputError(f"{path}:{line_no}: type path must start with '/': {entry!r}")
            paths.append(entry)
    try:
        closed, added = close_paths(paths)
    except InvariantError as exc:
        raise InputError(f"{path}: {exc}") from exc
    if added:
        log.warning("hierarchy %s missing %d prefix paths, added: %s",
                    path, len(added), ", ".join(sorted(added)))
    return TypeHierarchy(frozenset(closed))


def read_mapping(path: str | Path, hierarchy: TypeHierarchy) -> dict[str, str]:
    """Load the raw-KB-type to hierarchy-path mapping (TSV)."""
    path = _require_file(path)
    mapping: dict[str, str] = {}
    with open_text(path) as handle:
        for line_no, line in enumerate(handle, start=1):
            entry = line.rstrip("\n")
            if not entry.strip() or entry.startswith("#"):
                continue
            parts = entry.split("\t")
            if len(parts) != 2:
                raise InputError(f"{path}:{line_no}: expected raw_type<TAB>type_path")
            raw, target = parts
            if target not in hierarchy:
                raise InputError(
                    f"{path}:{line_no}: mapping target {target!r} not in hierarchy"
                )
            mapping[raw] = target
    return mapping


def _read_pairs(path: Path) -> Iterator[tuple[int, str, str]]:
    with open_text(path) as handle:
        for line_no, line in enumerate(handle, start=1):
            entry = line.rstrip("\n")
            if not entry.strip() or entry.startswith("#"):
                continue
            parts = entry.split("\t")
            if len(parts) != 2:
                raise InputError(f"{path}:{line_no}: expected two tab-separated fields")
            yield line_no, parts[0], parts[1]


def read_kb(types_path: str | Path, aliases_path: str | Path,
            mapping: dict[str, str], hierarchy: TypeHierarchy) -> KnowledgeBase:
    """Load the knowledge base.

    Raw types are translated through ``mapping``; raw types without a mapping
    are dropped (entities keep an empty in-scope type set). Aliases are
    whitespace-tokenized and deduplicated case-insensitively, keeping the
    first spelling seen.
    """
    types_path = _require_file(types_path)
    aliases_path = _require_file(aliases_path)
    types: dict[str, set[str]] = {}
    for _line_no, entity, raw_type in _read_pairs(types_path):
        mapped = mapping.get(raw_type)
        if mapped is None:
            continue
        if mapped not in hierarchy:
            raise InputError(f"{types_path}: mapped type {mapped!r} not in hierarchy")
        types.setdefault(entity, set()).add(mapped)
    aliases: dict[str, list[tuple[str, ...]]] = {}
    seen: dict[str, set[tuple[str, ...]]] = {}
    for line_no, entity, alias in _read_pairs(aliases_path):
        tokens = tuple(alias.split())
        if not tokens:
            raise InputError(f"{aliases_path}:{line_no}: empty alias for {entity!r}")
        folded = fold_tokens(tokens)
        if folded in seen.setdefault(entity, set()):
            continue
        seen[entity].add(folded)
        aliases.setdefault(entity, []).append(tokens)
    return KnowledgeBase(
        types={e: frozenset(ts) for e, ts in types.items()},
        aliases={e: tuple(names) for e, names in aliases.items()},
    )


def read_word_list(path: str | Path) -> tuple[str, ...]:
    """One entry per line, case-folded, comments and blanks skipped."""
    path = _require_file(path)
    out = []
    with open_text(path) as handle:
        for line in handle:
            entry = line.strip()
            if entry and not entry.startswith("#"):
                out.append(entry.casefold())
    return tuple(out)


def read_roots_map(path: str | Path) -> dict[str, str]:
    """Load a subtree-to-bucket map (TSV path<TAB>bucket) for coverage analysis."""
    from .model import BUCKETS

    path = _require_file(path)
    roots: dict[str, str] = {}
    for line_no, subtree, bucket in _read_pairs(path):
        if not subtree.startswith("/"):
            raise InputError(f"{path}:{line_no}: subtree must be a type path")
        if bucket not in BUCKETS:
            raise InputError(f"{path}:{line_no}: bucket must be one of {BUCKETS}")
        roots[subtree] = bucket
    return roots
