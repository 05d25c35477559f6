"""Pure-Python token scanner, the reference implementation of the hot loop.

The compiled twin in ``_scan_c.pyx`` must behave identically; the dispatcher
in ``_scan`` picks whichever is available.

Trie encoding: a node is ``(children, payload)`` where ``children`` maps a
case-folded token to the next node and ``payload`` is ``None`` on
non-accepting nodes, else one of

    (KIND_ENTITY, target)     unique entity target
    (KIND_NON_ENTITY, None)   only non-entity targets share this name
    (KIND_AMBIGUOUS, None)    several targets share this name

The sentence is scanned left to right. At each position that is startable
and not blocked, the longest trie match over unblocked positions wins.
Entity and non-entity matches consume their span (the cursor jumps past);
an ambiguous match is reported but leaves the span free.
"""

from __future__ import annotations

KIND_ENTITY = 0
KIND_NON_ENTITY = 1
KIND_AMBIGUOUS = 2


def scan_sentence(folded, startable, blocked, root):
    """Scan one sentence.

    folded:    list of case-folded tokens
    startable: bytearray flags, a match may begin only where truthy
    blocked:   bytearray flags, positions a match may not cover
    root:      top-level children dict of the trie

    Returns a list of ``(kind, start, end, target_or_None)`` events.
    """
    events = []
    n = len(folded)
    i = 0
    while i < n:
        if blocked[i] or not startable[i]:
            i += 1
            continue
        node = root.get(folded[i])
        best_end = -1
        best_payload = None
        j = i
        while node is not None:
            j += 1
            payload = node[1]
            if payload is not None:
                best_end = j
                best_payload = payload
            if j >= n or blocked[j]:
                break
            node = node[0].get(folded[j])
        if best_payload is None:
            i += 1
            continue
        kind = best_payload[0]
        events.append((kind, i, best_end, best_payload[1]))
        if kind == KIND_AMBIGUOUS:
            i += 1
        else:
            i = best_end
    return events
