# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_scan_py.scan_sentence``; same contract, same results."""

KIND_ENTITY = 0
KIND_NON_ENTITY = 1
KIND_AMBIGUOUS = 2

DEF _KIND_AMBIGUOUS = 2


def scan_sentence(list folded, startable, blocked, dict root):
    """See ``fgcorpus._scan_py.scan_sentence``."""
    cdef Py_ssize_t n = len(folded)
    cdef Py_ssize_t i = 0
    cdef Py_ssize_t j
    cdef Py_ssize_t best_end
    cdef int kind
    cdef const unsigned char[:] start_mask = startable
    cdef const unsigned char[:] block_mask = blocked
    cdef object node, payload, best_payload
    events = []
    while i < n:
        if block_mask[i] or not start_mask[i]:
            i += 1
            continue
        node = root.get(folded[i])
        best_end = -1
        best_payload = None
        j = i
        while node is not None:
            j += 1
            payload = (<tuple>node)[1]
            if payload is not None:
                best_end = j
                best_payload = payload
            if j >= n or block_mask[j]:
                break
            node = (<dict>(<tuple>node)[0]).get(folded[j])
        if best_payload is None:
            i += 1
            continue
        kind = <int>(<tuple>best_payload)[0]
        events.append((kind, i, best_end, (<tuple>best_payload)[1]))
        if kind == _KIND_AMBIGUOUS:
            i += 1
        else:
            i = best_end
    return events
