"""Repetition detection via a suffix automaton.

A substring counts as repetition when it is at least `l_min` characters long
and occurs at least `r_min` times (all positions, overlaps included). The
automaton is built per call in O(n); occurrence counts are endpos-set sizes
propagated bottom-up along suffix links, so the whole check stays linear in
the input length.

The build keeps its state in flat typed arrays rather than per-state dicts:
one transition column per character for small alphabets (suffix-chain walks
then stay inside one column), a single state-major table for medium ones,
and dict transitions as a last resort for huge alphabets. First-occurrence
end positions are recorded at state creation; a clone inherits its
original's value, which is exact because all strings of a state share one
endpos set at the moment the state is split.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass

import numpy as np

DEFAULT_MIN_LENGTH = 20
DEFAULT_MIN_REPEATS = 5

# Column layout while the per-walk working set stays small; state-major
# layout while the whole table stays below ~256 MB; dicts beyond that.
_COLUMN_SIGMA_LIMIT = 8
_DENSE_CELL_LIMIT = 64_000_000


@dataclass
class RepetitionReport:
    detected: bool
    substring: str = ""
    count: int = 0
    length: int = 0
    start: int = -1


def _encode(text: str) -> tuple[int, bytes | None]:
    alphabet = sorted(set(text))
    sigma = len(alphabet)
    if sigma == 0 or sigma > 255:
        return sigma, None
    table = {ch: chr(i) for i, ch in enumerate(alphabet)}
    return sigma, text.translate(str.maketrans(table)).encode("latin-1")


def _build_columns(sigma: int, codes: bytes):
    """One transition array per character; walks stay within one column."""
    max_states = 2 * len(codes) + 2
    columns = [array("i", [-1]) * max_states for _ in range(sigma)]
    link = array("i", [-1]) * max_states
    length = array("i", [0]) * max_states
    is_clone = array("b", [0]) * max_states
    first_end = array("i", [0]) * max_states
    size = 1
    last = 0
    pos = 0
    for c in codes:
        col = columns[c]
        cur = size
        size += 1
        length[cur] = length[last] + 1
        first_end[cur] = pos
        p = last
        while p != -1 and col[p] == -1:
            col[p] = cur
            p = link[p]
        if p == -1:
            link[cur] = 0
        else:
            q = col[p]
            if length[p] + 1 == length[q]:
                link[cur] = q
            else:
                clone = size
                size += 1
                for other in columns:
                    other[clone] = other[q]
                length[clone] = length[p] + 1
                link[clone] = link[q]
                first_end[clone] = first_end[q]
                is_clone[clone] = 1
                while p != -1 and col[p] == q:
                    col[p] = clone
                    p = link[p]
                link[q] = clone
                link[cur] = clone
        last = cur
        pos += 1
    return link, length, is_clone, first_end, size


def _build_flat(sigma: int, codes: bytes):
    """State-major transition table; clones copy one contiguous row."""
    max_states = 2 * len(codes) + 2
    trans = array("i", [-1]) * (max_states * sigma)
    link = array("i", [-1]) * max_states
    length = array("i", [0]) * max_states
    is_clone = array("b", [0]) * max_states
    first_end = array("i", [0]) * max_states
    size = 1
    last = 0
    pos = 0
    for c in codes:
        cur = size
        size += 1
        length[cur] = length[last] + 1
        first_end[cur] = pos
        p = last
        while p != -1 and trans[p * sigma + c] == -1:
            trans[p * sigma + c] = cur
            p = link[p]
        if p == -1:
            link[cur] = 0
        else:
            q = trans[p * sigma + c]
            if length[p] + 1 == length[q]:
                link[cur] = q
            else:
                clone = size
                size += 1
                qb = q * sigma
                cb = clone * sigma
                trans[cb : cb + sigma] = trans[qb : qb + sigma]
                length[clone] = length[p] + 1
                link[clone] = link[q]
                first_end[clone] = first_end[q]
                is_clone[clone] = 1
                while p != -1 and trans[p * sigma + c] == q:
                    trans[p * sigma + c] = clone
                    p = link[p]
                link[q] = clone
                link[cur] = clone
        last = cur
        pos += 1
    return link, length, is_clone, first_end, size


def _build_sparse(text: str):
    """Dict-transition automaton for texts with very large alphabets."""
    trans: list[dict[str, int]] = [{}]
    link = array("i", [-1])
    length = array("i", [0])
    is_clone = array("b", [0])
    first_end = array("i", [0])
    last = 0
    for pos, ch in enumerate(text):
        cur = len(trans)
        trans.append({})
        length.append(length[last] + 1)
        link.append(-1)
        is_clone.append(0)
        first_end.append(pos)
        p = last
        while p != -1 and ch not in trans[p]:
            trans[p][ch] = cur
            p = link[p]
        if p == -1:
            link[cur] = 0
        else:
            q = trans[p][ch]
            if length[p] + 1 == length[q]:
                link[cur] = q
            else:
                clone = len(trans)
                trans.append(dict(trans[q]))
                length.append(length[p] + 1)
                link.append(link[q])
                is_clone.append(1)
                first_end.append(first_end[q])
                while p != -1 and trans[p].get(ch) == q:
                    trans[p][ch] = clone
                    p = link[p]
                link[q] = clone
                link[cur] = clone
        last = cur
    return link, length, is_clone, first_end, len(length)


def _build_automaton(text: str):
    sigma, codes = _encode(text)
    if codes is not None:
        if sigma <= _COLUMN_SIGMA_LIMIT:
            return _build_columns(sigma, codes)
        if sigma * (2 * len(text) + 2) <= _DENSE_CELL_LIMIT:
            return _build_flat(sigma, codes)
    return _build_sparse(text)


def detect_repetition(
    text: str,
    l_min: int = DEFAULT_MIN_LENGTH,
    r_min: int = DEFAULT_MIN_REPEATS,
) -> RepetitionReport:
    """Report the best repeated substring, prioritized by occurrence count,
    then length, then earliest start."""
    if l_min < 1 or r_min < 1:
        raise ValueError("l_min and r_min must be at least 1")
    # r_min overlapping occurrences of an l_min-length substring need at
    # least l_min + r_min - 1 characters.
    if len(text) < l_min + r_min - 1:
        return RepetitionReport(detected=False)

    link_a, length_a, is_clone_a, first_end_a, size = _build_automaton(text)
    link = np.frombuffer(link_a, dtype=np.int32)[:size]
    length = np.frombuffer(length_a, dtype=np.int32)[:size]
    is_clone = np.frombuffer(is_clone_a, dtype=np.int8)[:size]
    first_end = np.frombuffer(first_end_a, dtype=np.int32)[:size]

    # Occurrence counts: one per original state, none per clone, accumulated
    # into suffix-link parents in decreasing-length order. States are
    # renumbered by that order first, so the accumulation reads sequentially
    # and its writes cluster in the short-string (hot) tail.
    order = np.argsort(length[1:], kind="stable")[::-1] + 1
    rank = np.empty(size, dtype=np.int64)
    rank[order] = np.arange(size - 1)
    rank[0] = size - 1
    parent_ranked = rank[link[order]].tolist()
    occ_ranked = (1 - is_clone)[order].astype(np.int64).tolist()
    occ_ranked.append(int(1 - is_clone[0]))
    for s in range(size - 1):
        occ_ranked[parent_ranked[s]] += occ_ranked[s]
    occ = np.empty(size, dtype=np.int64)
    occ[order] = occ_ranked[: size - 1]
    occ[0] = occ_ranked[size - 1]

    # A state qualifies if its occurrence count passes r_min and its length
    # range reaches l_min; the candidate substring is the shortest qualifying
    # length of the state.
    occ[0] = 0
    candidates = np.flatnonzero(occ >= r_min)
    if candidates.size == 0:
        return RepetitionReport(detected=False)
    effective = np.maximum(length[link[candidates]] + 1, l_min)
    keep = effective <= length[candidates]
    if not keep.any():
        return RepetitionReport(detected=False)
    candidates = candidates[keep]
    effective = effective[keep]
    top = occ[candidates] == occ[candidates].max()
    candidates, effective = candidates[top], effective[top]
    top = effective == effective.max()
    candidates, effective = candidates[top], effective[top]
    starts = first_end[candidates] - effective + 1
    pick = int(np.argmin(starts))
    best = candidates[pick]

    rep_len = int(effective[pick])
    start = int(first_end[best]) - rep_len + 1
    return RepetitionReport(
        detected=True,
        substring=text[start : start + rep_len],
        count=int(occ[best]),
        length=rep_len,
        start=start,
    )
