"""Detection of duplicated passages in a normalized word stream.

The detector reports every maximal repeated word sequence of at least the
minimum length: all instances carry identical normalized content, the
instance set occurs at least twice, and extending all instances by one
word to the left or right breaks equality or runs into a document
boundary.  Groups whose instances all sit inside the instances of a
longer group with the same cardinality are suppressed, and groups whose
own instances overlap each other are dropped.

The production detector builds a suffix array over the token stream
(with a unique sentinel at every document seam, so no repeat can span a
concatenation seam), derives the LCP array, and enumerates LCP intervals
bottom-up; left-maximality is decided from the characters preceding the
suffixes of an interval.  Construction is O(n log n) sorting rounds, far
from the quadratic cost of pairwise comparison.

``brute_force_detect`` computes the same contract by exhaustive grouping
of substrings by content and is meant as an independent test oracle for
small streams.
"""

from __future__ import annotations

from bisect import bisect_right
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .normalize import NormalizedStream

BRUTE_FORCE_MAX_WORDS = 5000


@dataclass(frozen=True)
class Clone:
    """One instance of a duplicated passage.

    ``start``/``length`` index the normalized stream; the remaining
    fields are the projection onto the source document (raw word indices
    inclusive, character span half-open).
    """

    start: int
    length: int
    document_id: str
    raw_word_start: int
    raw_word_end: int
    char_start: int
    char_end: int

    @property
    def end(self) -> int:
        return self.start + self.length


@dataclass(frozen=True)
class CloneGroup:
    """All instances of one duplicated passage, sorted by stream start."""

    id: str
    length: int
    clones: tuple[Clone, ...]

    def __post_init__(self) -> None:
        if len(self.clones) < 2:
            raise ValueError("a clone group needs at least two instances")
        previous = None
        for clone in self.clones:
            if clone.length != self.length:
                raise ValueError("all clones in a group share the group length")
            if previous is not None and clone.start <= previous:
                raise ValueError("clone starts must be strictly increasing")
            previous = clone.start

    @property
    def cardinality(self) -> int:
        return len(self.clones)


@dataclass(frozen=True)
class DetectionResult:
    stream: NormalizedStream = field(repr=False)
    groups: tuple[CloneGroup, ...] = ()
    min_clone_length: int = 2
    filter_file_sha256: str | None = None
    created_at: str | None = None


def _project_clone(stream: NormalizedStream, start: int, length: int) -> Clone:
    first = stream.words[start].origin
    last = stream.words[start + length - 1].origin
    return Clone(
        start=start,
        length=length,
        document_id=first.document_id,
        raw_word_start=first.raw_index,
        raw_word_end=last.raw_index,
        char_start=first.char_start,
        char_end=last.char_end,
    )


def _build_groups(
    stream: NormalizedStream, raw_groups: Iterable[tuple[int, Sequence[int]]]
) -> list[CloneGroup]:
    groups = []
    for length, starts in raw_groups:
        clones = tuple(_project_clone(stream, s, length) for s in sorted(starts))
        groups.append(CloneGroup(id="", length=length, clones=clones))
    return groups


def _canonical_order(groups: Iterable[CloneGroup]) -> tuple[CloneGroup, ...]:
    ordered = sorted(groups, key=lambda g: (-g.length, g.clones[0].start))
    return tuple(
        CloneGroup(id=f"G{i}", length=g.length, clones=g.clones)
        for i, g in enumerate(ordered, start=1)
    )


def _covers_raw(
    host_starts: list[int], host_length: int, starts: list[int], length: int
) -> bool:
    for start in starts:
        pos = bisect_right(host_starts, start) - 1
        if pos < 0:
            return False
        if host_starts[pos] + host_length < start + length:
            return False
    return True


def _surviving_containment(raw_groups: list[tuple[int, list[int]]]) -> list[int]:
    """Indices of groups not contained in an equal-cardinality longer group."""
    order = sorted(range(len(raw_groups)), key=lambda i: -raw_groups[i][0])
    survivors: list[int] = []
    by_cardinality: dict[int, list[int]] = defaultdict(list)
    for index in order:
        length, starts = raw_groups[index]
        contained = any(
            raw_groups[host][0] > length
            and _covers_raw(raw_groups[host][1], raw_groups[host][0], starts, length)
            for host in by_cardinality[len(starts)]
        )
        if not contained:
            survivors.append(index)
        by_cardinality[len(starts)].append(index)
    return survivors


def _self_overlapping(length: int, sorted_starts: list[int]) -> bool:
    return any(
        sorted_starts[i + 1] < sorted_starts[i] + length
        for i in range(len(sorted_starts) - 1)
    )


def filter_contained(groups: list[CloneGroup]) -> list[CloneGroup]:
    """Drop groups positionally contained in an equal-cardinality longer group.

    A group survives if it has strictly more instances than every longer
    group that covers it, because the extra instances are real findings.
    """
    raw = [(g.length, [c.start for c in g.clones]) for g in groups]
    keep = set(_surviving_containment(raw))
    return [group for index, group in enumerate(groups) if index in keep]


def remove_overlapping(groups: list[CloneGroup]) -> list[CloneGroup]:
    """Drop every group in which two of its own instances overlap."""
    return [
        group
        for group in groups
        if not _self_overlapping(group.length, [c.start for c in group.clones])
    ]


# ---------------------------------------------------------------------------
# Suffix-structure detector
# ---------------------------------------------------------------------------


def _suffix_array(seq: np.ndarray) -> np.ndarray:
    """Suffix array by prefix doubling (numpy lexsort rounds)."""
    n = len(seq)
    if n == 0:
        return np.empty(0, dtype=np.int64)
    rank = np.unique(seq, return_inverse=True)[1].astype(np.int64)
    order = np.argsort(rank, kind="stable")
    if rank[order[-1]] == n - 1:
        return order
    k = 1
    while True:
        second = np.full(n, -1, dtype=np.int64)
        second[: n - k] = rank[k:]
        order = np.lexsort((second, rank))
        r1 = rank[order]
        r2 = second[order]
        changed = np.empty(n, dtype=np.int64)
        changed[0] = 0
        changed[1:] = (np.diff(r1) != 0) | (np.diff(r2) != 0)
        new_rank = np.empty(n, dtype=np.int64)
        new_rank[order] = np.cumsum(changed)
        rank = new_rank
        if rank[order[-1]] == n - 1:
            return order
        k *= 2


def _lcp_array(seq: np.ndarray, sa: np.ndarray) -> np.ndarray:
    """Kasai's algorithm: lcp[i] = LCP(suffix sa[i-1], suffix sa[i])."""
    n = len(seq)
    lcp = np.zeros(n, dtype=np.int64)
    if n == 0:
        return lcp
    rank = np.empty(n, dtype=np.int64)
    rank[sa] = np.arange(n)
    h = 0
    s = seq.tolist()
    sa_list = sa.tolist()
    rank_list = rank.tolist()
    for i in range(n):
        r = rank_list[i]
        if r > 0:
            j = sa_list[r - 1]
            while i + h < n and j + h < n and s[i + h] == s[j + h]:
                h += 1
            lcp[r] = h
            if h:
                h -= 1
        else:
            h = 0
    return lcp


def _maximal_repeats(seq: np.ndarray, min_length: int) -> list[tuple[int, list[int]]]:
    """All maximal repeats of length >= min_length as (length, positions)."""
    n = len(seq)
    if n < 2 or min_length > n:
        return []
    sa = _suffix_array(seq)
    lcp = _lcp_array(seq, sa)

    # bwt[i] = token preceding suffix sa[i]; -1 marks the stream start.
    bwt = np.where(sa > 0, seq[np.maximum(sa - 1, 0)], -1)
    bwt[sa == 0] = -1
    # prefix counts of adjacent bwt changes: an interval contains two
    # distinct preceding tokens iff some adjacent pair inside it differs.
    diff = np.zeros(n + 1, dtype=np.int64)
    diff[2 : n + 1] = np.cumsum((bwt[1:] != bwt[:-1]).astype(np.int64))

    lcp_list = lcp.tolist()
    sa_list = sa.tolist()
    repeats: list[tuple[int, list[int]]] = []
    stack: list[tuple[int, int]] = [(0, 0)]  # (lcp value, left boundary)
    for i in range(1, n + 1):
        value = lcp_list[i] if i < n else 0
        left = i - 1
        while stack[-1][0] > value:
            depth, interval_left = stack.pop()
            right = i - 1
            if depth >= min_length and diff[right + 1] - diff[interval_left + 1] > 0:
                repeats.append((depth, sa_list[interval_left : right + 1]))
            left = interval_left
        if stack[-1][0] < value:
            stack.append((value, left))
    return repeats


def detect_clones(
    stream: NormalizedStream,
    min_length: int,
    *,
    filter_file_sha256: str | None = None,
    created_at: str | None = None,
) -> DetectionResult:
    """Find all clone groups of at least ``min_length`` normalized words."""
    if min_length < 2:
        raise ValueError(f"min_length must be >= 2, got {min_length}")

    # encode tokens as ints; each document seam gets a unique sentinel so
    # repeats can never span the concatenation seam
    vocabulary: dict[str, int] = {}
    tokens = []
    for word in stream.words:
        token_id = vocabulary.setdefault(word.norm, len(vocabulary))
        tokens.append(token_id)
    next_sentinel = len(vocabulary)
    seq: list[int] = []
    positions: list[int] = []  # detection index -> stream index
    cursor = 0
    for boundary in stream.doc_boundaries:
        seq.extend(tokens[cursor:boundary])
        positions.extend(range(cursor, boundary))
        seq.append(next_sentinel)
        positions.append(-1)
        next_sentinel += 1
        cursor = boundary
    seq.extend(tokens[cursor:])
    positions.extend(range(cursor, len(tokens)))

    repeats = _maximal_repeats(np.asarray(seq, dtype=np.int64), min_length)
    raw_groups = [
        (length, sorted(positions[p] for p in starts)) for length, starts in repeats
    ]
    surviving = [
        raw_groups[index]
        for index in _surviving_containment(raw_groups)
        if not _self_overlapping(*raw_groups[index])
    ]
    groups = _build_groups(stream, surviving)
    return DetectionResult(
        stream=stream,
        groups=_canonical_order(groups),
        min_clone_length=min_length,
        filter_file_sha256=filter_file_sha256,
        created_at=created_at,
    )


# ---------------------------------------------------------------------------
# Exhaustive oracle
# ---------------------------------------------------------------------------


def brute_force_candidates(
    stream: NormalizedStream, min_length: int
) -> list[tuple[int, list[int]]]:
    """Maximal repeats before containment/overlap filtering, exhaustively.

    Substrings of every length are grouped by content and each content
    class with two or more occurrences is kept when its full occurrence
    set is left- and right-maximal.  Returns (length, positions) pairs.
    """
    n = len(stream.words)
    tokens = [word.norm for word in stream.words]
    seg_start = [0] * n
    seg_end = [0] * n
    seg_index = [0] * n
    for idx, (_, start, end) in enumerate(stream.segments()):
        for p in range(start, end):
            seg_start[p] = start
            seg_end[p] = end
            seg_index[p] = idx

    candidates: list[tuple[int, list[int]]] = []
    length = min_length
    # class id per position for the current length; grown one word at a time
    classes: dict[tuple, list[int]] = defaultdict(list)
    for p in range(n):
        if p + min_length <= seg_end[p]:
            classes[tuple(tokens[p : p + min_length])].append(p)

    while classes:
        survivors: list[tuple[int, list[int]]] = []
        for member_positions in classes.values():
            if len(member_positions) >= 2:
                survivors.append((len(survivors), member_positions))
        if not survivors:
            break
        for _, member_positions in survivors:
            left_edges = set()
            right_edges = set()
            for p in member_positions:
                left_edges.add(
                    tokens[p - 1] if p - 1 >= seg_start[p] else ("^", seg_index[p], p)
                )
                right_edges.add(
                    tokens[p + length]
                    if p + length < seg_end[p]
                    else ("$", seg_index[p], p)
                )
            if len(left_edges) >= 2 and len(right_edges) >= 2:
                candidates.append((length, list(member_positions)))
        next_classes: dict[tuple, list[int]] = defaultdict(list)
        for class_id, member_positions in survivors:
            for p in member_positions:
                if p + length < seg_end[p]:
                    next_classes[(class_id, tokens[p + length])].append(p)
        classes = next_classes
        length += 1
    return candidates


def brute_force_detect(
    stream: NormalizedStream,
    min_length: int,
    *,
    filter_file_sha256: str | None = None,
    created_at: str | None = None,
) -> DetectionResult:
    """Same contract as detect_clones, by exhaustive content grouping.

    Intended as a test oracle: candidate groups come from
    :func:`brute_force_candidates` and the containment and overlap
    filters are applied by definition.  Streams longer than
    BRUTE_FORCE_MAX_WORDS are rejected.
    """
    if min_length < 2:
        raise ValueError(f"min_length must be >= 2, got {min_length}")
    n = len(stream.words)
    if n > BRUTE_FORCE_MAX_WORDS:
        raise ValueError(
            f"stream of {n} words exceeds the brute-force bound of "
            f"{BRUTE_FORCE_MAX_WORDS}"
        )
    candidates = brute_force_candidates(stream, min_length)

    # containment filter, by definition
    kept: list[tuple[int, list[int]]] = []
    for g_len, g_pos in candidates:
        contained = False
        for h_len, h_pos in candidates:
            if h_len <= g_len or len(h_pos) != len(g_pos):
                continue
            if all(
                any(h <= g and g + g_len <= h + h_len for h in h_pos) for g in g_pos
            ):
                contained = True
                break
        if not contained:
            kept.append((g_len, g_pos))

    # overlap filter, by definition
    final: list[tuple[int, list[int]]] = []
    for g_len, g_pos in kept:
        ordered = sorted(g_pos)
        overlapping = any(
            a < b + g_len and b < a + g_len
            for i, a in enumerate(ordered)
            for b in ordered[:i]
        )
        if not overlapping:
            final.append((g_len, ordered))

    groups = _build_groups(stream, final)
    return DetectionResult(
        stream=stream,
        groups=_canonical_order(groups),
        min_clone_length=min_length,
        filter_file_sha256=filter_file_sha256,
        created_at=created_at,
    )
