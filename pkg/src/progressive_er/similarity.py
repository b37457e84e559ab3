"""Weighted Neighbor List methods: LS-PSN and GS-PSN with RCF weights."""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable

from .blocking import NeighborList, build_neighbor_list
from .errors import DivisionDegenerate
from .model import Comparison, ERMode, ProfileCollection, ProgressiveEmitter, sort_comparisons


def build_position_index(nl: NeighborList, num_profiles: int) -> list[list[int]]:
    """``pi[i]`` lists, ascending, the Neighbor List positions of profile ``i``."""
    pi: list[list[int]] = [[] for _ in range(num_profiles)]
    for pos, i in enumerate(nl.entries):
        pi[i].append(pos)
    return pi


def rcf_weight(freq: int, len_i: int, len_j: int, windows: int = 1) -> float:
    """Relative co-occurrence frequency.

    ``freq / (len_i + len_j - freq)`` for a single window. When ``freq`` is
    summed over ``windows`` window sizes, each profile's positions are
    counted once per window: ``freq / (windows*(len_i + len_j) - freq)``.
    """
    denom = windows * (len_i + len_j) - freq
    if denom <= 0:
        raise DivisionDegenerate(
            f"RCF denominator is {denom} (freq={freq}, lengths={len_i},{len_j}, windows={windows})"
        )
    return freq / denom


def neighbor_frequencies(
    nl: NeighborList,
    pi: list[list[int]],
    collection: ProfileCollection,
    offsets: Iterable[int],
) -> list[tuple[int, int, int]]:
    """Count, per valid pair, how often the two profiles lie ``w`` apart for ``w`` in ``offsets``.

    Each profile looks left and right from every position it holds. A
    neighbor counts only if its id is smaller (dirty) or if it belongs to
    source 1 while the profile belongs to source 0 (clean-clean), so every
    pair is gathered from exactly one side. Returns ``(i, j, freq)`` with
    canonical ``(i, j)``.
    """
    entries = nl.entries
    n = len(entries)
    offsets = [w for w in offsets if 0 < w < n]
    out = []
    if collection.mode is ERMode.CLEAN_CLEAN:
        split = collection.split
        owners = range(split)
    else:
        split = None
        owners = range(len(collection))
    for i in owners:
        freq: dict[int, int] = {}
        for pos in pi[i]:
            for w in offsets:
                hi, lo = pos + w, pos - w
                if hi < n:
                    j = entries[hi]
                    if (j >= split) if split is not None else (j < i):
                        freq[j] = freq.get(j, 0) + 1
                if lo >= 0:
                    j = entries[lo]
                    if (j >= split) if split is not None else (j < i):
                        freq[j] = freq.get(j, 0) + 1
        for j, f in freq.items():
            out.append((i, j, f) if split is not None else (j, i, f))
    return out


def _weighted(counts, pi, windows: int = 1) -> list[Comparison]:
    return sort_comparisons(
        Comparison(i, j, rcf_weight(f, len(pi[i]), len(pi[j]), windows)) for i, j, f in counts
    )


def ls_psn_fill(nl: NeighborList, pi: list[list[int]], collection: ProfileCollection, w: int) -> list[Comparison]:
    """RCF-weighted comparisons of a single window size, best first."""
    if w < 1:
        raise ValueError("window size must be at least 1")
    return _weighted(neighbor_frequencies(nl, pi, collection, [w]), pi)


def gs_psn_comparisons(
    nl: NeighborList, pi: list[list[int]], collection: ProfileCollection, w_max: int
) -> list[Comparison]:
    """Every valid pair within distance ``w_max``, weighted once on its aggregate frequency."""
    if w_max < 1:
        raise ValueError("w_max must be at least 1")
    windows = max(1, min(w_max, len(nl) - 1))
    counts = neighbor_frequencies(nl, pi, collection, range(1, windows + 1))
    return _weighted(counts, pi, windows)


class LSPSN(ProgressiveEmitter):
    """Local order: the comparisons of one window size at a time, RCF-sorted.

    A pair may be emitted again at a later window size.
    """

    name = "ls-psn"

    def _initialize(self):
        self.nl = build_neighbor_list(self.collection)
        self.pi = build_position_index(self.nl, len(self.collection))
        self.window = 1
        self.buffer = deque(ls_psn_fill(self.nl, self.pi, self.collection, 1))
        return self._next()

    def _next(self):
        while not self.buffer:
            self.window += 1
            if self.window >= len(self.nl):
                return None
            self.buffer.extend(ls_psn_fill(self.nl, self.pi, self.collection, self.window))
        return self.buffer.popleft()


class GSPSN(ProgressiveEmitter):
    """Global order over window sizes ``1..w_max``; no pair is emitted twice."""

    name = "gs-psn"

    def __init__(self, collection, w_max: int = 20):
        super().__init__(collection)
        if w_max < 1:
            raise ValueError("w_max must be at least 1")
        self.w_max = w_max

    def _initialize(self):
        self.nl = build_neighbor_list(self.collection)
        self.pi = build_position_index(self.nl, len(self.collection))
        self.buffer = deque(gs_psn_comparisons(self.nl, self.pi, self.collection, self.w_max))
        return self._next()

    def _next(self):
        return self.buffer.popleft() if self.buffer else None
