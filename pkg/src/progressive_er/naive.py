"""Baseline schema-agnostic progressive methods: SA-PSN and SA-PSAB.

Neither keeps track of past emissions, so both may repeat comparisons.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations, product

from .blocking import build_neighbor_list, make_block, purge_threshold, suffixes, tokenize
from .model import Comparison, ERMode, ProfileCollection, ProgressiveEmitter


class SAPSN(ProgressiveEmitter):
    """Sliding window of growing size over the schema-agnostic Neighbor List.

    Emits ``(NL[pos], NL[pos+w])`` left to right for ``w = 1, 2, ...``;
    the weight is ``1/w``.
    """

    name = "sa-psn"

    def _initialize(self):
        self.nl = build_neighbor_list(self.collection)
        self.window = 1
        self.cursor = 0
        return self._next()

    def _next(self):
        entries = self.nl.entries
        n = len(entries)
        coll = self.collection
        while self.window < n:
            w = self.window
            while self.cursor + w < n:
                a, b = entries[self.cursor], entries[self.cursor + w]
                self.cursor += 1
                if coll.is_valid_pair(a, b):
                    i, j = coll.canonical(a, b)
                    return Comparison(i, j, 1.0 / w)
            self.window += 1
            self.cursor = 0
        return None


@dataclass(frozen=True)
class SuffixNode:
    suffix: str
    members: tuple[int, ...]
    cardinality: int


def build_suffix_forest(
    collection: ProfileCollection, l_min: int = 2, purge_ratio: float | None = 0.10
) -> list[SuffixNode]:
    """Suffix blocks in processing order: longest suffix first, then smallest.

    Nodes yielding no comparison are dropped; with ``purge_ratio`` set, nodes
    bigger than the Block Purging limit are dropped as well.
    """
    index: dict[str, set[int]] = defaultdict(set)
    for p in collection:
        for token in tokenize(p):
            for s in suffixes(token, l_min):
                index[s].add(p.id)
    limit = purge_threshold(len(collection), purge_ratio) if purge_ratio is not None else None
    nodes = []
    for s, members in index.items():
        if limit is not None and len(members) > limit:
            continue
        block = make_block(s, members, collection)
        if block.cardinality > 0:
            nodes.append(SuffixNode(s, block.members, block.cardinality))
    nodes.sort(key=lambda nd: (-len(nd.suffix), nd.cardinality, nd.suffix))
    return nodes


def node_pairs(node_members, collection: ProfileCollection):
    """Valid pairs of a block in ascending (i, j) order."""
    if collection.mode is ERMode.CLEAN_CLEAN:
        split = collection.split
        left = [i for i in node_members if i < split]
        right = [i for i in node_members if i >= split]
        return product(left, right)
    return combinations(node_members, 2)


class SAPSAB(ProgressiveEmitter):
    """Suffix-forest blocks processed leaves first, root last."""

    name = "sa-psab"

    def __init__(self, collection, l_min: int = 2, purge_ratio: float | None = 0.10):
        super().__init__(collection)
        if l_min < 1:
            raise ValueError("l_min must be at least 1")
        self.l_min = l_min
        self.purge_ratio = purge_ratio

    def _initialize(self):
        self.forest = build_suffix_forest(self.collection, self.l_min, self.purge_ratio)
        self._node = 0
        self._pairs = iter(())
        return self._next()

    def _next(self):
        while True:
            pair = next(self._pairs, None)
            if pair is not None:
                return Comparison(*pair, 1.0 / self.forest[self._node - 1].cardinality)
            if self._node >= len(self.forest):
                return None
            self._pairs = node_pairs(self.forest[self._node].members, self.collection)
            self._node += 1
