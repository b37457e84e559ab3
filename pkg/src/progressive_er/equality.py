"""Blocking-graph methods over redundancy-positive blocks: PBS and PPS.

The blocking graph is never materialized; edge weights are computed on
demand from the Profile Index.
"""

from __future__ import annotations

import heapq
from collections import deque
from collections.abc import Callable, Mapping, Sequence

from .blocking import BlockCollection, blocking_workflow, profile_blocks
from .errors import EmptyBlocks, NotCoOccurring, ZeroCardinalityBlock
from .model import Comparison, ProfileCollection, ProgressiveEmitter, sort_comparisons
from .naive import node_pairs

# A weighting scheme maps the cardinality of one shared block to that block's
# contribution; an edge weight is the sum over the blocks both profiles share.
WeightingScheme = Callable[[int], float]


def arcs(cardinality: int) -> float:
    if cardinality <= 0:
        raise ZeroCardinalityBlock("a shared block has no comparisons")
    return 1.0 / cardinality


def cbs(cardinality: int) -> float:
    """Common Blocks Scheme: every shared block counts 1."""
    return 1.0


SCHEMES: dict[str, WeightingScheme] = {"arcs": arcs, "cbs": cbs}


def block_scheduling(blocks: BlockCollection) -> BlockCollection:
    """Sort blocks by ascending cardinality (ties by key); list position becomes the block id."""
    ordered = tuple(sorted(blocks, key=lambda b: (b.cardinality, b.key)))
    return BlockCollection(ordered, blocks.mode, blocks.num_profiles, blocks.stage)


def build_profile_index(blocks: BlockCollection) -> list[list[int]]:
    return profile_blocks(blocks.blocks, blocks.num_profiles)


def lecobi(k: int, bi: Sequence[int], bj: Sequence[int]) -> bool:
    """True iff ``k`` is the least block id shared by both ascending lists."""
    x = y = 0
    while x < len(bi) and y < len(bj):
        a, b = bi[x], bj[y]
        if a == b:
            return a == k
        if a < b:
            x += 1
        else:
            y += 1
    raise NotCoOccurring("the two profiles share no block")


def edge_weight(
    bi: Sequence[int], bj: Sequence[int], cardinalities: Sequence[int], scheme: WeightingScheme = arcs
) -> float:
    """Sum of ``scheme(cardinality)`` over the block ids shared by both ascending lists."""
    total = 0.0
    x = y = 0
    while x < len(bi) and y < len(bj):
        a, b = bi[x], bj[y]
        if a == b:
            total += scheme(cardinalities[a])
            x += 1
            y += 1
        elif a < b:
            x += 1
        else:
            y += 1
    return total


def arcs_weight(bi: Sequence[int], bj: Sequence[int], cardinalities: Sequence[int]) -> float:
    return edge_weight(bi, bj, cardinalities, arcs)


def duplication_likelihood(weights: Mapping[int, float]) -> float:
    """Average weight of a node's incident edges; 0 for an isolated node."""
    if not weights:
        return 0.0
    return sum(weights[j] for j in sorted(weights)) / len(weights)


class BoundedTopK:
    """Keeps the ``capacity`` best comparisons pushed so far.

    Ranking matches the comparison lists: higher weight first, then smaller
    ``(i, j)``. The heap root is the current worst item.
    """

    def __init__(self, capacity: int):
        if capacity < 1:
            raise ValueError("capacity must be at least 1")
        self.capacity = capacity
        self._heap: list[tuple[float, int, int]] = []

    def __len__(self) -> int:
        return len(self._heap)

    def push(self, c: Comparison) -> None:
        item = (c.weight, -c.i, -c.j)
        if len(self._heap) < self.capacity:
            heapq.heappush(self._heap, item)
        elif item > self._heap[0]:
            heapq.heapreplace(self._heap, item)

    def sorted(self) -> list[Comparison]:
        return sort_comparisons(Comparison(-i, -j, w) for w, i, j in self._heap)


class _GraphEmitter(ProgressiveEmitter):
    def __init__(
        self,
        collection: ProfileCollection,
        scheme: WeightingScheme = arcs,
        purge_ratio: float | None = 0.10,
        filter_ratio: float | None = 0.80,
        blocks: BlockCollection | None = None,
    ):
        super().__init__(collection)
        self.scheme = scheme
        self.purge_ratio = purge_ratio
        self.filter_ratio = filter_ratio
        self._given_blocks = blocks

    def _build(self):
        blocks = self._given_blocks
        if blocks is None:
            blocks = blocking_workflow(self.collection, self.purge_ratio, self.filter_ratio)
        if len(blocks) == 0:
            raise EmptyBlocks(f"{self.name}: blocking produced no blocks")
        self.blocks = block_scheduling(blocks)
        self.profile_index = build_profile_index(self.blocks)
        self.cardinalities = [b.cardinality for b in self.blocks]


class PBS(_GraphEmitter):
    """Progressive Block Scheduling: smallest blocks first, new pairs by edge weight."""

    name = "pbs"

    def _initialize(self):
        self._build()
        self._next_block = 0
        self.buffer: deque[Comparison] = deque()
        return self._next()

    def _next(self):
        while not self.buffer:
            if self._next_block >= len(self.blocks):
                return None
            self.buffer.extend(self.block_comparisons(self._next_block))
            self._next_block += 1
        return self.buffer.popleft()

    def block_comparisons(self, k: int) -> list[Comparison]:
        """Comparisons first met in block ``k``, best first."""
        pri = self.profile_index
        found = []
        for i, j in node_pairs(self.blocks[k].members, self.collection):
            if lecobi(k, pri[i], pri[j]):
                found.append(Comparison(i, j, edge_weight(pri[i], pri[j], self.cardinalities, self.scheme)))
        return sort_comparisons(found)


class PPS(_GraphEmitter):
    """Progressive Profile Scheduling.

    Emits every node's top edge first, then walks profiles by decreasing
    duplication likelihood emitting up to ``k_max`` edges each. Neighbors
    already walked and pairs emitted at initialization are skipped, so no
    pair repeats.
    """

    name = "pps"

    def __init__(self, collection, k_max: int = 10, **kwargs):
        super().__init__(collection, **kwargs)
        if k_max < 1:
            raise ValueError("k_max must be at least 1")
        self.k_max = k_max

    def neighbor_weights(self, i: int, skip=frozenset()) -> dict[int, float]:
        coll = self.collection
        weights: dict[int, float] = {}
        for k in self.profile_index[i]:
            term = self.scheme(self.cardinalities[k])
            for j in self.blocks[k].members:
                if j in skip or not coll.is_valid_pair(i, j):
                    continue
                weights[j] = weights.get(j, 0.0) + term
        return weights

    def _initialize(self):
        self._build()
        coll = self.collection
        tops: dict[tuple[int, int], Comparison] = {}
        likelihood = []
        for p in coll:
            weights = self.neighbor_weights(p.id)
            best = None
            for j in sorted(weights):
                if best is None or best[1] < weights[j]:
                    best = (j, weights[j])
            if best is not None:
                pair = coll.canonical(p.id, best[0])
                tops[pair] = Comparison(*pair, best[1])
            likelihood.append((duplication_likelihood(weights), p.id))
        self.init_pairs = frozenset(tops)
        self.init_buffer = tuple(sort_comparisons(tops.values()))
        self.buffer = deque(self.init_buffer)
        likelihood.sort(key=lambda t: (-t[0], t[1]))
        self.sorted_profiles = [i for _, i in likelihood]
        self.likelihoods = {i: lk for lk, i in likelihood}
        self._cursor = 0
        self.checked: set[int] = set()
        return self._next()

    def _next(self):
        coll = self.collection
        while not self.buffer:
            if self._cursor >= len(self.sorted_profiles):
                return None
            i = self.sorted_profiles[self._cursor]
            self._cursor += 1
            self.checked.add(i)
            top = BoundedTopK(self.k_max)
            for j, w in sorted(self.neighbor_weights(i, self.checked).items()):
                pair = coll.canonical(i, j)
                if pair not in self.init_pairs:
                    top.push(Comparison(*pair, w))
            self.buffer.extend(top.sorted())
        return self.buffer.popleft()
