"""Schema-agnostic blocking keys, the Token Blocking workflow and the Neighbor List."""

from __future__ import annotations

import math
import re
from collections import defaultdict
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .model import ERMode, Profile, ProfileCollection, block_cardinality

_SPLIT = re.compile(r"[\W_]+")

PURGE_FLOOR = 10

# Workflow stages; purging and filtering must run in this order.
RAW, PURGED, FILTERED = "raw", "purged", "filtered"


def tokenize(profile: Profile) -> list[str]:
    """Distinct lowercase alphanumeric tokens of all attribute values, sorted."""
    tokens = set()
    for _, value in profile.attributes:
        tokens.update(t for t in _SPLIT.split(value.lower()) if t)
    return sorted(tokens)


def ratio_count(ratio: float, n: int) -> int:
    """``ceil(ratio * n)`` robust to binary rounding (0.1 * 30 is 3, not 4)."""
    return math.ceil(round(ratio * n, 9))


@dataclass(frozen=True)
class Block:
    key: str
    members: tuple[int, ...]
    cardinality: int

    def __len__(self) -> int:
        return len(self.members)


def make_block(key: str, members: Iterable[int], collection: ProfileCollection) -> Block:
    ids = tuple(sorted(set(members)))
    split = collection.split
    if collection.mode is ERMode.CLEAN_CLEAN:
        by_source = ([i for i in ids if i < split], [i for i in ids if i >= split])
    else:
        by_source = (ids,)
    return Block(key, ids, block_cardinality(by_source, collection.mode))


@dataclass(frozen=True)
class BlockCollection:
    blocks: tuple[Block, ...]
    mode: ERMode
    num_profiles: int
    stage: str = RAW

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __getitem__(self, k: int) -> Block:
        return self.blocks[k]

    @property
    def aggregate_cardinality(self) -> int:
        return sum(b.cardinality for b in self.blocks)

    @property
    def total_size(self) -> int:
        return sum(len(b) for b in self.blocks)

    def by_key(self) -> dict[str, Block]:
        return {b.key: b for b in self.blocks}


def _collect(collection: ProfileCollection, index: dict[str, list[int]], stage: str) -> BlockCollection:
    blocks = []
    for key in sorted(index):
        block = make_block(key, index[key], collection)
        if block.cardinality > 0:
            blocks.append(block)
    return BlockCollection(tuple(blocks), collection.mode, len(collection), stage)


def token_blocking(collection: ProfileCollection) -> BlockCollection:
    """One block per attribute-value token; blocks yielding no comparison are dropped."""
    index: dict[str, list[int]] = defaultdict(list)
    for p in collection:
        for token in tokenize(p):
            index[token].append(p.id)
    return _collect(collection, index, RAW)


def purge_threshold(num_profiles: int, ratio: float) -> int:
    return max(ratio_count(ratio, num_profiles), PURGE_FLOOR)


def block_purging(blocks: BlockCollection, ratio: float = 0.10) -> BlockCollection:
    """Drop blocks holding more than ``max(ceil(ratio*|P|), 10)`` profiles."""
    if not 0 < ratio <= 1:
        raise ValueError(f"purge ratio must lie in (0, 1], got {ratio}")
    if blocks.stage != RAW:
        raise ValueError(f"block purging expects raw token blocks, got stage {blocks.stage!r}")
    limit = purge_threshold(blocks.num_profiles, ratio)
    kept = tuple(b for b in blocks if len(b) <= limit)
    return BlockCollection(kept, blocks.mode, blocks.num_profiles, PURGED)


def block_filtering(
    blocks: BlockCollection, collection: ProfileCollection, ratio: float = 0.80
) -> BlockCollection:
    """Keep each profile only in the ``ceil(ratio*|B_i|)`` smallest of its blocks.

    Block size is measured by cardinality, ties by key. Blocks left without
    any comparison are dropped.
    """
    if not 0 < ratio <= 1:
        raise ValueError(f"filter ratio must lie in (0, 1], got {ratio}")
    if blocks.stage != PURGED:
        raise ValueError(f"block filtering expects purged blocks, got stage {blocks.stage!r}")
    per_profile: dict[int, list[Block]] = defaultdict(list)
    for b in blocks:
        for i in b.members:
            per_profile[i].append(b)
    index: dict[str, list[int]] = defaultdict(list)
    for i, mine in per_profile.items():
        mine.sort(key=lambda b: (b.cardinality, b.key))
        for b in mine[: ratio_count(ratio, len(mine))]:
            index[b.key].append(i)
    return _collect(collection, index, FILTERED)


def blocking_workflow(
    collection: ProfileCollection,
    purge_ratio: float | None = 0.10,
    filter_ratio: float | None = 0.80,
) -> BlockCollection:
    """Token Blocking, then Block Purging, then Block Filtering.

    Passing ``None`` for a ratio skips that step while keeping the order.
    """
    blocks = token_blocking(collection)
    if purge_ratio is not None:
        blocks = block_purging(blocks, purge_ratio)
    else:
        blocks = BlockCollection(blocks.blocks, blocks.mode, blocks.num_profiles, PURGED)
    if filter_ratio is not None:
        blocks = block_filtering(blocks, collection, filter_ratio)
    return blocks


@dataclass(frozen=True)
class NeighborList:
    entries: tuple[int, ...]
    keys: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, pos: int) -> int:
        return self.entries[pos]


def build_neighbor_list(collection: ProfileCollection) -> NeighborList:
    """All (token, profile) occurrences sorted by token, then source, then id."""
    occurrences = []
    for p in collection:
        for token in tokenize(p):
            occurrences.append((token, p.source, p.id))
    occurrences.sort()
    return NeighborList(tuple(o[2] for o in occurrences), tuple(o[0] for o in occurrences))


def suffixes(token: str, l_min: int) -> list[str]:
    """Suffixes of ``token`` with at least ``l_min`` characters, longest first."""
    if l_min < 1:
        raise ValueError("l_min must be at least 1")
    return [token[k:] for k in range(0, len(token) - l_min + 1)]


def profile_blocks(blocks: Sequence[Block], num_profiles: int) -> list[list[int]]:
    """Inverted index from profile id to the positions of the blocks holding it."""
    index: list[list[int]] = [[] for _ in range(num_profiles)]
    for k, b in enumerate(blocks):
        for i in b.members:
            index[i].append(k)
    return index
