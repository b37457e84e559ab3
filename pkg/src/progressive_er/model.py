"""Domain types shared by every method, plus the progressive-emitter contract."""

from __future__ import annotations

import enum
from abc import ABC, abstractmethod
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import SamePair, SameSource


class ERMode(enum.Enum):
    DIRTY = "dirty"
    CLEAN_CLEAN = "clean-clean"


@dataclass(frozen=True)
class Profile:
    id: int
    source: int
    attributes: tuple[tuple[str, str], ...]

    def values(self) -> list[str]:
        return [value for _, value in self.attributes]


@dataclass(frozen=True)
class ProfileCollection:
    """Profiles with dense ids; in clean-clean mode source 0 occupies ``0..count0-1``."""

    mode: ERMode
    profiles: tuple[Profile, ...]
    external_ids: tuple[str, ...] = ()

    def __post_init__(self):
        for pos, p in enumerate(self.profiles):
            if p.id != pos:
                raise ValueError(f"profile ids must be dense: position {pos} holds id {p.id}")
        sources = [p.source for p in self.profiles]
        if self.mode is ERMode.DIRTY:
            if any(sources):
                raise ValueError("dirty collections hold source-0 profiles only")
        else:
            if sources != sorted(sources) or set(sources) != {0, 1}:
                raise ValueError("clean-clean collections need both sources, source 0 first")
        if self.external_ids and len(self.external_ids) != len(self.profiles):
            raise ValueError("external_ids must align with profiles")

    @classmethod
    def from_values(cls, rows: Sequence[Sequence[str]], second: Sequence[Sequence[str]] | None = None):
        """Build a collection from bare value lists (attribute names ``a0, a1, ...``).

        Handy for fixtures: ``from_values([["john smith"], ["mary jones"]])``.
        """
        groups = [rows] if second is None else [rows, second]
        profiles = []
        for source, group in enumerate(groups):
            for values in group:
                attrs = tuple((f"a{k}", v) for k, v in enumerate(values))
                profiles.append(Profile(len(profiles), source, attrs))
        mode = ERMode.DIRTY if second is None else ERMode.CLEAN_CLEAN
        return cls(mode, tuple(profiles), tuple(str(p.id) for p in profiles))

    def __len__(self) -> int:
        return len(self.profiles)

    def __iter__(self) -> Iterator[Profile]:
        return iter(self.profiles)

    def __getitem__(self, i: int) -> Profile:
        return self.profiles[i]

    @property
    def source_counts(self) -> tuple[int, int]:
        n1 = sum(1 for p in self.profiles if p.source == 1)
        return len(self.profiles) - n1, n1

    @property
    def split(self) -> int:
        """First id of source 1 (== len for dirty collections)."""
        return self.source_counts[0]

    def source_of(self, i: int) -> int:
        return self.profiles[i].source

    def is_valid_pair(self, i: int, j: int) -> bool:
        if i == j:
            return False
        if self.mode is ERMode.CLEAN_CLEAN:
            return self.profiles[i].source != self.profiles[j].source
        return True

    def canonical(self, i: int, j: int) -> tuple[int, int]:
        return canonicalize(i, j, self.mode, self.split)


class Comparison(NamedTuple):
    i: int
    j: int
    weight: float

    @property
    def pair(self) -> tuple[int, int]:
        return self.i, self.j


@dataclass(frozen=True)
class GroundTruth:
    mode: ERMode
    split: int
    matches: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    @property
    def size(self) -> int:
        return len(self.matches)

    def __len__(self) -> int:
        return len(self.matches)

    def __contains__(self, pair) -> bool:
        i, j = pair[0], pair[1]
        if i == j:
            return False
        try:
            return canonicalize(i, j, self.mode, self.split) in self.matches
        except SameSource:
            return False

    @classmethod
    def from_pairs(cls, collection: ProfileCollection, pairs: Iterable[tuple[int, int]]) -> GroundTruth:
        canon = {collection.canonical(i, j) for i, j in pairs}
        return cls(collection.mode, collection.split, frozenset(canon))


def canonicalize(i: int, j: int, mode: ERMode, split: int = 0) -> tuple[int, int]:
    """Order a pair: ascending ids when dirty, source-0 id first when clean-clean.

    ``split`` is the first id of source 1 and is ignored in dirty mode.
    """
    if i == j:
        raise SamePair(f"cannot compare profile {i} with itself")
    if mode is ERMode.CLEAN_CLEAN:
        si, sj = i >= split, j >= split
        if si == sj:
            raise SameSource(f"profiles {i} and {j} come from the same source")
        return (i, j) if not si else (j, i)
    return (i, j) if i < j else (j, i)


def block_cardinality(members_by_source: Sequence[Sequence[int]], mode: ERMode) -> int:
    """Number of comparisons a block entails.

    ``members_by_source`` holds the member ids of source 0 and, optionally,
    source 1. Dirty blocks yield ``C(|b|, 2)``; clean-clean blocks the cross
    product of both sides.
    """
    sizes = [len(ids) for ids in members_by_source]
    if mode is ERMode.CLEAN_CLEAN:
        if len(sizes) < 2:
            return 0
        return sizes[0] * sizes[1]
    n = sum(sizes)
    return n * (n - 1) // 2


def ranking_key(c: Comparison):
    return -c.weight, c.i, c.j


def sort_comparisons(comparisons: Iterable[Comparison]) -> list[Comparison]:
    """Descending weight, ties by ascending ``(i, j)``."""
    return sorted(comparisons, key=ranking_key)


class ProgressiveEmitter(ABC):
    """A progressive method: one initialization, then repeated emission.

    ``emit()`` returns the next best comparison or ``None`` once the method is
    exhausted; the first call runs the initialization phase. Exhaustion is
    sticky. Iterating an emitter drains it.
    """

    name = "emitter"

    def __init__(self, collection: ProfileCollection):
        self.collection = collection
        self._initialized = False
        self._exhausted = False

    @property
    def initialized(self) -> bool:
        return self._initialized

    @property
    def exhausted(self) -> bool:
        return self._exhausted

    def initialize(self) -> Comparison | None:
        if self._initialized:
            raise RuntimeError(f"{self.name} is already initialized")
        self._initialized = True
        first = self._initialize()
        if first is None:
            self._exhausted = True
        return first

    def emit(self) -> Comparison | None:
        if not self._initialized:
            return self.initialize()
        if self._exhausted:
            return None
        nxt = self._next()
        if nxt is None:
            self._exhausted = True
        return nxt

    def __iter__(self) -> Iterator[Comparison]:
        while (c := self.emit()) is not None:
            yield c

    @abstractmethod
    def _initialize(self) -> Comparison | None: ...

    @abstractmethod
    def _next(self) -> Comparison | None: ...
