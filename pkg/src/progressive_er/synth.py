"""Seeded synthetic profile collections with planted duplicates."""

from __future__ import annotations

import csv
import math
import random
import string
from dataclasses import dataclass
from itertools import accumulate
from pathlib import Path

from .blocking import tokenize
from .ingestion import write_profiles_csv
from .model import ERMode, GroundTruth, Profile, ProfileCollection

ATTRIBUTES = ("title", "author", "venue", "year")


@dataclass(frozen=True)
class SynthConfig:
    n: int = 1000
    dup_rate: float = 0.1
    noise: float = 0.3
    seed: int = 0
    clean_clean: bool = False
    vocab_size: int = 4000

    def validate(self) -> None:
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if not 0 < self.dup_rate < 1:
            raise ValueError("dup_rate must lie in (0, 1)")
        if not 0 <= self.noise < 1:
            raise ValueError("noise must lie in [0, 1)")
        pairs = self.num_pairs
        if pairs < 1:
            raise ValueError(f"dup_rate={self.dup_rate} plants no duplicate among {self.n} profiles")
        room = self.n // 2
        if pairs > room:
            raise ValueError(f"{pairs} duplicate pairs do not fit in {self.n} profiles (max {room})")

    @property
    def num_pairs(self) -> int:
        return round(self.dup_rate * self.n)


class _Vocabulary:
    def __init__(self, rng: random.Random, size: int):
        self.rng = rng
        self.title = self._words(size, 4, 10)
        self.names = self._words(max(size // 5, 20), 3, 8)
        self.venues = self._words(40, 3, 7)
        zipf = [1.0 / (rank + 1) ** 0.8 for rank in range(len(self.title))]
        self._title_cum = list(accumulate(zipf))
        self._venue_cum = list(accumulate(1.0 / (rank + 1) for rank in range(len(self.venues))))

    def _words(self, count: int, lo: int, hi: int) -> list[str]:
        seen: set[str] = set()
        words = []
        while len(words) < count:
            w = "".join(self.rng.choices(string.ascii_lowercase, k=self.rng.randint(lo, hi)))
            if w not in seen:
                seen.add(w)
                words.append(w)
        return words

    def profile(self) -> list[tuple[str, str]]:
        rng = self.rng
        title = rng.choices(self.title, cum_weights=self._title_cum, k=rng.randint(3, 6))
        author = rng.sample(self.names, 2)
        venue = rng.choices(self.venues, cum_weights=self._venue_cum, k=rng.randint(1, 2))
        year = str(rng.randint(1950, 2020))
        return [
            ("title", " ".join(title)),
            ("author", " ".join(author)),
            ("venue", " ".join(venue)),
            ("year", year),
        ]


def _typo(rng: random.Random, token: str) -> str:
    alphabet = string.digits if token.isdigit() else string.ascii_lowercase
    k = rng.randrange(len(token))
    op = rng.randrange(4) if len(token) > 1 else rng.choice((0, 2))
    if op == 0:
        return token[:k] + rng.choice(alphabet) + token[k + 1 :]
    if op == 1:
        return token[:k] + token[k + 1 :]
    if op == 2:
        return token[:k] + rng.choice(alphabet) + token[k:]
    k = min(k, len(token) - 2)
    return token[:k] + token[k + 1] + token[k] + token[k + 2 :]


def perturb(rng: random.Random, attrs: list[tuple[str, str]], noise: float, vocab: _Vocabulary):
    """Replace ``floor(noise * T)`` of the ``T`` distinct tokens with unseen ones.

    Half of the replacements are typos of the original token, half are
    unrelated words, so at least ``T - floor(noise*T)`` tokens survive.
    """
    tokens = tokenize(Profile(0, 0, tuple(attrs)))
    count = math.floor(round(noise * len(tokens), 9))
    if count == 0:
        return list(attrs)
    taken = set(tokens)
    mapping = {}
    for old in rng.sample(tokens, count):
        for _ in range(100):
            new = _typo(rng, old) if rng.random() < 0.5 else rng.choice(vocab.title)
            if new and new not in taken:
                break
        else:
            new = f"{old}x{rng.randrange(10**6)}"
        taken.add(new)
        mapping[old] = new
    return [(name, " ".join(mapping.get(w, w) for w in value.split())) for name, value in attrs]


def synthesize(cfg: SynthConfig) -> tuple[ProfileCollection, GroundTruth]:
    """Fully seed-determined collection plus its ground truth.

    Dirty: ``n - m`` fresh profiles and ``m = round(dup_rate*n)`` perturbed
    copies of distinct originals, shuffled. Clean-clean: source 0 holds
    ``n - n//2`` fresh profiles, source 1 holds ``m`` copies and fresh
    fillers, each side shuffled.
    """
    cfg.validate()
    rng = random.Random(cfg.seed)
    vocab = _Vocabulary(rng, cfg.vocab_size)
    m = cfg.num_pairs
    if not cfg.clean_clean:
        originals = [vocab.profile() for _ in range(cfg.n - m)]
        chosen = rng.sample(range(len(originals)), m)
        rows = [(attrs, k) for k, attrs in enumerate(originals)]
        rows += [(perturb(rng, originals[k], cfg.noise, vocab), k) for k in chosen]
        order = list(range(len(rows)))
        rng.shuffle(order)
        position = {orig: pos for pos, orig in enumerate(order)}
        profiles = tuple(Profile(pos, 0, tuple(rows[orig][0])) for pos, orig in enumerate(order))
        pairs = [(position[k], position[len(originals) + t]) for t, k in enumerate(chosen)]
        coll = ProfileCollection(ERMode.DIRTY, profiles, tuple(str(p.id) for p in profiles))
        return coll, GroundTruth.from_pairs(coll, pairs)

    n0 = cfg.n - cfg.n // 2
    n1 = cfg.n // 2
    left = [vocab.profile() for _ in range(n0)]
    chosen = rng.sample(range(n0), m)
    right = [(perturb(rng, left[k], cfg.noise, vocab), k) for k in chosen]
    right += [(vocab.profile(), None) for _ in range(n1 - m)]
    order0 = list(range(n0))
    rng.shuffle(order0)
    rng.shuffle(right)
    pos0 = {orig: pos for pos, orig in enumerate(order0)}
    profiles = [Profile(pos, 0, tuple(left[orig])) for pos, orig in enumerate(order0)]
    pairs = []
    for attrs, k in right:
        if k is not None:
            pairs.append((pos0[k], len(profiles)))
        profiles.append(Profile(len(profiles), 1, tuple(attrs)))
    ext = tuple(str(p.id if p.source == 0 else p.id - n0) for p in profiles)
    coll = ProfileCollection(ERMode.CLEAN_CLEAN, tuple(profiles), ext)
    return coll, GroundTruth.from_pairs(coll, pairs)


def write_dataset(coll: ProfileCollection, gt: GroundTruth, out_dir, stem: str = "synth") -> list[Path]:
    """Write profile CSV(s) and a header-less ground-truth CSV of external ids."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    if coll.mode is ERMode.CLEAN_CLEAN:
        for source in (0, 1):
            path = out_dir / f"{stem}_{source}.csv"
            write_profiles_csv(coll, path, source)
            written.append(path)
    else:
        path = out_dir / f"{stem}.csv"
        write_profiles_csv(coll, path)
        written.append(path)
    gt_path = out_dir / f"{stem}_gt.csv"
    ext = coll.external_ids
    with open(gt_path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        for i, j in sorted(gt.matches):
            w.writerow([ext[i], ext[j]])
    written.append(gt_path)
    return written
