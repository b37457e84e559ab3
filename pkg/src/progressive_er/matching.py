"""Match functions applied to emitted pairs, and the ground-truth oracle."""

from __future__ import annotations

import time
from collections.abc import Callable
from dataclasses import dataclass

from .blocking import tokenize
from .errors import InvalidPairError
from .model import Comparison, GroundTruth, Profile


@dataclass(frozen=True)
class MatchVerdict:
    is_match: bool
    score: float
    elapsed: float = 0.0


Matcher = Callable[[Profile, Profile], MatchVerdict]


def jaccard(a: set, b: set) -> float:
    if not a and not b:
        return 0.0
    return len(a & b) / len(a | b)


def jaccard_match(p_i: Profile, p_j: Profile, threshold: float = 0.5) -> MatchVerdict:
    start = time.perf_counter()
    score = jaccard(set(tokenize(p_i)), set(tokenize(p_j)))
    return MatchVerdict(score >= threshold, score, time.perf_counter() - start)


def damerau_levenshtein(s: str, t: str) -> int:
    """Unrestricted Damerau-Levenshtein distance (Lowrance-Wagner).

    Unlike optimal string alignment, substrings may be edited after a
    transposition, so the result is a metric.
    """
    if s == t:
        return 0
    n, m = len(s), len(t)
    if not n or not m:
        return n + m
    inf = n + m
    last_row: dict[str, int] = {}
    # d has a sentinel row and column at index 0 holding ``inf``.
    d = [[inf] * (m + 2) for _ in range(n + 2)]
    for i in range(n + 1):
        d[i + 1][1] = i
    for j in range(m + 1):
        d[1][j + 1] = j
    for i in range(1, n + 1):
        last_col = 0
        si = s[i - 1]
        for j in range(1, m + 1):
            i1 = last_row.get(t[j - 1], 0)
            j1 = last_col
            if si == t[j - 1]:
                cost = 0
                last_col = j
            else:
                cost = 1
            d[i + 1][j + 1] = min(
                d[i][j] + cost,
                d[i + 1][j] + 1,
                d[i][j + 1] + 1,
                d[i1][j1] + (i - i1 - 1) + 1 + (j - j1 - 1),
            )
        last_row[si] = i
    return d[n + 1][m + 1]


def profile_string(p: Profile) -> str:
    return " ".join(tokenize(p))


def edit_distance_match(p_i: Profile, p_j: Profile, threshold: int | None = None) -> MatchVerdict:
    """Damerau-Levenshtein distance between the token-sorted profile strings.

    Without a threshold the verdict is always negative; benchmarks take the
    verdict from the oracle and only use this for its cost.
    """
    start = time.perf_counter()
    score = damerau_levenshtein(profile_string(p_i), profile_string(p_j))
    is_match = threshold is not None and score <= threshold
    return MatchVerdict(is_match, float(score), time.perf_counter() - start)


MATCHERS: dict[str, Matcher | None] = {
    "jaccard": jaccard_match,
    "edit": edit_distance_match,
    "none": None,
}


def oracle_match(pair, gt: GroundTruth) -> bool:
    """Perfect matcher: is the (possibly non-canonical) pair a known match?"""
    if isinstance(pair, Comparison):
        pair = pair.pair
    try:
        return pair in gt
    except InvalidPairError:
        return False
