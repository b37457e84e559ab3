"""Drive an emitter against ground truth and measure recall progressiveness."""

from __future__ import annotations

import csv
import math
import time
from dataclasses import dataclass, field

from .errors import EmptyGroundTruth
from .matching import Matcher, oracle_match
from .model import GroundTruth, ProgressiveEmitter

CHECKPOINTS = (1, 5, 10, 20)

CURVE_HEADER = ["k", "ec_star", "i", "j", "weight", "is_match", "recall", "cum_match_time_ns", "cum_emit_time_ns"]
SUMMARY_HEADER = ["method", "dataset", "init_time_ns"] + [f"auc_star@{c}" for c in CHECKPOINTS]


@dataclass(frozen=True)
class Budget:
    """Stop after ``ceil(max_ec_star * |D_P|)`` emissions; ``None`` means run to exhaustion."""

    max_ec_star: float | None = None

    def __post_init__(self):
        if self.max_ec_star is not None and not self.max_ec_star > 0:
            raise ValueError("max_ec_star must be positive")

    def limit(self, d_p: int) -> int | None:
        if self.max_ec_star is None:
            return None
        return math.ceil(round(self.max_ec_star * d_p, 9))


@dataclass(frozen=True)
class EmissionRecord:
    k: int
    i: int
    j: int
    weight: float
    is_match: bool
    cum_matches: int
    cum_match_time_ns: int
    cum_emit_time_ns: int


@dataclass
class RecallCurve:
    d_p: int
    records: list[EmissionRecord] = field(default_factory=list)
    init_time_ns: int = 0

    def __len__(self) -> int:
        return len(self.records)

    def recall(self, k: int) -> float:
        """Recall after ``k`` emissions; past the end of the curve the final recall holds."""
        if k <= 0 or not self.records:
            return 0.0
        rec = self.records[min(k, len(self.records)) - 1]
        return rec.cum_matches / self.d_p

    @property
    def final_recall(self) -> float:
        return self.recall(len(self.records))

    def recalls(self) -> list[float]:
        return [r.cum_matches / self.d_p for r in self.records]


def run_experiment(
    emitter: ProgressiveEmitter,
    gt: GroundTruth,
    matcher: Matcher | None = None,
    budget: Budget = Budget(),
) -> RecallCurve:
    """Pull emissions until the budget is spent or the emitter is exhausted.

    Recall comes from the oracle; the matcher only runs to charge its cost.
    A match re-emitted later counts toward ``ec`` but not toward recall.
    """
    if gt.size == 0:
        raise EmptyGroundTruth("ground truth holds no match")
    curve = RecallCurve(gt.size)
    limit = budget.limit(gt.size)
    profiles = emitter.collection.profiles
    found: set[tuple[int, int]] = set()
    match_ns = emit_ns = 0
    k = 0
    while limit is None or k < limit:
        t0 = time.perf_counter_ns()
        c = emitter.emit()
        elapsed = time.perf_counter_ns() - t0
        if k == 0:
            curve.init_time_ns = elapsed
        else:
            emit_ns += elapsed
        if c is None:
            break
        k += 1
        if matcher is not None:
            t0 = time.perf_counter_ns()
            matcher(profiles[c.i], profiles[c.j])
            match_ns += time.perf_counter_ns() - t0
        hit = oracle_match(c.pair, gt)
        if hit:
            found.add(emitter.collection.canonical(c.i, c.j))
        curve.records.append(EmissionRecord(k, c.i, c.j, c.weight, hit, len(found), match_ns, emit_ns))
    return curve


def _ec(ec_star: float, d_p: int) -> int:
    if not ec_star > 0:
        raise ValueError("ec_star must be positive")
    return math.floor(round(ec_star * d_p, 9))


def auc_at(curve: RecallCurve, ec_star: float) -> float:
    """Right-continuous step integral of recall over ``ec* in (0, ec_star]``."""
    ec = _ec(ec_star, curve.d_p)
    n = min(ec, len(curve.records))
    total = sum(curve.records[k].cum_matches for k in range(n)) / curve.d_p
    total += (ec - n) * curve.final_recall
    return total / curve.d_p


def ideal_auc(ec_star: float, d_p: int) -> float:
    if d_p < 1:
        raise ValueError("d_p must be at least 1")
    ec = _ec(ec_star, d_p)
    head = min(ec, d_p)
    total = head * (head + 1) / 2 / d_p + (ec - head)
    return total / d_p


def normalized_auc(curve: RecallCurve, ec_star: float) -> float:
    ideal = ideal_auc(ec_star, curve.d_p)
    if ideal == 0:
        raise ValueError(f"ec_star={ec_star} covers no emission for |D_P|={curve.d_p}")
    return auc_at(curve, ec_star) / ideal


def write_curve_csv(curve: RecallCurve, path, timing: bool = True) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CURVE_HEADER)
        for r in curve.records:
            w.writerow([
                r.k,
                repr(r.k / curve.d_p),
                r.i,
                r.j,
                repr(r.weight),
                int(r.is_match),
                repr(r.cum_matches / curve.d_p),
                r.cum_match_time_ns if timing else 0,
                r.cum_emit_time_ns if timing else 0,
            ])


def summary_row(method: str, dataset: str, curve: RecallCurve, timing: bool = True) -> list:
    return [method, dataset, curve.init_time_ns if timing else 0] + [
        repr(normalized_auc(curve, c)) for c in CHECKPOINTS
    ]


def write_summary_csv(rows, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SUMMARY_HEADER)
        w.writerows(rows)
