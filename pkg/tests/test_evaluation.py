import csv

import pytest
from hypothesis import given
from hypothesis import strategies as st

from progressive_er.blocking import blocking_workflow
from progressive_er.equality import PBS
from progressive_er.errors import EmptyGroundTruth
from progressive_er.evaluation import (
    CURVE_HEADER,
    SUMMARY_HEADER,
    Budget,
    EmissionRecord,
    RecallCurve,
    auc_at,
    ideal_auc,
    normalized_auc,
    run_experiment,
    summary_row,
    write_curve_csv,
    write_summary_csv,
)
from progressive_er.matching import jaccard_match
from progressive_er.model import Comparison, GroundTruth, ProgressiveEmitter
from progressive_er.naive import SAPSN

import oracles
from conftest import random_instance


class ListEmitter(ProgressiveEmitter):
    def __init__(self, collection, pairs):
        super().__init__(collection)
        self.pairs = list(pairs)

    def _initialize(self):
        return self._next()

    def _next(self):
        if not self.pairs:
            return None
        return Comparison(*self.pairs.pop(0), 1.0)


def curve_from_hits(hits, d_p):
    records, found = [], 0
    for k, hit in enumerate(hits, 1):
        found += hit
        records.append(EmissionRecord(k, 0, 1, 1.0, bool(hit), found, 0, 0))
    return RecallCurve(d_p, records)


def test_fixture_pbs_curve(fixture4, fixture4_gt):
    curve = run_experiment(PBS(fixture4), fixture4_gt)
    assert len(curve) == 4
    assert curve.recalls() == [0.5, 1.0, 1.0, 1.0]
    assert [r.is_match for r in curve.records] == [True, True, False, False]
    assert curve.init_time_ns > 0


def test_budget_stops_early(fixture4, fixture4_gt):
    assert len(run_experiment(PBS(fixture4), fixture4_gt, budget=Budget(1))) == 2
    assert len(run_experiment(PBS(fixture4), fixture4_gt, budget=Budget(100))) == 4
    assert Budget(0.6).limit(5) == 3
    with pytest.raises(ValueError):
        Budget(0)


def test_empty_ground_truth_rejected(fixture4):
    with pytest.raises(EmptyGroundTruth):
        run_experiment(PBS(fixture4), GroundTruth.from_pairs(fixture4, []))


def test_repeated_match_counts_once(fixture4, fixture4_gt):
    em = ListEmitter(fixture4, [(0, 1), (1, 0), (0, 1), (2, 3)])
    curve = run_experiment(em, fixture4_gt)
    assert [r.cum_matches for r in curve.records] == [1, 1, 1, 2]
    assert [r.is_match for r in curve.records] == [True, True, True, True]


def test_matcher_time_is_charged(fixture4, fixture4_gt):
    curve = run_experiment(PBS(fixture4), fixture4_gt, matcher=jaccard_match)
    assert curve.records[-1].cum_match_time_ns > 0
    assert curve.recalls() == [0.5, 1.0, 1.0, 1.0]


def test_auc_examples(fixture4, fixture4_gt):
    curve = run_experiment(PBS(fixture4), fixture4_gt)
    assert auc_at(curve, 1) == 0.75
    assert ideal_auc(1, 2) == 0.75
    assert ideal_auc(1, 1) == 1.0
    assert ideal_auc(2, 2) == 1.75
    assert normalized_auc(curve, 1) == 1.0
    misses = curve_from_hits([0, 0, 0], 2)
    assert auc_at(misses, 5) == 0.0
    assert normalized_auc(misses, 1) == 0.0


def test_auc_holds_final_recall_past_curve_end():
    curve = curve_from_hits([1], 2)
    # ec = 4: recalls 0.5, then 0.5 held for three more steps
    assert auc_at(curve, 2) == pytest.approx((0.5 * 4) / 2)


def test_ideal_curve_normalizes_to_one():
    for d_p in (1, 2, 7, 50):
        ideal = curve_from_hits([1] * d_p, d_p)
        for ec_star in (1, 5, 10, 20, 0.5, 2.5):
            if int(ec_star * d_p) == 0:
                continue
            assert abs(normalized_auc(ideal, ec_star) - 1.0) < 1e-12
            assert auc_at(ideal, ec_star) == pytest.approx(ideal_auc(ec_star, d_p), abs=1e-12)


def test_normalized_auc_needs_an_emission():
    with pytest.raises(ValueError):
        normalized_auc(curve_from_hits([1], 3), 0.2)


hit_lists = st.integers(1, 8).flatmap(
    lambda d_p: st.tuples(st.just(d_p), st.lists(st.booleans(), max_size=40))
)


def cap_hits(d_p, hits):
    out, found = [], 0
    for h in hits:
        h = h and found < d_p
        found += h
        out.append(h)
    return out


@given(hit_lists, st.sampled_from([0.5, 1, 2, 5, 10, 20]))
def test_normalized_auc_bounds(case, ec_star):
    d_p, hits = case
    hits = cap_hits(d_p, hits)
    if int(ec_star * d_p) == 0:
        return
    curve = curve_from_hits(hits, d_p)
    v = normalized_auc(curve, ec_star)
    assert -1e-12 <= v <= 1 + 1e-12
    ec = int(ec_star * d_p)
    head = min(ec, d_p)
    perfect = len(hits) >= head and all(hits[:head])
    assert (abs(v - 1) < 1e-12) == perfect


@given(hit_lists)
def test_auc_monotone_in_ec_star(case):
    d_p, hits = case
    curve = curve_from_hits(cap_hits(d_p, hits), d_p)
    values = [auc_at(curve, e) for e in (1, 2, 3, 5, 10, 20)]
    assert values == sorted(values)


@pytest.mark.parametrize("seed", range(10))
def test_same_eventual_quality(seed):
    coll, gt = random_instance(seed, max_n=80)
    blocks = blocking_workflow(coll)
    batch = oracles.all_block_pairs(coll, blocks)
    expected = len(batch & gt.matches) / gt.size
    curve = run_experiment(PBS(coll), gt)
    assert curve.final_recall == expected


def test_curve_and_summary_csv(tmp_path, fixture4, fixture4_gt):
    curve = run_experiment(SAPSN(fixture4), fixture4_gt, budget=Budget(2))
    path = tmp_path / "curve.csv"
    write_curve_csv(curve, path, timing=False)
    rows = list(csv.reader(open(path)))
    assert rows[0] == CURVE_HEADER
    assert len(rows) == 5
    assert rows[1][:7] == ["1", "0.5", "0", "1", "1.0", "1", "0.5"]
    assert rows[1][7:] == ["0", "0"]
    summary = tmp_path / "summary.csv"
    write_summary_csv([summary_row("sa-psn", "fx", curve, timing=False)], summary)
    rows = list(csv.reader(open(summary)))
    assert rows[0] == SUMMARY_HEADER
    assert rows[1][:3] == ["sa-psn", "fx", "0"]
