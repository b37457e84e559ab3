from itertools import islice

import pytest

from progressive_er.blocking import build_neighbor_list, suffixes, tokenize
from progressive_er.model import ERMode, ProfileCollection
from progressive_er.naive import SAPSAB, SAPSN, build_suffix_forest

import oracles
from conftest import random_instance


def pairs(emitter, n=None):
    return [c.pair for c in islice(emitter, n)]


def test_sa_psn_fixture_first_emissions(fixture4):
    em = SAPSN(fixture4)
    out = list(islice(em, 6))
    assert [c.pair for c in out[:5]] == [(0, 1), (1, 2), (2, 3), (0, 3), (0, 1)]
    assert all(c.weight == 1.0 for c in out[:5])


def test_sa_psn_degenerate_lists():
    assert SAPSN(ProfileCollection.from_values([["a"]])).emit() is None
    one_profile = SAPSN(ProfileCollection.from_values([["a b c"]]))
    assert one_profile.emit() is None and one_profile.emit() is None


def test_sa_psn_window_grows(fixture4):
    weights = [c.weight for c in SAPSN(fixture4)]
    assert weights == sorted(weights, reverse=True)
    assert weights[-1] == pytest.approx(1 / 7)


@pytest.mark.parametrize("seed", range(12))
def test_sa_psn_covers_all_position_pairs(seed):
    coll, _ = random_instance(seed, max_n=40)
    emitted = [c.pair for c in SAPSN(coll)]
    entries = build_neighbor_list(coll).entries
    expected = oracles.nl_position_pairs(coll, entries)
    # one emission per valid pair of positions, so repeats are counted exactly
    assert len(emitted) == sum(expected.values())
    assert set(emitted) == set(expected)


def test_suffix_forest_fixture(fixture4):
    forest = build_suffix_forest(fixture4, 2)
    assert forest[0].suffix == "smith" and forest[0].members == (0, 1, 3)
    assert [n.suffix for n in forest[1:4]] == ["john", "mary", "mith"]
    lengths = [len(n.suffix) for n in forest]
    assert lengths == sorted(lengths, reverse=True)
    # jones, ones, nes, es belong to a single profile
    assert "jones" not in {n.suffix for n in forest}


def test_sa_psab_fixture_first_node(fixture4):
    assert pairs(SAPSAB(fixture4), 3) == [(0, 1), (0, 3), (1, 3)]


def test_sa_psab_single_node_and_unique_suffixes():
    one = SAPSAB(ProfileCollection.from_values([["xy"], ["xy"]]))
    assert pairs(one) == [(0, 1)]
    unique = SAPSAB(ProfileCollection.from_values([["abc"], ["xyz"], ["pqr"]]))
    assert pairs(unique) == []


def brute_forest_pairs(coll, l_min):
    owners = {}
    for p in coll:
        for t in tokenize(p):
            for s in suffixes(t, l_min):
                owners.setdefault(s, set()).add(p.id)
    out = set()
    for members in owners.values():
        out |= oracles.block_pairs(coll, sorted(members))
    return out


@pytest.mark.parametrize("seed", range(12))
def test_sa_psab_emission_set_equals_forest_union(seed):
    coll, _ = random_instance(seed, max_n=40)
    # no purging so the brute force sees the same nodes
    emitted = set(pairs(SAPSAB(coll, l_min=2, purge_ratio=None)))
    assert emitted == brute_forest_pairs(coll, 2)


def test_sa_psab_purging_drops_huge_nodes():
    coll = ProfileCollection.from_values([["common"]] * 12 + [["rare"], ["rare"]])
    with_purge = set(pairs(SAPSAB(coll)))
    assert with_purge == {(12, 13)}
    assert len(set(pairs(SAPSAB(coll, purge_ratio=None)))) == 66 + 1


def test_sa_psab_clean_clean():
    coll = ProfileCollection.from_values([["smith"], ["smyth"]], [["smith"]])
    assert coll.mode is ERMode.CLEAN_CLEAN
    # smith, mith, ith hold {0,2}; the root "th" holds {0,1,2}
    assert pairs(SAPSAB(coll)) == [(0, 2), (0, 2), (0, 2), (0, 2), (1, 2)]
