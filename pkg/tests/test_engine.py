from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from shinglejoin import (FilterStrategy, RecallAudit, ShingleProfiler, audit,
                         compare_results, jaccard, run)
from shinglejoin.datasets import make_corpus
from shinglejoin.similarity import SimilarityRecord
from conftest import profile, profiles_strategy
from oracles import brute_similar_pairs


def corpus_profiles(n, seed, k=4, **kw):
    kw.setdefault("length_range", (30, 400))
    kw.setdefault("duplicate_fraction", 0.5)
    texts, ids = make_corpus(n, random_state=seed, **kw)
    return ShingleProfiler(k=k).fit_transform(texts, doc_ids=ids)


@pytest.mark.parametrize("strategy", list(FilterStrategy))
def test_identical_documents(strategy):
    profiles = ShingleProfiler(k=2).fit_transform(["same text here"] * 2, doc_ids=["x", "y"])
    records, stats = run(profiles, strategy, 0.9)
    assert records == [SimilarityRecord("x", "y", 1.0)]
    assert stats.comparisons == 1 and stats.similar_pairs == 1 and stats.dismissed == 0


def test_matches_exhaustive_oracle_on_30_docs():
    profiles = corpus_profiles(30, seed=5)
    expected = brute_similar_pairs(profiles, 0.6)
    assert expected, "corpus should contain similar pairs"
    for strategy in (FilterStrategy.ALL_PAIRS, FilterStrategy.SET_LENGTH):
        records, _ = run(profiles, strategy, 0.6)
        assert {r.pair for r in records} == expected
    by_id = {p.doc_id: p for p in profiles}
    for r in records:
        assert r.score == jaccard(by_id[r.doc_a], by_id[r.doc_b])


@settings(max_examples=60)
@given(profiles_strategy(max_size=12), st.sampled_from([0.4, 0.6, 0.9]))
def test_subset_law_and_accounting(profiles, j):
    oracle, oracle_stats = run(profiles, FilterStrategy.ALL_PAIRS, j)
    n = sum(1 for p in profiles if p.entries)
    assert oracle_stats.comparisons == comb(n, 2)
    oracle_keys = {r.pair for r in oracle}
    assert oracle_keys == brute_similar_pairs(profiles, j)
    for strategy in (FilterStrategy.SET_LENGTH, FilterStrategy.WEIGHTED_LENGTH):
        records, stats = run(profiles, strategy, j)
        assert {r.pair for r in records} <= oracle_keys
        assert stats.comparisons + stats.dismissed == comb(n, 2)
        assert stats.similar_pairs == len(records) <= stats.comparisons
        assert stats.doc_count == len(profiles)
    set_stats = run(profiles, FilterStrategy.SET_LENGTH, j)[1]
    assert set_stats.comparisons <= oracle_stats.comparisons
    assert {r.pair for r in run(profiles, FilterStrategy.SET_LENGTH, j)[0]} == oracle_keys


def test_records_canonical_and_sorted():
    profiles = corpus_profiles(60, seed=8)
    records, _ = run(list(reversed(profiles)), FilterStrategy.WEIGHTED_LENGTH, 0.5)
    assert records == sorted(records)
    assert all(r.doc_a < r.doc_b for r in records)


def test_reproducible():
    profiles = corpus_profiles(80, seed=2)
    a_records, a_stats = run(profiles, FilterStrategy.WEIGHTED_LENGTH, 0.7)
    b_records, b_stats = run(profiles, FilterStrategy.WEIGHTED_LENGTH, 0.7)
    assert a_records == b_records
    assert (a_stats.comparisons, a_stats.dismissed) == (b_stats.comparisons, b_stats.dismissed)


@pytest.mark.parametrize("strategy", list(FilterStrategy))
def test_parallel_matches_serial(strategy):
    profiles = corpus_profiles(450, seed=9, length_range=(30, 200))
    serial, s_stats = run(profiles, strategy, 0.6, n_jobs=1)
    parallel, p_stats = run(profiles, strategy, 0.6, n_jobs=2)
    assert serial == parallel
    assert (s_stats.comparisons, s_stats.dismissed, s_stats.similar_pairs) == \
        (p_stats.comparisons, p_stats.dismissed, p_stats.similar_pairs)


def test_audit_adversarial(adversarial_profiles):
    result = audit(adversarial_profiles, FilterStrategy.WEIGHTED_LENGTH, 0.5)
    assert result.oracle_pairs == 1 and result.found_pairs == 0
    assert result.recall == 0.0
    assert result.missed == [SimilarityRecord("heavy", "light", 0.5)]


def test_audit_set_length_random_corpora():
    for seed in range(5):
        profiles = corpus_profiles(50, seed=seed)
        result = audit(profiles, FilterStrategy.SET_LENGTH, 0.7)
        assert result.recall == 1.0 and result.missed == []


@pytest.mark.parametrize("strategy", list(FilterStrategy))
def test_audit_no_similar_pairs(strategy):
    profiles = [profile("a", 1, [("x", 1)]), profile("b", 1, [("y", 1)])]
    result = audit(profiles, strategy, 0.9)
    assert result.oracle_pairs == 0 and result.recall == 1.0


def test_compare_results_rejects_extra_pairs():
    oracle = [SimilarityRecord("a", "b", 1.0)]
    with pytest.raises(RuntimeError):
        compare_results("set-length", oracle, oracle + [SimilarityRecord("a", "c", 1.0)])


def test_recall_audit_to_dict():
    a = RecallAudit(FilterStrategy.WEIGHTED_LENGTH, 4, 3, [SimilarityRecord("a", "b", 2 / 3)])
    assert a.recall == 0.75
    assert a.to_dict()["missed"] == [{"doc_a": "a", "doc_b": "b", "score": 0.666667}]


def test_empty_profiles_excluded_from_counts():
    profiles = [profile("a", 1, []), profile("b", 1, [("x", 1)]), profile("c", 1, [("x", 1)])]
    records, stats = run(profiles, FilterStrategy.ALL_PAIRS, 0.9)
    assert [r.pair for r in records] == [("b", "c")]
    assert stats.comparisons == 1 and stats.dismissed == 0 and stats.doc_count == 3
