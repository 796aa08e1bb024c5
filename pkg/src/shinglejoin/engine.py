"""Scoring pipeline and recall auditing.

:func:`run` sorts the profiles by the strategy's length key, scans the
admitted candidates and scores each one exactly.  :func:`audit` measures how
many of the exhaustive run's similar pairs a pruning strategy keeps.
"""
from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from ._validation import check_profiles, threshold_ratio
from .filters import FilterStrategy, scan_end, sorted_profiles
from .shingles import ShingleProfile
from .similarity import SimilarityRecord

log = logging.getLogger(__name__)

# below this many rows a process pool costs more than it saves
_MIN_ROWS_PER_JOB = 200


@dataclass(frozen=True)
class RunStats:
    strategy: FilterStrategy
    comparisons: int
    dismissed: int
    similar_pairs: int
    wall_time_ms: int
    doc_count: int

    def to_dict(self) -> dict:
        return {
            "strategy": self.strategy.value,
            "doc_count": self.doc_count,
            "comparisons": self.comparisons,
            "dismissed": self.dismissed,
            "similar_pairs": self.similar_pairs,
            "wall_time_ms": self.wall_time_ms,
        }


@dataclass(frozen=True)
class RecallAudit:
    strategy: FilterStrategy
    oracle_pairs: int
    found_pairs: int
    missed: list[SimilarityRecord] = field(default_factory=list)

    @property
    def recall(self) -> float:
        if self.oracle_pairs == 0:
            return 1.0
        return self.found_pairs / self.oracle_pairs

    def to_dict(self) -> dict:
        return {
            "strategy": self.strategy.value,
            "oracle_pairs": self.oracle_pairs,
            "found_pairs": self.found_pairs,
            "recall": self.recall,
            "missed": [
                {"doc_a": r.doc_a, "doc_b": r.doc_b, "score": round(r.score, 6)}
                for r in self.missed
            ],
        }


# Worker state for the process pool; set once per worker by _init_worker.
_rows: list = []
_keys: list = []


def _init_worker(rows, keys):
    global _rows, _keys
    _rows, _keys = rows, keys


def _score_rows(start: int, stop: int, num: int, den: int, strategy: FilterStrategy,
                rows=None, keys=None) -> tuple[int, list[tuple[str, str, int, int]]]:
    """Scan and score rows ``start:stop``; return (comparisons, hits)."""
    rows = _rows if rows is None else rows
    keys = _keys if keys is None else keys
    comparisons = 0
    hits = []
    for i in range(start, stop):
        id_s, set_s, len_s = rows[i]
        end = scan_end(keys, i, num, den, strategy)
        comparisons += end - i - 1
        for m in range(i + 1, end):
            id_t, set_t, len_t = rows[m]
            inter = len(set_s & set_t)
            union = len_s + len_t - inter
            # inter / union >= num / den, kept in integers
            if inter * den >= num * union:
                hits.append((id_s, id_t, inter, union))
    return comparisons, hits


def _chunks(n: int, jobs: int) -> list[tuple[int, int]]:
    # rows near the front scan further, so interleave small slices
    size = max(1, n // (jobs * 8))
    return [(lo, min(n, lo + size)) for lo in range(0, n, size)]


def run(profiles: Sequence[ShingleProfile], strategy: FilterStrategy | str, j: float,
        n_jobs: int = 1) -> tuple[list[SimilarityRecord], RunStats]:
    """Find every admitted pair with Jaccard similarity of at least ``j``.

    Records come back canonical and sorted by ``(doc_a, doc_b)``.  Results
    and counts do not depend on ``n_jobs``.
    """
    strategy = FilterStrategy.parse(strategy)
    profiles = check_profiles(profiles)
    num, den = threshold_ratio(j)
    empty = [p.doc_id for p in profiles if p.is_empty]
    if empty:
        log.warning("excluding %d empty profile(s) from candidate generation", len(empty))

    t0 = time.perf_counter()
    keyed = sorted_profiles(profiles, strategy)
    keys = [key for key, _ in keyed]
    rows = [(p.doc_id, p.shingle_set, p.set_length) for _, p in keyed]
    n = len(rows)

    jobs = max(1, min(n_jobs or 1, n // _MIN_ROWS_PER_JOB))
    if jobs == 1:
        comparisons, hits = _score_rows(0, n, num, den, strategy, rows, keys)
    else:
        comparisons, hits = 0, []
        with ProcessPoolExecutor(jobs, initializer=_init_worker,
                                 initargs=(rows, keys)) as pool:
            futures = [pool.submit(_score_rows, lo, hi, num, den, strategy)
                       for lo, hi in _chunks(n, jobs)]
            for fut in futures:
                c, h = fut.result()
                comparisons += c
                hits.extend(h)
    records = sorted(SimilarityRecord.of(a, b, inter / union) for a, b, inter, union in hits)
    elapsed = time.perf_counter() - t0

    stats = RunStats(
        strategy=strategy,
        comparisons=comparisons,
        dismissed=comb(n, 2) - comparisons,
        similar_pairs=len(records),
        wall_time_ms=int(round(elapsed * 1000)),
        doc_count=len(profiles),
    )
    return records, stats


def compare_results(strategy: FilterStrategy | str, oracle: Sequence[SimilarityRecord],
                    found: Sequence[SimilarityRecord]) -> RecallAudit:
    """Diff a strategy's records against the exhaustive run's records."""
    strategy = FilterStrategy.parse(strategy)
    found_keys = {r.pair for r in found}
    oracle_keys = {r.pair for r in oracle}
    extra = found_keys - oracle_keys
    if extra:
        raise RuntimeError(f"{strategy} reported pairs the exhaustive run did not: "
                           f"{sorted(extra)[:5]}")
    missed = sorted(r for r in oracle if r.pair not in found_keys)
    return RecallAudit(strategy, len(oracle_keys), len(oracle_keys) - len(missed), missed)


def audit(profiles: Sequence[ShingleProfile], strategy: FilterStrategy | str, j: float,
          n_jobs: int = 1) -> RecallAudit:
    oracle, _ = run(profiles, FilterStrategy.ALL_PAIRS, j, n_jobs)
    found, _ = run(profiles, strategy, j, n_jobs)
    return compare_results(strategy, oracle, found)
