"""Candidate generation by sorted length scans.

Profiles are sorted by a length measure; each profile is then compared only
with the profiles after it whose measure stays within ``own / j``.  Because
the keys are non-decreasing, the scan for a row stops at the first profile
that fails the bound.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from math import comb
from typing import Iterator, Sequence

from ._validation import check_profiles, threshold_ratio
from .shingles import ShingleProfile


class FilterStrategy(enum.Enum):
    ALL_PAIRS = "all-pairs"
    SET_LENGTH = "set-length"
    WEIGHTED_LENGTH = "weighted-length"

    @classmethod
    def parse(cls, value) -> "FilterStrategy":
        if isinstance(value, cls):
            return value
        text = str(value).strip().lower().replace("_", "-")
        for member in cls:
            if text == member.value:
                return member
        choices = ", ".join(m.value for m in cls)
        raise ValueError(f"unknown strategy {value!r}; expected one of: {choices}")

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class CandidatePair:
    doc_a: str
    doc_b: str
    length_a: int
    length_b: int


def sort_key(profile: ShingleProfile, strategy: FilterStrategy) -> int:
    strategy = FilterStrategy.parse(strategy)
    if strategy is FilterStrategy.WEIGHTED_LENGTH:
        return profile.weighted_length
    return profile.set_length


def admit(len_s: int, len_t: int, j: float) -> bool:
    """True iff ``len_t <= len_s / j``, evaluated exactly.

    >>> admit(9, 10, 0.9), admit(9, 11, 0.9)
    (True, False)
    """
    num, den = threshold_ratio(j)
    return len_t * num <= len_s * den


def sorted_profiles(profiles: Sequence[ShingleProfile],
                    strategy: FilterStrategy) -> list[tuple[int, ShingleProfile]]:
    """Non-empty profiles with their keys, ascending by ``(key, doc_id)``."""
    strategy = FilterStrategy.parse(strategy)
    keyed = [(sort_key(p, strategy), p) for p in profiles if not p.is_empty]
    keyed.sort(key=lambda kp: (kp[0], kp[1].doc_id))
    return keyed


def scan_end(keys: Sequence[int], i: int, num: int, den: int,
             strategy: FilterStrategy) -> int:
    """Exclusive end of the contiguous run of rows admitted for row ``i``."""
    n = len(keys)
    if strategy is FilterStrategy.ALL_PAIRS:
        return n
    limit = keys[i] * den
    m = i + 1
    while m < n and keys[m] * num <= limit:
        m += 1
    return m


def iter_candidates(profiles: Sequence[ShingleProfile], strategy: FilterStrategy,
                    j: float) -> Iterator[CandidatePair]:
    """Yield admitted pairs in scan order, shorter-key document first."""
    strategy = FilterStrategy.parse(strategy)
    num, den = threshold_ratio(j)
    keyed = sorted_profiles(check_profiles(profiles), strategy)
    keys = [key for key, _ in keyed]
    for i, (key_s, s) in enumerate(keyed):
        for m in range(i + 1, scan_end(keys, i, num, den, strategy)):
            key_t, t = keyed[m]
            yield CandidatePair(s.doc_id, t.doc_id, key_s, key_t)


def candidates(profiles: Sequence[ShingleProfile], strategy: FilterStrategy,
               j: float) -> tuple[list[CandidatePair], int]:
    """All admitted pairs plus the number of pairs the filter dismissed.

    Empty profiles take no part in the scan; the dismissed count is
    relative to the pairs among the non-empty profiles.
    """
    pairs = list(iter_candidates(profiles, strategy, j))
    n = sum(1 for p in profiles if not p.is_empty)
    return pairs, comb(n, 2) - len(pairs)
