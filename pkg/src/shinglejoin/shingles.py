"""Character k-shingle profiles.

A profile keeps every distinct shingle of a document together with its
occurrence count, sorted by the shingle's UTF-8 byte sequence.  Two length
measures are derived from it: the set length (number of distinct shingles)
and the weighted length, sum of ``rank * count`` over the sorted entries.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from ._validation import check_k, check_threshold

Entry = tuple[str, int]


@dataclass(frozen=True)
class RunConfig:
    """Shingling and matching parameters shared by a whole run."""

    k: int = 5
    threshold_j: float = 0.9
    normalize_whitespace: bool = True
    lowercase: bool = False

    def __post_init__(self):
        check_k(self.k)
        check_threshold(self.threshold_j)


def _byte_key(shingle: str) -> bytes:
    # surrogatepass keeps lone surrogates orderable instead of raising
    return shingle.encode("utf-8", "surrogatepass")


def extract_shingles(text: str, k: int) -> list[Entry]:
    """Return the distinct length-``k`` substrings of ``text`` with counts.

    Overlapping occurrences are each counted.  The result is sorted by the
    UTF-8 byte sequence of the shingle.

    >>> extract_shingles("abcdabd", 2)
    [('ab', 2), ('bc', 1), ('bd', 1), ('cd', 1), ('da', 1)]
    """
    check_k(k)
    if len(text) < k:
        return []
    counts = Counter(text[i:i + k] for i in range(len(text) - k + 1))
    return sorted(counts.items(), key=lambda item: _byte_key(item[0]))


def _weighted_sum(entries: Iterable[Entry]) -> int:
    return sum(rank * count for rank, (_, count) in enumerate(entries, start=1))


@dataclass(frozen=True)
class ShingleProfile:
    """One document's shingle multiset plus its two length measures.

    Instances are immutable; use :func:`build_profile` or
    :meth:`from_entries` rather than filling the length fields by hand.
    """

    doc_id: str
    k: int
    entries: tuple[Entry, ...]
    set_length: int = field(init=False)
    weighted_length: int = field(init=False)

    def __post_init__(self):
        entries = tuple((str(s), int(c)) for s, c in self.entries)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "set_length", len(entries))
        object.__setattr__(self, "weighted_length", _weighted_sum(entries))

    @classmethod
    def from_entries(cls, doc_id: str, k: int, entries: Iterable[Entry]) -> "ShingleProfile":
        """Build a profile from (shingle, count) pairs, validating them."""
        check_k(k)
        ordered = sorted(entries, key=lambda item: _byte_key(item[0]))
        seen = set()
        for shingle, count in ordered:
            if len(shingle) != k:
                raise ValueError(f"shingle {shingle!r} does not have length k={k}")
            if count < 1:
                raise ValueError(f"shingle {shingle!r} has non-positive count {count}")
            if shingle in seen:
                raise ValueError(f"duplicate shingle {shingle!r}")
            seen.add(shingle)
        return cls(doc_id, k, tuple(ordered))

    @cached_property
    def shingle_set(self) -> frozenset[str]:
        return frozenset(s for s, _ in self.entries)

    @property
    def is_empty(self) -> bool:
        return self.set_length == 0


def build_profile(doc_id: str, text: str, config: RunConfig) -> ShingleProfile:
    """Profile already-normalized ``text`` with ``config.k``."""
    return ShingleProfile(doc_id, config.k, tuple(extract_shingles(text, config.k)))


def weighted_length(profile: ShingleProfile) -> int:
    """Sum of ``rank * count`` over the sorted entries, ranks starting at 1."""
    return _weighted_sum(profile.entries)
