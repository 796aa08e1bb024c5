"""Exact Jaccard similarity over shingle sets (counts are ignored)."""
from __future__ import annotations

from dataclasses import dataclass

from ._validation import ConfigurationError
from .shingles import ShingleProfile


@dataclass(frozen=True, order=True)
class SimilarityRecord:
    """An unordered document pair, stored with ``doc_a < doc_b``."""

    doc_a: str
    doc_b: str
    score: float

    def __post_init__(self):
        if not self.doc_a < self.doc_b:
            raise ValueError(f"record is not canonical: {self.doc_a!r} !< {self.doc_b!r}")
        if not 0.0 <= self.score <= 1.0:
            raise ValueError(f"score out of range: {self.score}")

    @classmethod
    def of(cls, a: str, b: str, score: float) -> "SimilarityRecord":
        if b < a:
            a, b = b, a
        return cls(a, b, score)

    @property
    def pair(self) -> tuple[str, str]:
        return self.doc_a, self.doc_b


def _check_same_k(p: ShingleProfile, q: ShingleProfile) -> None:
    if p.k != q.k:
        raise ConfigurationError(
            f"cannot compare {p.doc_id!r} (k={p.k}) with {q.doc_id!r} (k={q.k})"
        )


def overlap(p: ShingleProfile, q: ShingleProfile) -> tuple[int, int]:
    """Return ``(|intersection|, |union|)`` of the two distinct-shingle sets."""
    _check_same_k(p, q)
    inter = len(p.shingle_set & q.shingle_set)
    return inter, p.set_length + q.set_length - inter


def jaccard(p: ShingleProfile, q: ShingleProfile) -> float:
    """Jaccard similarity of the distinct-shingle sets.

    Two empty profiles are treated as identical (1.0); an empty profile
    against a non-empty one scores 0.0.
    """
    inter, union = overlap(p, q)
    if union == 0:
        return 1.0
    return inter / union


def jaccard_distance(p: ShingleProfile, q: ShingleProfile) -> float:
    return 1.0 - jaccard(p, q)
