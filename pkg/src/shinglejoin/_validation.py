"""Parameter and input validation shared by the functional and estimator APIs."""
from __future__ import annotations

import numbers
from fractions import Fraction


class ConfigurationError(ValueError):
    """Inputs were built with inconsistent settings (e.g. mixed k)."""


def check_k(k) -> int:
    if isinstance(k, bool) or not isinstance(k, numbers.Integral):
        raise TypeError(f"k must be an integer, got {type(k).__name__}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return int(k)


def check_threshold(j) -> float:
    if isinstance(j, bool) or not isinstance(j, numbers.Real):
        raise TypeError(f"threshold must be a real number, got {type(j).__name__}")
    if not 0 < j <= 1:
        raise ValueError(f"threshold must lie in (0, 1], got {j}")
    return float(j)


def threshold_ratio(j) -> tuple[int, int]:
    """Exact (numerator, denominator) of ``j`` as written in decimal.

    ``0.9`` becomes ``(9, 10)`` rather than the binary double's expansion, so
    that ``admit(9, 10, 0.9)`` holds and the length bound stays exact.
    """
    frac = Fraction(repr(float(check_threshold(j))))
    return frac.numerator, frac.denominator


def check_profiles(profiles) -> list:
    """Return ``profiles`` as a list after checking they share one k."""
    profiles = list(profiles)
    ks = {p.k for p in profiles}
    if len(ks) > 1:
        raise ConfigurationError(f"profiles were built with different k values: {sorted(ks)}")
    ids = [p.doc_id for p in profiles]
    if len(set(ids)) != len(ids):
        raise ValueError("doc_id values must be unique")
    return profiles
