"""scikit-learn style front end.

``ShingleProfiler`` turns raw texts into :class:`ShingleProfile` objects and
``NearDuplicateFinder`` runs the filtered similarity join on them, so both
can be cloned, grid-searched over ``threshold``/``k`` and placed in a
``Pipeline``.
"""
from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import ConfigurationError, check_k, check_threshold
from .corpus import normalize
from .engine import RecallAudit, compare_results, run
from .filters import FilterStrategy
from .shingles import RunConfig, ShingleProfile, build_profile


def _default_ids(n: int) -> list[str]:
    width = len(str(max(n - 1, 0)))
    return [f"{i:0{width}d}" for i in range(n)]


def _as_text(doc, config: RunConfig, doc_id: str) -> str:
    if isinstance(doc, (bytes, bytearray)):
        return normalize(bytes(doc), config, doc_id)
    if isinstance(doc, str):
        return normalize(doc.encode("utf-8", "surrogatepass"), config, doc_id)
    raise TypeError(f"expected str or bytes documents, got {type(doc).__name__}")


class ShingleProfiler(TransformerMixin, BaseEstimator):
    """Map documents (``str`` or ``bytes``) to k-shingle profiles.

    Parameters
    ----------
    k : int, default=5
        Shingle length in characters.
    normalize_whitespace : bool, default=True
        Collapse whitespace runs to one space and trim the ends.
    lowercase : bool, default=False
        Lowercase the text before shingling.
    """

    def __init__(self, k=5, normalize_whitespace=True, lowercase=False):
        self.k = k
        self.normalize_whitespace = normalize_whitespace
        self.lowercase = lowercase

    def _config(self) -> RunConfig:
        return RunConfig(k=check_k(self.k), normalize_whitespace=bool(self.normalize_whitespace),
                         lowercase=bool(self.lowercase))

    def fit(self, X=None, y=None):
        self.config_ = self._config()
        return self

    def transform(self, X, doc_ids=None) -> list[ShingleProfile]:
        check_is_fitted(self, "config_")
        docs = list(X)
        ids = _default_ids(len(docs)) if doc_ids is None else [str(d) for d in doc_ids]
        if len(ids) != len(docs):
            raise ValueError(f"got {len(ids)} doc_ids for {len(docs)} documents")
        return [build_profile(doc_id, _as_text(doc, self.config_, doc_id), self.config_)
                for doc_id, doc in zip(ids, docs)]

    def fit_transform(self, X, y=None, doc_ids=None):
        return self.fit(X, y).transform(X, doc_ids=doc_ids)


class NearDuplicateFinder(BaseEstimator):
    """Find all document pairs whose shingle-set Jaccard similarity is at
    least ``threshold``, pruning candidates with a sorted length scan.

    Parameters
    ----------
    k : int, default=5
    threshold : float, default=0.9
        Minimum Jaccard similarity, in (0, 1].
    strategy : {"weighted-length", "set-length", "all-pairs"}, default="weighted-length"
        Candidate filter. ``"set-length"`` never loses a similar pair;
        ``"weighted-length"`` compares fewer pairs but can miss some, see
        :meth:`audit`.
    normalize_whitespace, lowercase : bool
        Text normalization, as in :class:`ShingleProfiler`.
    n_jobs : int or None, default=None
        Worker processes for scoring; ``None`` means 1.

    Attributes
    ----------
    profiles_ : list of ShingleProfile
        Non-empty profiles that took part in the join.
    skipped_ : list of str
        Ids of documents too short to yield a shingle.
    pairs_ : list of SimilarityRecord
    stats_ : RunStats
    """

    def __init__(self, k=5, threshold=0.9, strategy="weighted-length",
                 normalize_whitespace=True, lowercase=False, n_jobs=None):
        self.k = k
        self.threshold = threshold
        self.strategy = strategy
        self.normalize_whitespace = normalize_whitespace
        self.lowercase = lowercase
        self.n_jobs = n_jobs

    def _validate_params(self):
        check_k(self.k)
        check_threshold(self.threshold)
        FilterStrategy.parse(self.strategy)
        if self.n_jobs is not None and int(self.n_jobs) < 1:
            raise ValueError(f"n_jobs must be >= 1 or None, got {self.n_jobs}")

    def _profiles(self, X, doc_ids):
        docs = list(X)
        if docs and all(isinstance(d, ShingleProfile) for d in docs):
            if doc_ids is not None:
                raise ValueError("doc_ids cannot be given together with profiles")
            bad = sorted({p.k for p in docs} - {self.k})
            if bad:
                raise ConfigurationError(f"profiles built with k={bad}, estimator has k={self.k}")
            return docs
        profiler = ShingleProfiler(self.k, self.normalize_whitespace, self.lowercase)
        return profiler.fit_transform(docs, doc_ids=doc_ids)

    def fit(self, X, y=None, doc_ids=None):
        """Profile ``X`` (texts or ready profiles) and run the join."""
        self._validate_params()
        profiles = self._profiles(X, doc_ids)
        self.skipped_ = [p.doc_id for p in profiles if p.is_empty]
        self.profiles_ = [p for p in profiles if not p.is_empty]
        self.strategy_ = FilterStrategy.parse(self.strategy)
        self.pairs_, self.stats_ = run(self.profiles_, self.strategy_, self.threshold,
                                       n_jobs=self.n_jobs or 1)
        return self

    def fit_predict(self, X, y=None, doc_ids=None):
        """Fit and return the similar pairs."""
        return self.fit(X, doc_ids=doc_ids).pairs_

    def audit(self) -> RecallAudit:
        """Recall of the fitted strategy against an exhaustive run."""
        check_is_fitted(self, "pairs_")
        oracle, _ = run(self.profiles_, FilterStrategy.ALL_PAIRS, self.threshold,
                        n_jobs=self.n_jobs or 1)
        return compare_results(self.strategy_, oracle, self.pairs_)
