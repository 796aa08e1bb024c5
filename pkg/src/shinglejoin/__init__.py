"""Near-duplicate document detection with k-shingles and length filtering."""
from ._validation import ConfigurationError
from .corpus import CorpusManifest, ingest, load_profiles, normalize, save_profiles, write_report
from .engine import RecallAudit, RunStats, audit, compare_results, run
from .estimator import NearDuplicateFinder, ShingleProfiler
from .filters import CandidatePair, FilterStrategy, admit, candidates, iter_candidates, sort_key
from .shingles import RunConfig, ShingleProfile, build_profile, extract_shingles, weighted_length
from .similarity import SimilarityRecord, jaccard, jaccard_distance

__all__ = [
    "CandidatePair", "ConfigurationError", "CorpusManifest", "FilterStrategy",
    "NearDuplicateFinder", "RecallAudit", "RunConfig", "RunStats", "ShingleProfile",
    "ShingleProfiler", "SimilarityRecord", "admit", "audit", "build_profile", "candidates",
    "compare_results", "extract_shingles", "ingest", "iter_candidates", "jaccard",
    "jaccard_distance", "load_profiles", "normalize", "run", "save_profiles", "sort_key",
    "weighted_length", "write_report",
]
