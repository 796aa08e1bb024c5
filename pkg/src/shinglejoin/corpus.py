"""Corpus ingestion, text normalization, the profile cache and report files."""
from __future__ import annotations

import csv
import io
import json
import logging
import os
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from ._validation import ConfigurationError
from .engine import RecallAudit, RunStats
from .shingles import RunConfig, ShingleProfile, build_profile
from .similarity import SimilarityRecord

log = logging.getLogger(__name__)

CACHE_FORMAT = "shinglejoin-profiles"
CACHE_VERSION = 1
REPORT_VERSION = 1

SKIP_TOO_SHORT = "shorter than k"
SKIP_IO_ERROR = "io-error"

_WHITESPACE = re.compile(r"\s+")


@dataclass
class CorpusManifest:
    root: Path
    documents: list[tuple[str, int]] = field(default_factory=list)
    skipped: list[tuple[str, str]] = field(default_factory=list)

    @property
    def doc_ids(self) -> list[str]:
        return [doc_id for doc_id, _ in self.documents]


def normalize(raw_bytes: bytes, config: RunConfig, doc_id: str | None = None) -> str:
    """Decode ``raw_bytes`` as UTF-8 and apply the configured normalization.

    Invalid byte sequences become U+FFFD and a warning is logged.
    """
    try:
        text = raw_bytes.decode("utf-8")
    except UnicodeDecodeError:
        log.warning("%s: invalid UTF-8, undecodable bytes replaced", doc_id or "<input>")
        text = raw_bytes.decode("utf-8", errors="replace")
    if config.normalize_whitespace:
        text = _WHITESPACE.sub(" ", text).strip()
    if config.lowercase:
        text = text.lower()
    return text


def list_documents(root: Path) -> list[tuple[str, Path]]:
    """Regular files under ``root`` as ``(relative posix path, path)``, sorted."""
    found = []
    for dirpath, dirnames, filenames in os.walk(root):
        dirnames.sort()
        for name in filenames:
            path = Path(dirpath) / name
            if path.is_file():
                found.append((path.relative_to(root).as_posix(), path))
    found.sort(key=lambda item: item[0])
    return found


def ingest(root, config: RunConfig) -> tuple[CorpusManifest, list[ShingleProfile]]:
    """Read, normalize and profile every regular file under ``root``.

    Files that cannot be read or that yield no shingles are listed in the
    manifest's ``skipped`` and produce no profile.
    """
    root = Path(root)
    if not root.is_dir():
        raise NotADirectoryError(f"corpus root is not a readable directory: {root}")
    if not os.access(root, os.R_OK | os.X_OK):
        raise PermissionError(f"corpus root is not readable: {root}")

    manifest = CorpusManifest(root)
    profiles = []
    for doc_id, path in list_documents(root):
        try:
            raw = path.read_bytes()
        except OSError as exc:
            log.warning("%s: skipped, %s", doc_id, exc)
            manifest.skipped.append((doc_id, SKIP_IO_ERROR))
            continue
        profile = build_profile(doc_id, normalize(raw, config, doc_id), config)
        if profile.is_empty:
            manifest.skipped.append((doc_id, SKIP_TOO_SHORT))
            continue
        manifest.documents.append((doc_id, len(raw)))
        profiles.append(profile)
    return manifest, profiles


def _cache_header(config: RunConfig) -> dict:
    return {
        "format": CACHE_FORMAT,
        "format_version": CACHE_VERSION,
        "k": config.k,
        "normalize_whitespace": config.normalize_whitespace,
        "lowercase": config.lowercase,
    }


def save_profiles(path, profiles: Iterable[ShingleProfile], config: RunConfig,
                  manifest: CorpusManifest | None = None) -> None:
    """Write profiles as JSON Lines: one header line, then one line per document."""
    byte_lengths = dict(manifest.documents) if manifest else {}
    header = _cache_header(config)
    if manifest is not None:
        header["skipped"] = [list(item) for item in manifest.skipped]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps(header, sort_keys=True) + "\n")
        for p in profiles:
            if p.k != config.k:
                raise ConfigurationError(f"profile {p.doc_id!r} has k={p.k}, cache k={config.k}")
            record = {"doc_id": p.doc_id, "entries": [list(e) for e in p.entries]}
            if p.doc_id in byte_lengths:
                record["byte_length"] = byte_lengths[p.doc_id]
            fh.write(json.dumps(record, sort_keys=True) + "\n")


def load_profiles(path, config: RunConfig,
                  root=None) -> tuple[CorpusManifest, list[ShingleProfile]]:
    """Load a profile cache, refusing one built with other k or flags."""
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ConfigurationError(f"{path}: empty profile cache")
    header = json.loads(lines[0])
    if header.get("format") != CACHE_FORMAT or header.get("format_version") != CACHE_VERSION:
        raise ConfigurationError(f"{path}: not a version {CACHE_VERSION} profile cache")
    expected = _cache_header(config)
    mismatched = [key for key in ("k", "normalize_whitespace", "lowercase")
                  if header.get(key) != expected[key]]
    if mismatched:
        detail = ", ".join(f"{key}: cache={header.get(key)!r} run={expected[key]!r}"
                           for key in mismatched)
        raise ConfigurationError(f"{path}: cache settings differ from run ({detail})")

    manifest = CorpusManifest(Path(root) if root is not None else Path(path).parent)
    manifest.skipped = [tuple(item) for item in header.get("skipped", [])]
    profiles = []
    for line in lines[1:]:
        if not line.strip():
            continue
        record = json.loads(line)
        profile = ShingleProfile.from_entries(
            record["doc_id"], config.k, (tuple(e) for e in record["entries"]))
        profiles.append(profile)
        manifest.documents.append((profile.doc_id, record.get("byte_length", 0)))
    profiles.sort(key=lambda p: p.doc_id)
    manifest.documents.sort()
    return manifest, profiles


def pairs_csv(records: Sequence[SimilarityRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["doc_a", "doc_b", "score"])
    for r in sorted(records):
        writer.writerow([r.doc_a, r.doc_b, f"{r.score:.6f}"])
    return buf.getvalue()


def stats_document(stats: Sequence[RunStats], audit: RecallAudit | Sequence[RecallAudit] | None = None,
                   config: RunConfig | None = None, manifest: CorpusManifest | None = None,
                   extra: dict | None = None) -> dict:
    if audit is None:
        audits = {}
    elif isinstance(audit, RecallAudit):
        audits = {audit.strategy: audit}
    else:
        audits = {a.strategy: a for a in audit}
    runs = []
    for s in stats:
        entry = s.to_dict()
        if s.strategy in audits:
            entry["audit"] = audits[s.strategy].to_dict()
        runs.append(entry)
    doc = {"format_version": REPORT_VERSION, "runs": runs}
    if config is not None:
        doc["config"] = {
            "k": config.k,
            "threshold": config.threshold_j,
            "normalize_whitespace": config.normalize_whitespace,
            "lowercase": config.lowercase,
        }
    if manifest is not None:
        doc["corpus"] = {
            "documents": len(manifest.documents),
            "skipped": [{"doc_id": d, "reason": r} for d, r in manifest.skipped],
        }
    if extra:
        doc.update(extra)
    return doc


def write_report(records: Sequence[SimilarityRecord], stats: Sequence[RunStats],
                 audit: RecallAudit | Sequence[RecallAudit] | None, path, *,
                 config: RunConfig | None = None, manifest: CorpusManifest | None = None,
                 extra: dict | None = None, pairs_name: str = "pairs.csv",
                 stats_name: str = "stats.json") -> tuple[Path, Path]:
    """Write the pairs CSV and the stats JSON into directory ``path``.

    Output bytes depend only on the inputs.
    """
    out = Path(path)
    out.mkdir(parents=True, exist_ok=True)
    pairs_path = out / pairs_name
    stats_path = out / stats_name
    pairs_path.write_text(pairs_csv(records), encoding="utf-8", newline="\n")
    doc = stats_document(stats, audit, config, manifest, extra)
    stats_path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n",
                          encoding="utf-8", newline="\n")
    return pairs_path, stats_path
