"""Command line interface: ``shinglejoin {run,compare,audit,shingle}``."""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .corpus import ingest, load_profiles, normalize, save_profiles, write_report
from .engine import compare_results, run
from .filters import FilterStrategy
from .shingles import RunConfig, build_profile

log = logging.getLogger("shinglejoin")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_MISSED = 3


def _positive_int(value: str) -> int:
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {value!r}")
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {n}")
    return n


def _threshold(value: str) -> float:
    try:
        j = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {value!r}")
    if not 0 < j <= 1:
        raise argparse.ArgumentTypeError(f"threshold must lie in (0, 1], got {value}")
    return j


def _strategy(value: str) -> FilterStrategy:
    try:
        return FilterStrategy.parse(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=_positive_int, default=5, help="shingle length in characters")
    common.add_argument("--no-normalize-whitespace", dest="normalize_whitespace",
                        action="store_false", help="keep whitespace runs and line breaks as-is")
    common.add_argument("--lowercase", action="store_true", help="lowercase text before shingling")

    corpus = argparse.ArgumentParser(add_help=False, parents=[common])
    corpus.add_argument("corpus_root", type=Path, help="directory of text documents")
    corpus.add_argument("--threshold", type=_threshold, default=0.9,
                        help="minimum Jaccard similarity of a reported pair")
    corpus.add_argument("--out", type=Path, default=Path("shinglejoin-out"),
                        help="directory for pairs CSV and stats JSON")
    corpus.add_argument("--cache", type=Path, default=None,
                        help="profile cache (JSON Lines); read if present, written otherwise")
    corpus.add_argument("--jobs", type=_positive_int, default=os.cpu_count() or 1,
                        help="worker processes for scoring")

    parser = argparse.ArgumentParser(
        prog="shinglejoin",
        description="Find near-duplicate documents with k-shingles and length filtering.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)
    fmt = argparse.ArgumentDefaultsHelpFormatter

    p = sub.add_parser("run", parents=[corpus], formatter_class=fmt,
                       help="find similar pairs with one filter strategy")
    p.add_argument("--strategy", type=_strategy, default=FilterStrategy.WEIGHTED_LENGTH,
                   help="all-pairs, set-length or weighted-length")

    sub.add_parser("compare", parents=[corpus], formatter_class=fmt,
                   help="run set-length and weighted-length filtering side by side")

    p = sub.add_parser("audit", parents=[corpus], formatter_class=fmt,
                       help="check a strategy's recall against the exhaustive run "
                            f"(exit {EXIT_MISSED} if any pair is missed)")
    p.add_argument("--strategy", type=_strategy, default=FilterStrategy.WEIGHTED_LENGTH,
                   help="all-pairs, set-length or weighted-length")

    p = sub.add_parser("shingle", parents=[common], formatter_class=fmt,
                       help="print one document's shingle profile")
    p.add_argument("file", type=Path)
    return parser


def _config(args) -> RunConfig:
    return RunConfig(k=args.k, threshold_j=getattr(args, "threshold", 0.9),
                     normalize_whitespace=args.normalize_whitespace, lowercase=args.lowercase)


def _load(args, config):
    if args.cache is not None and args.cache.exists():
        log.info("loading profiles from %s", args.cache)
        return load_profiles(args.cache, config, root=args.corpus_root)
    manifest, profiles = ingest(args.corpus_root, config)
    if args.cache is not None:
        save_profiles(args.cache, profiles, config, manifest)
    return manifest, profiles


def _summary(stats) -> str:
    return (f"{stats.strategy}: docs={stats.doc_count} comparisons={stats.comparisons} "
            f"dismissed={stats.dismissed} similar_pairs={stats.similar_pairs} "
            f"time={stats.wall_time_ms}ms")


def cmd_run(args) -> int:
    config = _config(args)
    manifest, profiles = _load(args, config)
    records, stats = run(profiles, args.strategy, config.threshold_j, n_jobs=args.jobs)
    write_report(records, [stats], None, args.out, config=config, manifest=manifest)
    print(_summary(stats))
    return EXIT_OK


def cmd_compare(args) -> int:
    config = _config(args)
    manifest, profiles = _load(args, config)
    results = {}
    for strategy in (FilterStrategy.SET_LENGTH, FilterStrategy.WEIGHTED_LENGTH):
        results[strategy] = run(profiles, strategy, config.threshold_j, n_jobs=args.jobs)
    (set_records, set_stats), (w_records, w_stats) = results.values()
    set_keys = {r.pair for r in set_records}
    w_keys = {r.pair for r in w_records}
    only_set = sorted(set_keys - w_keys)
    only_weighted = sorted(w_keys - set_keys)
    reduction = 1 - w_stats.comparisons / set_stats.comparisons if set_stats.comparisons else 0.0
    comparison = {
        "comparison_reduction": round(reduction, 6),
        "divergent_pairs": len(only_set) + len(only_weighted),
        "only_set_length": [list(p) for p in only_set],
        "only_weighted_length": [list(p) for p in only_weighted],
    }
    out = args.out
    for strategy, (records, _) in results.items():
        write_report(records, [s for _, s in results.values()], None, out, config=config,
                     manifest=manifest, extra={"comparison": comparison},
                     pairs_name=f"pairs.{strategy.value}.csv")
    for _, stats in results.values():
        print(_summary(stats))
    print(f"comparison reduction: {reduction:.1%}")
    if comparison["divergent_pairs"]:
        print(f"DIVERGENCE: {comparison['divergent_pairs']} pair(s) found by only one strategy")
        for a, b in only_set:
            print(f"  only set-length: {a} {b}")
        for a, b in only_weighted:
            print(f"  only weighted-length: {a} {b}")
    else:
        print("divergence: none")
    return EXIT_OK


def cmd_audit(args) -> int:
    config = _config(args)
    manifest, profiles = _load(args, config)
    oracle, oracle_stats = run(profiles, FilterStrategy.ALL_PAIRS, config.threshold_j,
                               n_jobs=args.jobs)
    if args.strategy is FilterStrategy.ALL_PAIRS:
        records, stats = oracle, oracle_stats
    else:
        records, stats = run(profiles, args.strategy, config.threshold_j, n_jobs=args.jobs)
    result = compare_results(args.strategy, oracle, records)
    write_report(records, [oracle_stats, stats] if stats is not oracle_stats else [stats],
                 result, args.out, config=config, manifest=manifest)
    print(_summary(stats))
    print(f"recall: {result.recall:.6f} ({result.found_pairs}/{result.oracle_pairs}), "
          f"missed {len(result.missed)}")
    for r in result.missed:
        print(f"  missed: {r.doc_a} {r.doc_b} {r.score:.6f}")
    return EXIT_OK if not result.missed else EXIT_MISSED


def cmd_shingle(args) -> int:
    config = RunConfig(k=args.k, normalize_whitespace=args.normalize_whitespace,
                       lowercase=args.lowercase)
    raw = args.file.read_bytes()
    profile = build_profile(str(args.file), normalize(raw, config, str(args.file)), config)
    for shingle, count in profile.entries:
        print(f"{json.dumps(shingle, ensure_ascii=False)}\t{count}")
    print(f"set_length: {profile.set_length}")
    print(f"weighted_length: {profile.weighted_length}")
    return EXIT_OK


COMMANDS = {"run": cmd_run, "compare": cmd_compare, "audit": cmd_audit, "shingle": cmd_shingle}


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING,
                        format="shinglejoin: %(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (OSError, ValueError) as exc:
        log.error("%s", exc)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
