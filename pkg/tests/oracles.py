"""Brute-force reference computations, independent of the package internals."""
from fractions import Fraction
from itertools import combinations


def brute_shingles(text, k):
    windows = []
    for start in range(len(text)):
        if start + k <= len(text):
            windows.append(text[start:start + k])
    counts = {}
    for w in windows:
        counts[w] = counts.get(w, 0) + 1
    return sorted(counts.items(), key=lambda item: item[0].encode("utf-8", "surrogatepass"))


def brute_weighted(entries):
    total = 0
    position = 0
    for _, count in entries:
        position += 1
        total += position * count
    return total


def brute_overlap(a, b):
    """(|A∩B|, |A∪B|) by explicit membership counting over lists."""
    a_items = list(dict.fromkeys(a))
    b_items = list(dict.fromkeys(b))
    inter = 0
    for x in a_items:
        if x in b_items:
            inter += 1
    union = list(a_items)
    for x in b_items:
        if x not in union:
            union.append(x)
    return inter, len(union)


def brute_jaccard(a, b):
    inter, union = brute_overlap(a, b)
    return 1.0 if union == 0 else inter / union


def brute_similar_pairs(profiles, j):
    """All pairs of non-empty profiles with Jaccard >= j, by exhaustive scoring."""
    threshold = Fraction(repr(float(j)))
    found = set()
    live = [p for p in profiles if p.entries]
    for p, q in combinations(live, 2):
        inter, union = brute_overlap([s for s, _ in p.entries], [s for s, _ in q.entries])
        if Fraction(inter, union) >= threshold:
            found.add(tuple(sorted((p.doc_id, q.doc_id))))
    return found


def brute_admitted(profiles, key, j):
    """Pairs a full double loop admits, with no early exit."""
    threshold = Fraction(repr(float(j)))
    live = sorted((p for p in profiles if p.entries), key=lambda p: (key(p), p.doc_id))
    pairs = set()
    for i in range(len(live)):
        for m in range(i + 1, len(live)):
            if key(live[m]) <= Fraction(key(live[i])) / threshold:
                pairs.add((live[i].doc_id, live[m].doc_id))
    return pairs
