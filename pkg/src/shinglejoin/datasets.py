"""Synthetic corpora with Zipf-distributed vocabulary and planted near-duplicates."""
from __future__ import annotations

import string

import numpy as np
from sklearn.utils import check_random_state

_LETTERS = np.array(list(string.ascii_lowercase))


def _vocabulary(rng, size: int) -> list[str]:
    words = set()
    while len(words) < size:
        n = rng.randint(2, 9)
        words.add("".join(rng.choice(_LETTERS, n)))
    return sorted(words)


def _mutate(rng, text: str, rate: float) -> str:
    chars = list(text)
    n_edits = rng.binomial(len(chars), rate) if chars else 0
    for _ in range(n_edits):
        pos = rng.randint(0, len(chars)) if chars else 0
        op = rng.randint(3)
        if op == 0 and chars:
            chars[pos] = rng.choice(_LETTERS)
        elif op == 1:
            chars.insert(pos, rng.choice(_LETTERS))
        elif chars:
            del chars[pos]
    return "".join(chars)


def make_corpus(n_docs=100, *, length_range=(200, 2000), vocab_size=500, zipf_exponent=1.2,
                duplicate_fraction=0.3, mutation_range=(0.0, 0.08), random_state=None):
    """Generate ``n_docs`` texts and their ids.

    Words are drawn from a Zipf law over a random vocabulary, so frequent
    words repeat many times inside a document. A ``duplicate_fraction`` of
    the documents are character-level mutations of an earlier document,
    with the per-character edit rate drawn from ``mutation_range``.

    Returns
    -------
    texts : list of str
    doc_ids : list of str
        ``"doc-0000"``-style ids in the same order.
    """
    rng = check_random_state(random_state)
    vocab = np.array(_vocabulary(rng, vocab_size))
    weights = 1.0 / np.arange(1, vocab_size + 1) ** zipf_exponent
    weights /= weights.sum()
    lo, hi = length_range
    texts: list[str] = []
    for i in range(n_docs):
        if texts and rng.rand() < duplicate_fraction:
            source = texts[rng.randint(len(texts))]
            texts.append(_mutate(rng, source, rng.uniform(*mutation_range)))
            continue
        target = rng.randint(lo, hi + 1)
        # average word plus space is about 6 characters
        words = vocab[rng.choice(vocab_size, size=target // 4 + 1, p=weights)]
        texts.append(" ".join(words)[:target])
    width = len(str(max(n_docs - 1, 0)))
    return texts, [f"doc-{i:0{width}d}" for i in range(n_docs)]
