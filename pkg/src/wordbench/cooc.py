"""Sliding-window word/context co-occurrence counting.

Produces the sparse count matrix that the SPPMI transform consumes. Counting
is a single streaming pass; shards counted independently can be merged with
:func:`merge_counts` as long as they share one vocabulary.
"""

from collections import Counter
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .errors import ParseError, ValidationError


@dataclass(frozen=True)
class CoocConfig:
    """Window geometry for counting.

    ``window`` is the symmetric half-window size. With ``dynamic_window`` the
    effective half-window is drawn uniformly from ``1..window`` per center
    token, mirroring the skipgram training scheme; fixed windows keep counts
    deterministic without a seed.
    """

    window: int = 5
    dynamic_window: bool = False

    def __post_init__(self):
        if self.window < 1:
            raise ValidationError("window must be >= 1")


class CoocMatrix:
    """Sparse (word, context) counts plus marginals over one vocabulary."""

    def __init__(self, vocab, cells, window=None):
        self.vocab = vocab
        self.cells = dict(cells)
        self.window = window
        n = len(vocab)
        row = np.zeros(n, dtype=np.int64)
        col = np.zeros(n, dtype=np.int64)
        for (w, c), count in self.cells.items():
            if count <= 0:
                raise ValidationError("co-occurrence counts must be strictly positive")
            row[w] += count
            col[c] += count
        self.row_sums = row
        self.col_sums = col
        self.grand_total = int(row.sum())

    def __eq__(self, other):
        if not isinstance(other, CoocMatrix):
            return NotImplemented
        return self.vocab == other.vocab and self.cells == other.cells

    def nnz(self):
        return len(self.cells)

    def to_csr(self):
        """Counts as a |V| x |V| scipy CSR matrix (float64)."""
        n = len(self.vocab)
        if not self.cells:
            return sparse.csr_matrix((n, n), dtype=np.float64)
        keys = np.array(list(self.cells.keys()), dtype=np.int64)
        vals = np.fromiter(self.cells.values(), dtype=np.float64, count=len(self.cells))
        return sparse.csr_matrix((vals, (keys[:, 0], keys[:, 1])), shape=(n, n))


def count_cooccurrences(corpus, vocab, config=CoocConfig(), seed=0):
    """Count window co-occurrences over pre-normalized sentences.

    Out-of-vocabulary tokens are deleted from the sentence before windowing,
    so contexts reach over them. For each center position ``i`` every other
    surviving position ``j`` with ``0 < |i-j| <= w_eff`` contributes one count
    to ``cells[word_i, word_j]``. Windows never cross sentence boundaries.
    ``seed`` is consulted only when ``dynamic_window`` is set.
    """
    if len(vocab) == 0:
        raise ValidationError("vocabulary is empty")
    rng = np.random.default_rng(seed) if config.dynamic_window else None
    window = config.window
    cells = Counter()
    for sentence in corpus:
        ids = vocab.encode(sentence)
        n = len(ids)
        if n < 2:
            continue
        if rng is not None:
            widths = rng.integers(1, window + 1, size=n)
        for i in range(n):
            w_eff = int(widths[i]) if rng is not None else window
            lo = max(0, i - w_eff)
            hi = min(n, i + w_eff + 1)
            wi = ids[i]
            for j in range(lo, hi):
                if j != i:
                    cells[(wi, ids[j])] += 1
    return CoocMatrix(vocab, cells, window=window)


def merge_counts(shards):
    """Cell-wise sum of shard matrices sharing one vocabulary."""
    if not shards:
        raise ValidationError("need at least one shard to merge")
    vocab = shards[0].vocab
    window = shards[0].window
    merged = Counter()
    for shard in shards:
        if shard.vocab != vocab:
            raise ValidationError("shards were counted over different vocabularies")
        if shard.window != window:
            window = None
        merged.update(shard.cells)
    return CoocMatrix(vocab, merged, window=window)


def save_cooc(matrix, path):
    """Write ``word<TAB>context<TAB>count`` triples in id order."""
    words = matrix.vocab.words
    with open(path, "w", encoding="utf-8") as fh:
        for (w, c) in sorted(matrix.cells):
            fh.write(f"{words[w]}\t{words[c]}\t{matrix.cells[(w, c)]}\n")


def load_cooc(path, vocab, window=None):
    """Load triples back against ``vocab``; marginals are re-derived."""
    cells = {}
    ids = vocab.ids
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            fields = line.rstrip("\n").split("\t")
            if len(fields) != 3:
                raise ParseError("expected 'word<TAB>context<TAB>count'", path, lineno)
            word, context, raw = fields
            if word not in ids or context not in ids:
                raise ParseError(
                    f"word pair ({word!r}, {context!r}) not in vocabulary", path, lineno
                )
            try:
                count = int(raw)
            except ValueError:
                raise ParseError(f"bad count {raw!r}", path, lineno) from None
            key = (ids[word], ids[context])
            if key in cells:
                raise ParseError(f"duplicate cell ({word!r}, {context!r})", path, lineno)
            cells[key] = count
    return CoocMatrix(vocab, cells, window=window)
