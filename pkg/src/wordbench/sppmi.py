"""Shifted Positive PMI: sparse count-based embeddings.

Each co-occurrence cell becomes ``max(PMI(w, c) - ln(shift_k), 0)`` with
``PMI(w, c) = ln(count(w, c) * N / (count(w) * count(c)))``, marginals taken
from the count matrix itself. Cells at or below the shift are never
materialized, so rows stay sparse and every stored value is positive. Each
dimension of a row is one context word, which keeps the representation
directly interpretable.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .embedspace import EmbeddingSpace, _as_query
from .errors import OovError, ParseError, ValidationError

SPPMI_HEADER = "#sppmi"


@dataclass(frozen=True)
class SppmiConfig:
    """``shift_k`` is the shift constant; cells shift down by ln(shift_k).

    ``shift_k=1`` degenerates to plain PPMI.
    """

    shift_k: float = 1.0

    def __post_init__(self):
        if self.shift_k < 1:
            raise ValidationError("shift_k must be >= 1")


class SparseEmbeddings(EmbeddingSpace):
    """Row-per-word sparse vectors over context-word dimensions."""

    def __init__(self, vocab, matrix, meta=None):
        matrix = sparse.csr_matrix(matrix, dtype=np.float64)
        if matrix.shape[0] != len(vocab):
            raise ValidationError(
                f"matrix shape {matrix.shape} does not match vocabulary size {len(vocab)}"
            )
        self.vocab = vocab
        self.matrix = matrix
        self.meta = dict(meta or {})
        sq = matrix.multiply(matrix).sum(axis=1)
        self.norms = np.sqrt(np.asarray(sq).ravel())

    @property
    def dim(self):
        return self.matrix.shape[1]

    def vector(self, word):
        """Stored row as a 1 x |V| sparse vector (possibly empty)."""
        if word not in self.vocab:
            raise OovError([word])
        return self.matrix.getrow(self.vocab.ids[word])

    def _all_cosines(self, query):
        q = _as_query(query)
        if q.shape[0] != self.dim:
            raise ValidationError(f"query dimension {q.shape[0]} != {self.dim}")
        qn = np.linalg.norm(q)
        if qn == 0.0:
            return np.zeros(len(self.vocab))
        dots = self.matrix @ q
        denom = self.norms * qn
        return np.divide(dots, denom, out=np.zeros_like(dots), where=denom > 0.0)


def build_sppmi(matrix, config=SppmiConfig()):
    """Transform a :class:`~wordbench.cooc.CoocMatrix` into SPPMI rows."""
    if matrix.grand_total <= 0:
        raise ValidationError("co-occurrence matrix is empty")
    shift = math.log(config.shift_k)
    n = len(matrix.vocab)
    nnz = len(matrix.cells)
    rows = np.empty(nnz, dtype=np.int64)
    cols = np.empty(nnz, dtype=np.int64)
    counts = np.empty(nnz, dtype=np.float64)
    for i, ((w, c), count) in enumerate(matrix.cells.items()):
        rows[i], cols[i], counts[i] = w, c, count
    pmi = np.log(counts * matrix.grand_total) - np.log(
        matrix.row_sums[rows].astype(np.float64) * matrix.col_sums[cols]
    )
    vals = pmi - shift
    keep = vals > 0.0
    csr = sparse.csr_matrix(
        (vals[keep], (rows[keep], cols[keep])), shape=(n, n), dtype=np.float64
    )
    meta = {
        "shift_k": config.shift_k,
        "window": matrix.window if matrix.window is not None else 0,
        "n": matrix.grand_total,
    }
    return SparseEmbeddings(matrix.vocab, csr, meta=meta)


def sppmi_row(embeddings, word):
    """Row lookup; an out-of-vocabulary word raises, an empty row does not."""
    return embeddings.vector(word)


def save_sppmi(embeddings, path):
    """Write a metadata header plus ``word<TAB>context<TAB>weight`` triples.

    Weights are printed with ``repr`` so a reload is bit-exact.
    """
    meta = embeddings.meta
    words = embeddings.vocab.words
    coo = embeddings.matrix.tocoo()
    order = np.lexsort((coo.col, coo.row))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(
            f"{SPPMI_HEADER}\tshift_k={meta.get('shift_k', 1)}"
            f"\twindow={meta.get('window', 0)}\tn={meta.get('n', 0)}\n"
        )
        for idx in order:
            w, c, v = coo.row[idx], coo.col[idx], coo.data[idx]
            fh.write(f"{words[w]}\t{words[c]}\t{v!r}\n")


def load_sppmi(path, vocab):
    """Load the TSV back into :class:`SparseEmbeddings` against ``vocab``."""
    ids = vocab.ids
    rows, cols, vals = [], [], []
    meta = {}
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n")
        fields = header.split("\t")
        if fields[0] != SPPMI_HEADER:
            raise ParseError(f"expected {SPPMI_HEADER!r} header", path, 1)
        for item in fields[1:]:
            key, _, raw = item.partition("=")
            if key == "shift_k":
                meta[key] = float(raw)
            elif key in ("window", "n"):
                meta[key] = int(raw)
        for lineno, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            parts = line.rstrip("\n").split("\t")
            if len(parts) != 3:
                raise ParseError("expected 'word<TAB>context<TAB>weight'", path, lineno)
            word, context, raw = parts
            if word not in ids or context not in ids:
                raise ParseError(
                    f"word pair ({word!r}, {context!r}) not in vocabulary", path, lineno
                )
            try:
                val = float(raw)
            except ValueError:
                raise ParseError(f"bad weight {raw!r}", path, lineno) from None
            if val <= 0:
                raise ParseError("stored weights must be strictly positive", path, lineno)
            rows.append(ids[word])
            cols.append(ids[context])
            vals.append(val)
    n = len(vocab)
    csr = sparse.csr_matrix((vals, (rows, cols)), shape=(n, n), dtype=np.float64)
    return SparseEmbeddings(vocab, csr, meta=meta)
