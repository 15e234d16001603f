"""Uniform query layer over dense and sparse embeddings.

Cosine similarity, deterministic nearest-neighbor ranking, analogy
arithmetic, and word2vec-text-format I/O. Rankings order by descending
similarity with ties broken by ascending lexicographic word order, so
identical inputs always produce identical output.
"""

import numpy as np
from scipy import sparse

from .errors import OovError, ParseError, ValidationError


class ZeroVectorFlag:
    """Mutable marker set when a similarity computation saw a zero vector.

    Zero rows are legal (an SPPMI row may have no surviving cells), so the
    cosine of a zero vector is defined as 0 rather than an error; pass a flag
    object to observe that it happened.
    """

    def __init__(self):
        self.raised = False


def _as_query(v):
    if sparse.issparse(v):
        return np.asarray(v.todense()).ravel()
    return np.asarray(v, dtype=np.float64).ravel()


def cosine(v1, v2, flag=None):
    """Cosine similarity in [-1, 1]; 0 (with ``flag`` raised) on zero vectors."""
    a = _as_query(v1)
    b = _as_query(v2)
    if a.shape != b.shape:
        raise ValidationError(f"dimension mismatch: {a.shape} vs {b.shape}")
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        if flag is not None:
            flag.raised = True
        return 0.0
    return float(np.dot(a, b) / (na * nb))


class EmbeddingSpace:
    """Shared query interface; subclasses supply vectors and bulk cosines."""

    vocab = None

    def contains(self, word):
        return word in self.vocab

    def vector(self, word):
        raise NotImplementedError

    def _all_cosines(self, query):
        """Cosine of every vocabulary row against ``query`` (zero rows -> 0)."""
        raise NotImplementedError

    def similarity(self, w1, w2, flag=None):
        missing = [w for w in (w1, w2) if w not in self.vocab]
        if missing:
            raise OovError(missing)
        return cosine(self.vector(w1), self.vector(w2), flag)

    def nearest(self, query, top_n, exclude=()):
        """Top ``top_n`` (word, similarity) pairs by cosine against ``query``.

        ``exclude`` is a collection of words never returned. Ordering is by
        descending similarity, ties by ascending lexicographic word order.
        """
        if top_n <= 0:
            return []
        sims = self._all_cosines(query)
        order = np.lexsort((self.vocab.lex_rank(), -sims))
        excluded_ids = {self.vocab.ids[w] for w in exclude if w in self.vocab}
        out = []
        for idx in order:
            if int(idx) in excluded_ids:
                continue
            out.append((self.vocab.words[idx], float(sims[idx])))
            if len(out) == top_n:
                break
        return out


class DenseEmbeddings(EmbeddingSpace):
    """Row-per-word dense matrix with cached row norms."""

    def __init__(self, vocab, matrix):
        matrix = np.asarray(matrix, dtype=np.float64)
        if matrix.ndim != 2 or matrix.shape[0] != len(vocab):
            raise ValidationError(
                f"matrix shape {matrix.shape} does not match vocabulary size {len(vocab)}"
            )
        self.vocab = vocab
        self.matrix = matrix
        self.norms = np.linalg.norm(matrix, axis=1)

    @property
    def dim(self):
        return self.matrix.shape[1]

    def vector(self, word):
        if word not in self.vocab:
            raise OovError([word])
        return self.matrix[self.vocab.ids[word]]

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


def analogy_query(space, a, b, d, top_n=10, exclude_queries=True):
    """Rank vocabulary words by cosine against ``vector(a) - vector(b) + vector(d)``.

    The three query words themselves are excluded from the candidates unless
    ``exclude_queries`` is disabled.
    """
    missing = [w for w in (a, b, d) if not space.contains(w)]
    if missing:
        raise OovError(missing)
    query = space.vector(a) - space.vector(b) + space.vector(d)
    exclude = {a, b, d} if exclude_queries else set()
    return space.nearest(query, top_n, exclude=exclude)


def nearest_neighbors(space, word, top_n=10):
    """Closest words to ``word`` by cosine, excluding the word itself."""
    if not space.contains(word):
        raise OovError([word])
    return space.nearest(space.vector(word), top_n, exclude={word})


def densify(space):
    """Materialize any embedding space as :class:`DenseEmbeddings`."""
    if isinstance(space, DenseEmbeddings):
        return DenseEmbeddings(space.vocab, space.matrix.copy())
    rows = sparse.vstack([space.vector(w) for w in space.vocab.words])
    return DenseEmbeddings(space.vocab, np.asarray(rows.todense()))


def save_text(embeddings, path):
    """Write word2vec text format: ``|V| dim`` header, then one row per word.

    Components are printed with 6 decimal places, so a round-trip restores
    every value to within 5e-7 absolute.
    """
    if not np.isfinite(embeddings.matrix).all():
        raise ValidationError("refusing to save non-finite embedding matrix")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{len(embeddings.vocab)} {embeddings.dim}\n")
        for word, row in zip(embeddings.vocab.words, embeddings.matrix):
            fh.write(word + " " + " ".join(f"{x:.6f}" for x in row) + "\n")


def load_text(path, vocab=None):
    """Load word2vec text format; word order in the file is preserved.

    When ``vocab`` is omitted a surrogate vocabulary is built from the file's
    word order (counts descend with position so ids reproduce that order).
    """
    from .corpus import Vocabulary

    with open(path, encoding="utf-8") as fh:
        header = fh.readline()
        parts = header.split()
        if len(parts) != 2:
            raise ParseError("expected '<count> <dim>' header", path, 1)
        try:
            n_words, dim = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("header fields must be integers", path, 1) from None
        words = []
        rows = np.empty((n_words, dim), dtype=np.float64)
        lineno = 1
        for lineno, line in enumerate(fh, start=2):
            fields = line.rstrip("\n").split(" ")
            if len(fields) != dim + 1:
                raise ParseError(
                    f"expected 1 word + {dim} values, got {len(fields)} fields",
                    path,
                    lineno,
                )
            if len(words) == n_words:
                raise ParseError(f"more than {n_words} rows present", path, lineno)
            words.append(fields[0])
            try:
                rows[len(words) - 1] = [float(x) for x in fields[1:]]
            except ValueError:
                raise ParseError("non-numeric vector component", path, lineno) from None
        if len(words) != n_words:
            raise ParseError(
                f"header declared {n_words} rows but file has {len(words)}", path, lineno
            )
    if vocab is None:
        vocab = Vocabulary({w: n_words - i for i, w in enumerate(words)})
    else:
        if list(vocab.words) != words:
            raise ParseError("file word order does not match the given vocabulary", path)
    order = [vocab.ids[w] for w in words]
    matrix = np.empty_like(rows)
    matrix[order] = rows
    return DenseEmbeddings(vocab, matrix)
