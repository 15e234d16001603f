"""Corpus streaming, sentence normalization, and vocabulary construction.

A corpus is any re-iterable of sentences, where a sentence is a list of
token strings. :class:`SentenceFile` adapts the on-disk format (UTF-8 text,
one sentence per line, whitespace-separated tokens) to that shape.
"""

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyVocabularyError, ParseError, ValidationError

VOCAB_HEADER = "#total_tokens"


@dataclass(frozen=True)
class PreprocessConfig:
    """Normalization rules applied to every sentence before counting.

    ``drop_single_char`` mirrors the cleanup needed for corpora whose
    tokenizer split clitics into single letters; ``single_char_exceptions``
    lists tokens exempt from that rule (the polite pronoun "u" by default).
    """

    lowercase: bool = True
    drop_nonalnum_tokens: bool = True
    min_sentence_tokens: int = 5
    drop_single_char: bool = False
    single_char_exceptions: frozenset[str] = field(default_factory=lambda: frozenset({"u"}))

    def __post_init__(self):
        if self.min_sentence_tokens < 1:
            raise ValidationError("min_sentence_tokens must be >= 1")
        object.__setattr__(
            self, "single_char_exceptions", frozenset(self.single_char_exceptions)
        )


def normalize_sentence(tokens, config=PreprocessConfig()):
    """Normalize one tokenized sentence; return ``[]`` to signal "drop it".

    Lowercases, removes tokens without a single alphanumeric character
    (mixed tokens like ``50%`` survive), optionally removes single-character
    tokens outside the exception set, then drops the whole sentence when
    fewer than ``min_sentence_tokens`` tokens remain.
    """
    out = []
    for tok in tokens:
        if config.lowercase:
            tok = tok.lower()
        if config.drop_nonalnum_tokens and not any(ch.isalnum() for ch in tok):
            continue
        if (
            config.drop_single_char
            and len(tok) == 1
            and tok not in config.single_char_exceptions
        ):
            continue
        out.append(tok)
    if len(out) < config.min_sentence_tokens:
        return []
    return out


class SentenceFile:
    """Re-iterable token-list stream over a one-sentence-per-line text file."""

    def __init__(self, path, config=None):
        self.path = path
        self.config = config

    def __iter__(self):
        with open(self.path, encoding="utf-8") as fh:
            for line in fh:
                tokens = line.split()
                if self.config is not None:
                    tokens = normalize_sentence(tokens, self.config)
                    if not tokens:
                        continue
                yield tokens


class Vocabulary:
    """Bidirectional word/id mapping with token frequencies.

    Ids are dense ``0..n-1`` and assigned by descending count, ties broken by
    ascending lexicographic order, so any top-k truncation is deterministic.
    """

    def __init__(self, word_counts):
        items = sorted(word_counts.items(), key=lambda kv: (-kv[1], kv[0]))
        if not items:
            raise EmptyVocabularyError("vocabulary would be empty")
        if any(c <= 0 for _, c in items):
            raise ValidationError("all vocabulary counts must be strictly positive")
        self.words = [w for w, _ in items]
        self.ids = {w: i for i, w in enumerate(self.words)}
        self.counts = np.array([c for _, c in items], dtype=np.int64)
        self.total_tokens = int(self.counts.sum())
        self._lex_rank = None

    def __len__(self):
        return len(self.words)

    def __contains__(self, word):
        return word in self.ids

    def __eq__(self, other):
        if not isinstance(other, Vocabulary):
            return NotImplemented
        return self.words == other.words and np.array_equal(self.counts, other.counts)

    def id_of(self, word):
        return self.ids[word]

    def count(self, word):
        return int(self.counts[self.ids[word]])

    def word_set(self):
        return set(self.words)

    def encode(self, tokens):
        """Map tokens to ids, silently dropping out-of-vocabulary tokens."""
        ids = self.ids
        return [ids[t] for t in tokens if t in ids]

    def lex_rank(self):
        """Per-id rank of each word in ascending lexicographic order (cached)."""
        if self._lex_rank is None:
            order = sorted(range(len(self.words)), key=lambda i: self.words[i])
            rank = np.empty(len(order), dtype=np.int64)
            rank[order] = np.arange(len(order))
            self._lex_rank = rank
        return self._lex_rank


def build_vocabulary(corpus, config=PreprocessConfig(), max_size=None, min_count=1):
    """Count post-normalization tokens and build a frequency-ranked vocabulary.

    Words with fewer than ``min_count`` occurrences are dropped first; the
    survivors are then truncated to the ``max_size`` most frequent under the
    deterministic ordering. ``max_size=None`` means unbounded.
    """
    if max_size is not None and max_size < 1:
        raise ValidationError("max_size must be >= 1 when bounded")
    counts = count_tokens(corpus, config)
    return vocabulary_from_counts(counts, max_size=max_size, min_count=min_count)


def count_tokens(corpus, config=PreprocessConfig()):
    """One streaming pass of per-word token counts (mergeable across shards)."""
    counts = Counter()
    for sentence in corpus:
        kept = normalize_sentence(sentence, config)
        if kept:
            counts.update(kept)
    return counts


def vocabulary_from_counts(counts, max_size=None, min_count=1):
    """Apply the min-count/truncation rules to already-merged counts."""
    kept = {w: c for w, c in counts.items() if c >= min_count}
    if not kept:
        raise EmptyVocabularyError(
            "no tokens survived normalization and frequency filtering"
        )
    if max_size is not None and len(kept) > max_size:
        top = sorted(kept.items(), key=lambda kv: (-kv[1], kv[0]))[:max_size]
        kept = dict(top)
    return Vocabulary(kept)


def intersect_vocabularies(vocabs):
    """Words present in every vocabulary of a nonempty list."""
    if not vocabs:
        raise ValidationError("need at least one vocabulary to intersect")
    common = set(vocabs[0].words)
    for v in vocabs[1:]:
        common &= v.word_set()
    return common


def save_vocabulary(vocab, path):
    """Write ``word<TAB>count`` lines under a ``#total_tokens<TAB>N`` header."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{VOCAB_HEADER}\t{vocab.total_tokens}\n")
        for word, count in zip(vocab.words, vocab.counts):
            fh.write(f"{word}\t{int(count)}\n")


def load_vocabulary(path):
    with open(path, encoding="utf-8") as fh:
        header = fh.readline()
        parts = header.rstrip("\n").split("\t")
        if len(parts) != 2 or parts[0] != VOCAB_HEADER:
            raise ParseError("expected '#total_tokens<TAB>N' header", path, 1)
        try:
            declared_total = int(parts[1])
        except ValueError:
            raise ParseError("total_tokens is not an integer", path, 1) from None
        counts = {}
        for lineno, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            fields = line.rstrip("\n").split("\t")
            if len(fields) != 2:
                raise ParseError("expected 'word<TAB>count'", path, lineno)
            word, raw = fields
            try:
                count = int(raw)
            except ValueError:
                raise ParseError(f"bad count {raw!r}", path, lineno) from None
            if word in counts:
                raise ParseError(f"duplicate word {word!r}", path, lineno)
            counts[word] = count
    vocab = Vocabulary(counts)
    if vocab.total_tokens != declared_total:
        raise ParseError(
            f"header total {declared_total} != sum of counts {vocab.total_tokens}",
            path,
        )
    return vocab
