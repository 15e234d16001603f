"""SkipGram with negative sampling, trained by streaming SGD.

The per-pair update (:func:`pair_step`) is the reference operation: it
computes the loss

    L = -ln s(w . c+) - sum_j ln s(-w . c-_j)

with ``s`` the logistic function, evaluates all gradients at the pre-update
parameters, and applies one SGD step. :func:`train` runs the same update
over every (center, context) pair of the corpus; its inner loop is a
compiled kernel fed by per-sentence batches of pre-drawn randomness, so a
single-worker run is exactly reproducible from the seed (and equal to
replaying the batches through ``pair_step``). Multi-worker training updates
the shared matrices without locks; lost updates are tolerated and
determinism is only guaranteed at ``workers=1``.
"""

import threading
from dataclasses import dataclass

import numpy as np
from numba import njit

from .embedspace import DenseEmbeddings
from .errors import TrainingError, ValidationError

SIGMOID_CLAMP = 30.0


@dataclass(frozen=True)
class SgnsConfig:
    dim: int = 320
    window: int = 11
    negatives: int = 15
    epochs: int = 5
    initial_lr: float = 0.025
    final_lr_fraction: float = 1e-4
    subsample_threshold: float = 0.0
    unigram_power: float = 0.75
    seed: int = 1
    workers: int = 1

    def __post_init__(self):
        if min(self.dim, self.window, self.negatives, self.epochs) < 1:
            raise ValidationError("dim, window, negatives, and epochs must be >= 1")
        if self.initial_lr <= 0:
            raise ValidationError("initial_lr must be positive")
        if not 0 < self.final_lr_fraction <= 1:
            raise ValidationError("final_lr_fraction must be in (0, 1]")
        if self.subsample_threshold < 0:
            raise ValidationError("subsample_threshold must be >= 0")
        if self.workers < 1:
            raise ValidationError("workers must be >= 1")


class SgnsModel:
    """Input/output vector matrices plus the noise-sampling table."""

    def __init__(self, vocab, config, input_vectors, output_vectors, noise_cdf):
        self.vocab = vocab
        self.config = config
        self.input_vectors = input_vectors
        self.output_vectors = output_vectors
        self.noise_cdf = noise_cdf


@dataclass
class GradientBundle:
    """Gradients of the pair loss wrt the center row, context row, and each negative row."""

    center: np.ndarray
    context: np.ndarray
    negatives: np.ndarray


@dataclass
class TrainStats:
    epoch_mean_loss: list
    epoch_pairs: list
    total_expected_pairs: float


def init_model(vocab, config):
    """Input vectors uniform in (-0.5/dim, +0.5/dim) under the seed; outputs zero."""
    if len(vocab) == 0:
        raise ValidationError("vocabulary is empty")
    rng = np.random.default_rng(config.seed)
    dim = config.dim
    w = (rng.random((len(vocab), dim)) - 0.5) / dim
    c = np.zeros((len(vocab), dim))
    cdf = np.cumsum(vocab.counts.astype(np.float64) ** config.unigram_power)
    return SgnsModel(vocab, config, w, c, cdf)


def draw_negatives(model, n, exclude, rng):
    """Sample ``n`` noise ids from the unigram^power table, redrawing ``exclude``."""
    if len(model.vocab) < 2:
        raise ValidationError("need at least two words to draw negatives")
    cdf = model.noise_cdf
    out = np.empty(n, dtype=np.int64)
    filled = 0
    while filled < n:
        ids = np.searchsorted(cdf, rng.random(n - filled) * cdf[-1], side="right")
        ids = ids[ids != exclude]
        out[filled : filled + len(ids)] = ids
        filled += len(ids)
    return out


def _sigmoid(x):
    return 1.0 / (1.0 + np.exp(-np.clip(x, -SIGMOID_CLAMP, SIGMOID_CLAMP)))


def _pair_loss_and_grads(model, center, context, negatives):
    negs = np.asarray(negatives, dtype=np.int64)
    w = model.input_vectors[center]
    out_rows = model.output_vectors[np.concatenate(([context], negs))]
    dots = np.clip(out_rows @ w, -SIGMOID_CLAMP, SIGMOID_CLAMP)
    loss = float(np.log1p(np.exp(-dots[0])) + np.log1p(np.exp(dots[1:])).sum())
    # d loss / d dot: sigma(x)-1 for the positive, sigma(x) for each negative
    g = _sigmoid(dots)
    g[0] -= 1.0
    return negs, w, out_rows, g, loss


def analytic_gradients(model, center, context, negatives):
    """Gradients of the pair loss at the current parameters, without mutation."""
    negs, w, out_rows, g, _ = _pair_loss_and_grads(model, center, context, negatives)
    return GradientBundle(
        center=g @ out_rows,
        context=g[0] * w,
        negatives=np.outer(g[1:], w),
    )


def pair_step(model, center, context, negatives, lr):
    """One SGD update on (center, context, negatives); returns the pre-update loss.

    All gradients are evaluated at the pre-update parameters; a negative id
    that repeats (or collides with the context) accumulates additively.
    """
    negs, w, out_rows, g, loss = _pair_loss_and_grads(model, center, context, negatives)
    grad_w = g @ out_rows
    np.add.at(
        model.output_vectors,
        np.concatenate(([context], negs)),
        -lr * np.outer(g, w),
    )
    model.input_vectors[center] = w - lr * grad_w
    return loss


@njit(cache=True, nogil=True)
def _run_pairs(w_mat, c_mat, centers, contexts, negs, lrs):  # pragma: no cover - compiled
    dim = w_mat.shape[1]
    k = negs.shape[1]
    grad_w = np.empty(dim)
    g_out = np.empty(k + 1)
    total = 0.0
    for p in range(centers.shape[0]):
        wi = centers[p]
        ci = contexts[p]
        lr = lrs[p]
        # read phase: all dots and gradients at the pre-update parameters,
        # so a repeated output row within one pair accumulates additively
        for d in range(dim):
            grad_w[d] = 0.0
        for j in range(k + 1):
            ri = ci if j == 0 else negs[p, j - 1]
            dot = 0.0
            for d in range(dim):
                dot += w_mat[wi, d] * c_mat[ri, d]
            if dot > SIGMOID_CLAMP:
                dot = SIGMOID_CLAMP
            elif dot < -SIGMOID_CLAMP:
                dot = -SIGMOID_CLAMP
            sig = 1.0 / (1.0 + np.exp(-dot))
            if j == 0:
                total += np.log1p(np.exp(-dot))
                g_out[0] = sig - 1.0
            else:
                total += np.log1p(np.exp(dot))
                g_out[j] = sig
            for d in range(dim):
                grad_w[d] += g_out[j] * c_mat[ri, d]
        # write phase
        for j in range(k + 1):
            ri = ci if j == 0 else negs[p, j - 1]
            g = lr * g_out[j]
            for d in range(dim):
                c_mat[ri, d] -= g * w_mat[wi, d]
        for d in range(dim):
            w_mat[wi, d] -= lr * grad_w[d]
    return total


def schedule_lr(pair_index, total_pairs, config):
    """Linear decay from ``initial_lr``, clamped at ``initial_lr * final_lr_fraction``.

    ``pair_index`` may be a scalar or an array of global pair counters.
    """
    frac = np.asarray(pair_index, dtype=np.float64) / total_pairs
    lr = config.initial_lr * (1.0 - frac)
    return np.maximum(lr, config.initial_lr * config.final_lr_fraction)


def _expected_sentence_pairs(n, window):
    # E over dynamic windows: one side contributes mean_w min(i, w); both
    # sides of position i sum to the same total as position n-1-i, so double
    i = np.arange(n, dtype=np.float64)
    full = window * (window + 1) / 2.0
    capped = i * (i + 1) / 2.0 + (window - i) * i
    side = np.where(i >= window, full, capped) / window
    return float(2.0 * side.sum())


def expected_pair_count(corpus, vocab, config):
    """Expected (center, context) pairs in one epoch under dynamic windows.

    Computed from post-OOV-removal sentence lengths. When subsampling is
    enabled the expectation still uses the unsubsampled lengths, which only
    makes the learning-rate decay conservative (the floor engages early).
    """
    cache = {}
    total = 0.0
    for sentence in corpus:
        n = len(vocab.encode(sentence))
        if n < 2:
            continue
        if n not in cache:
            cache[n] = _expected_sentence_pairs(n, config.window)
        total += cache[n]
    return total


def _keep_probabilities(vocab, threshold):
    if threshold <= 0:
        return None
    freq = vocab.counts.astype(np.float64) / vocab.total_tokens
    return np.minimum(1.0, np.sqrt(threshold / freq))


def _sentence_batch(ids, config, noise_cdf, keep_prob, rng):
    """Draw one sentence's (centers, contexts, negatives) arrays.

    Draw order is fixed: subsampling keeps (when enabled), per-center
    effective windows, then the negatives matrix with collision redraws.
    """
    if keep_prob is not None and len(ids):
        ids = ids[rng.random(len(ids)) < keep_prob[ids]]
    n = len(ids)
    if n < 2:
        return None
    widths = rng.integers(1, config.window + 1, size=n)
    centers = []
    contexts = []
    for i in range(n):
        lo = max(0, i - widths[i])
        hi = min(n, i + widths[i] + 1)
        for j in range(lo, hi):
            if j != i:
                centers.append(ids[i])
                contexts.append(ids[j])
    if not centers:
        return None
    centers = np.asarray(centers, dtype=np.int64)
    contexts = np.asarray(contexts, dtype=np.int64)
    negs = np.searchsorted(
        noise_cdf,
        rng.random((len(centers), config.negatives)) * noise_cdf[-1],
        side="right",
    )
    collide = negs == contexts[:, None]
    while collide.any():
        negs[collide] = np.searchsorted(
            noise_cdf, rng.random(int(collide.sum())) * noise_cdf[-1], side="right"
        )
        collide = negs == contexts[:, None]
    return centers, contexts, negs


def _epoch_batches(corpus, vocab, config, noise_cdf, epoch, worker_idx):
    """Deterministic per-worker stream of sentence batches for one epoch."""
    rng = np.random.default_rng([config.seed, epoch, worker_idx])
    keep_prob = _keep_probabilities(vocab, config.subsample_threshold)
    for si, sentence in enumerate(corpus):
        if si % config.workers != worker_idx:
            continue
        ids = np.asarray(vocab.encode(sentence), dtype=np.int64)
        batch = _sentence_batch(ids, config, noise_cdf, keep_prob, rng)
        if batch is not None:
            yield batch


def train_model(corpus, vocab, config=SgnsConfig()):
    """Run the full training loop; returns the model and loss bookkeeping."""
    per_epoch = expected_pair_count(corpus, vocab, config)
    if per_epoch <= 0:
        raise ValidationError("corpus yields no training pairs (empty after filtering?)")
    total_expected = per_epoch * config.epochs
    model = init_model(vocab, config)
    w_mat, c_mat = model.input_vectors, model.output_vectors
    counter = [0]  # global pair count; racy under workers > 1, by contract
    stats = TrainStats([], [], total_expected)

    def run_worker(epoch, worker_idx, sums):
        loss = 0.0
        pairs = 0
        for centers, contexts, negs in _epoch_batches(
            corpus, vocab, config, model.noise_cdf, epoch, worker_idx
        ):
            start = counter[0]
            counter[0] = start + len(centers)
            lrs = schedule_lr(np.arange(start, start + len(centers)), total_expected, config)
            loss += _run_pairs(w_mat, c_mat, centers, contexts, negs, lrs)
            pairs += len(centers)
        sums[worker_idx] = (loss, pairs)

    for epoch in range(config.epochs):
        sums = [(0.0, 0)] * config.workers
        if config.workers == 1:
            run_worker(epoch, 0, sums)
        else:
            threads = [
                threading.Thread(target=run_worker, args=(epoch, w, sums))
                for w in range(config.workers)
            ]
            for t in threads:
                t.start()
            for t in threads:
                t.join()
        epoch_loss = sum(s[0] for s in sums)
        epoch_pairs = sum(s[1] for s in sums)
        if epoch_pairs == 0:
            raise ValidationError("corpus yields no training pairs (empty after filtering?)")
        if not (np.isfinite(w_mat).all() and np.isfinite(c_mat).all()):
            raise TrainingError(
                f"non-finite parameter detected after epoch {epoch}; "
                "lower initial_lr or check the corpus"
            )
        stats.epoch_mean_loss.append(epoch_loss / epoch_pairs)
        stats.epoch_pairs.append(epoch_pairs)
    return model, stats


def train(corpus, vocab, config=SgnsConfig()):
    """Train and return the input-vector matrix as dense embeddings."""
    model, _ = train_model(corpus, vocab, config)
    return DenseEmbeddings(vocab, model.input_vectors)
