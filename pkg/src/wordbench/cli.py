"""Command-line pipeline: preprocess, vocab, cooc, train, evaluate, sweep.

Every command is a pure function of its inputs, flags, and seed (at
``workers=1``), and every artifact gets a metadata sidecar recording the
fully-resolved configuration, so a run can be reproduced from its outputs
alone. Flag precedence: command line > config file > built-in default. The
config file is ``key = value`` lines under ``[section]`` headers.

Exit codes: 0 ok, 1 validation error, 2 I/O or parse error, 3 internal.
"""

import argparse
import configparser
import hashlib
import itertools
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import __version__, cooc, corpus, dialect, embedspace, releval, sgns, sppmi
from .errors import OovError, ParseError, ValidationError, WordbenchError

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2
EXIT_INTERNAL = 3

SGNS_DEFAULTS = dict(
    dim=320, window=11, negatives=15, epochs=5, initial_lr=0.025,
    final_lr_fraction=1e-4, subsample_threshold=0.0, unigram_power=0.75,
)
SPPMI_DEFAULTS = dict(window=5, dynamic_window=False, shift_k=1.0)
# top-50k vocabulary for the count route; frequency floor for the prediction route
VOCAB_DEFAULTS = {"sppmi": dict(max_size=50000, min_count=1),
                  "sgns": dict(max_size=None, min_count=5)}


def _parse_bool(raw):
    value = str(raw).strip().lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off"):
        return False
    raise ValidationError(f"expected a boolean, got {raw!r}")


def _parse_optional_int(raw):
    value = str(raw).strip().lower()
    if value in ("", "none", "unbounded"):
        return None
    return int(raw)


class Settings:
    """Layered lookup: explicit CLI value, then config file, then default."""

    def __init__(self, config_path=None):
        self.parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
        if config_path is not None:
            with open(config_path, encoding="utf-8") as fh:
                self.parser.read_file(fh)

    def get(self, section, key, default=None, conv=str, cli=None):
        if cli is not None:
            return cli
        if self.parser.has_option(section, key):
            raw = self.parser.get(section, key)
            try:
                return conv(raw)
            except (ValueError, TypeError) as exc:
                raise ValidationError(f"config [{section}] {key} = {raw!r}: {exc}") from exc
        return default

    def grid(self):
        """The [sweep] section as {param: [values]} (parallelism excluded)."""
        if not self.parser.has_section("sweep"):
            return {}
        grid = {}
        for key, raw in self.parser.items("sweep"):
            if key == "parallelism":
                continue
            grid[key] = [_convert_literal(v.strip()) for v in raw.split(",") if v.strip()]
        return grid


def _convert_literal(raw):
    for conv in (int, float):
        try:
            return conv(raw)
        except ValueError:
            continue
    return raw


def _preprocess_config(settings, args):
    exceptions = settings.get(
        "preprocess", "single_char_exceptions", "u",
        cli=getattr(args, "single_char_exceptions", None),
    )
    if isinstance(exceptions, str):
        exceptions = frozenset(w for w in exceptions.replace(",", " ").split() if w)
    return corpus.PreprocessConfig(
        lowercase=settings.get("preprocess", "lowercase", True, _parse_bool,
                               cli=getattr(args, "lowercase", None)),
        drop_nonalnum_tokens=settings.get("preprocess", "drop_nonalnum_tokens", True,
                                          _parse_bool,
                                          cli=getattr(args, "drop_nonalnum_tokens", None)),
        min_sentence_tokens=settings.get("preprocess", "min_sentence_tokens", 5, int,
                                         cli=getattr(args, "min_sentence_tokens", None)),
        drop_single_char=settings.get("preprocess", "drop_single_char", False, _parse_bool,
                                      cli=getattr(args, "drop_single_char", None)),
        single_char_exceptions=exceptions,
    )


def _config_digest(payload):
    canon = json.dumps(payload, sort_keys=True, ensure_ascii=False)
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()[:12]


def _file_digest(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def _write_metadata(path, payload):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True, ensure_ascii=False)
        fh.write("\n")


def _load_space(path, vocab_path=None):
    """Sniff dense (word2vec text) vs sparse (#sppmi TSV) and load."""
    with open(path, encoding="utf-8") as fh:
        first = fh.readline()
    if first.startswith(sppmi.SPPMI_HEADER):
        if vocab_path is None:
            raise ValidationError(f"{path} is a sparse artifact; pass --vocab")
        return sppmi.load_sppmi(path, corpus.load_vocabulary(vocab_path))
    vocab = corpus.load_vocabulary(vocab_path) if vocab_path else None
    return embedspace.load_text(path, vocab)


def _sniff_resource_kind(path):
    with open(path, encoding="utf-8") as fh:
        first = fh.readline()
    if first.startswith(sppmi.SPPMI_HEADER):
        return "sparse"
    parts = first.split()
    if len(parts) == 2 and all(p.isdigit() for p in parts):
        return "dense"
    return "dictionary"


# ---------------------------------------------------------------- commands


def cmd_preprocess(args, settings):
    config = _preprocess_config(settings, args)
    kept = dropped = 0
    with open(args.input, encoding="utf-8") as src, \
            open(args.output, "w", encoding="utf-8") as dst:
        for line in src:
            tokens = corpus.normalize_sentence(line.split(), config)
            if tokens:
                dst.write(" ".join(tokens) + "\n")
                kept += 1
            else:
                dropped += 1
    print(f"kept {kept} sentences, dropped {dropped}")
    return EXIT_OK


def cmd_vocab(args, settings):
    config = _preprocess_config(settings, args)
    algorithm = settings.get("model", "algorithm", "sppmi", cli=args.algorithm)
    defaults = VOCAB_DEFAULTS.get(algorithm, VOCAB_DEFAULTS["sppmi"])
    max_size = settings.get("vocab", "max_size", defaults["max_size"],
                            _parse_optional_int, cli=args.max_size)
    min_count = settings.get("vocab", "min_count", defaults["min_count"], int,
                             cli=args.min_count)
    vocab = corpus.build_vocabulary(
        corpus.SentenceFile(args.input), config, max_size=max_size, min_count=min_count
    )
    corpus.save_vocabulary(vocab, args.output)
    print(f"{len(vocab)} words, {vocab.total_tokens} tokens")
    return EXIT_OK


def cmd_cooc(args, settings):
    vocab = corpus.load_vocabulary(args.vocab)
    config = cooc.CoocConfig(
        window=settings.get("model", "window", SPPMI_DEFAULTS["window"], int,
                            cli=args.window),
        dynamic_window=settings.get("model", "dynamic_window", False, _parse_bool,
                                    cli=args.dynamic_window),
    )
    pre = _preprocess_config(settings, args)
    matrix = cooc.count_cooccurrences(
        corpus.SentenceFile(args.input, pre), vocab, config, seed=args.seed
    )
    cooc.save_cooc(matrix, args.output)
    print(f"{matrix.nnz()} cells, grand total {matrix.grand_total}")
    return EXIT_OK


def _resolved_train_config(args, settings):
    """Merge CLI/config/model defaults into one reproducible description."""
    algorithm = settings.get("model", "algorithm", "sppmi", cli=args.algorithm)
    if algorithm not in ("sgns", "sppmi"):
        raise ValidationError(f"unknown algorithm {algorithm!r} (expected sgns or sppmi)")
    seed = args.seed if args.seed is not None else settings.get("model", "seed", 1, int)
    workers = args.workers if args.workers is not None else 1
    model = {}
    if algorithm == "sgns":
        for key, default in SGNS_DEFAULTS.items():
            conv = int if isinstance(default, int) else float
            model[key] = settings.get("model", key, default, conv,
                                      cli=getattr(args, key, None))
    else:
        model["window"] = settings.get("model", "window", SPPMI_DEFAULTS["window"], int,
                                       cli=getattr(args, "window", None))
        model["dynamic_window"] = settings.get("model", "dynamic_window", False,
                                               _parse_bool,
                                               cli=getattr(args, "dynamic_window", None))
        model["shift_k"] = settings.get("model", "shift_k", SPPMI_DEFAULTS["shift_k"],
                                        float, cli=getattr(args, "shift_k", None))
    vocab_defaults = VOCAB_DEFAULTS[algorithm]
    vocab_cfg = {
        "max_size": settings.get("vocab", "max_size", vocab_defaults["max_size"],
                                 _parse_optional_int, cli=getattr(args, "max_size", None)),
        "min_count": settings.get("vocab", "min_count", vocab_defaults["min_count"], int,
                                  cli=getattr(args, "min_count", None)),
    }
    return algorithm, model, vocab_cfg, seed, workers


def _run_training(input_path, out_path, pre_config, algorithm, model, vocab_cfg,
                  seed, workers, vocab_path=None):
    stream = corpus.SentenceFile(input_path, pre_config)
    if vocab_path:
        vocab = corpus.load_vocabulary(vocab_path)
    else:
        vocab = corpus.build_vocabulary(corpus.SentenceFile(input_path), pre_config,
                                        max_size=vocab_cfg["max_size"],
                                        min_count=vocab_cfg["min_count"])
    if algorithm == "sgns":
        config = sgns.SgnsConfig(seed=seed, workers=workers, **model)
        embeddings = sgns.train(stream, vocab, config)
        embedspace.save_text(embeddings, out_path)
    else:
        ccfg = cooc.CoocConfig(window=model["window"], dynamic_window=model["dynamic_window"])
        matrix = cooc.count_cooccurrences(stream, vocab, ccfg, seed=seed)
        embeddings = sppmi.build_sppmi(matrix, sppmi.SppmiConfig(shift_k=model["shift_k"]))
        sppmi.save_sppmi(embeddings, out_path)
        corpus.save_vocabulary(vocab, out_path + ".vocab.tsv")
    return vocab


def cmd_train(args, settings):
    algorithm, model, vocab_cfg, seed, workers = _resolved_train_config(args, settings)
    pre_config = _preprocess_config(settings, args)
    vocab = _run_training(args.input, args.output, pre_config, algorithm, model,
                          vocab_cfg, seed, workers, vocab_path=args.vocab)
    payload = {
        "command": "train",
        "version": __version__,
        "algorithm": algorithm,
        "model": model,
        "vocab": {**vocab_cfg, "path": args.vocab, "size": len(vocab)},
        "preprocess": {
            "lowercase": pre_config.lowercase,
            "drop_nonalnum_tokens": pre_config.drop_nonalnum_tokens,
            "min_sentence_tokens": pre_config.min_sentence_tokens,
            "drop_single_char": pre_config.drop_single_char,
            "single_char_exceptions": sorted(pre_config.single_char_exceptions),
        },
        "corpus": {"path": args.input, "sha256": _file_digest(args.input)},
        "seed": seed,
        "workers": workers,
    }
    _write_metadata(args.output + ".meta.json", payload)
    print(f"wrote {args.output} (algorithm={algorithm}, vocab={len(vocab)})")
    return EXIT_OK


def cmd_eval_relations(args, settings):
    space = _load_space(args.embeddings, args.vocab)
    categories = releval.parse_tuple_file(args.dataset)
    report = releval.evaluate_relations(space, categories)
    releval.write_report_tsv(report, args.out_prefix + ".tsv")
    releval.write_report_json(report, args.out_prefix + ".json")
    acc = "NA" if report.accuracy is None else f"{report.accuracy:.4f}"
    print(f"attempted {report.attempted}, correct {report.correct}, "
          f"skipped {report.skipped_oov}, accuracy {acc}")
    return EXIT_OK


def cmd_eval_dialect(args, settings):
    targets = dialect.load_targets(args.targets)
    posts = dialect.load_posts(args.posts, targets)
    kind = args.kind or _sniff_resource_kind(args.resource)
    method = settings.get("eval", "method", "PROV", cli=args.method)
    if kind == "dictionary":
        dicts = dialect.load_dictionary(args.resource, args.standard)
        classifier = dialect.DictionaryClassifier(dicts, targets)
        report = dialect.evaluate_dialect(classifier, posts)
        report.coverage = dialect.coverage(dicts, posts)
        report.standard_coverage = dialect.standard_coverage(dicts, posts)
    elif kind in ("dense", "sparse"):
        space = _load_space(args.resource, args.vocab)
        classifier = dialect.EmbeddingClassifier(space, targets, method)
        report = dialect.evaluate_dialect(classifier, posts)
        report.coverage = dialect.coverage(space, posts)
    else:
        raise ValidationError(f"unknown resource kind {kind!r}")
    dialect.write_report_tsv(report, args.out_prefix + ".tsv")
    dialect.write_report_json(report, args.out_prefix + ".json")
    print(f"posts {report.posts}, accuracy {report.accuracy:.4f}, "
          f"mrr {report.mrr:.4f}, abstains {report.abstains}")
    return EXIT_OK


def cmd_nn(args, settings):
    space = _load_space(args.embeddings, args.vocab)
    for word, sim in embedspace.nearest_neighbors(space, args.word, args.top):
        print(f"{word}\t{sim:.6f}")
    return EXIT_OK


SWEEP_KEYS = frozenset(
    ("algorithm", "dim", "window", "negatives", "epochs", "initial_lr",
     "final_lr_fraction", "subsample_threshold", "unigram_power", "shift_k",
     "dynamic_window", "max_size", "min_count", "seed")
)


def cmd_sweep(args, settings):
    grid = dict(settings.grid())
    for item in args.param or []:
        key, _, raw = item.partition("=")
        if not raw:
            raise ValidationError(f"--param expects key=v1,v2,..., got {item!r}")
        grid[key] = [_convert_literal(v.strip()) for v in raw.split(",") if v.strip()]
    if not grid:
        raise ValidationError("sweep grid is empty; add a [sweep] section or --param")
    unknown = set(grid) - SWEEP_KEYS
    if unknown:
        raise ValidationError("unknown sweep parameter(s): " + ", ".join(sorted(unknown)))
    parallelism = args.parallelism or settings.get("sweep", "parallelism", 1, int)
    pre_config = _preprocess_config(settings, args)
    os.makedirs(args.out_dir, exist_ok=True)
    keys = sorted(grid)
    combos = [dict(zip(keys, values)) for values in itertools.product(*(grid[k] for k in keys))]

    def run_combo(overrides):
        combo_args = argparse.Namespace(**vars(args))
        for key, value in overrides.items():
            setattr(combo_args, key, value)
        algorithm, model, vocab_cfg, seed, workers = _resolved_train_config(
            combo_args, settings
        )
        desc = {"algorithm": algorithm, "model": model, "vocab": vocab_cfg, "seed": seed}
        digest = _config_digest(desc)
        out_path = f"{args.out_dir}/{digest}.{'txt' if algorithm == 'sgns' else 'tsv'}"
        config_str = ",".join(f"{k}={overrides[k]}" for k in keys)
        try:
            _run_training(args.input, out_path, pre_config, algorithm, model,
                          vocab_cfg, seed, workers)
            _write_metadata(out_path + ".meta.json",
                            {"command": "sweep", "version": __version__, **desc,
                             "corpus": {"path": args.input,
                                        "sha256": _file_digest(args.input)}})
            vocab_path = out_path + ".vocab.tsv" if algorithm == "sppmi" else None
            space = _load_space(out_path, vocab_path)
            report = releval.evaluate_relations(space, releval.parse_tuple_file(args.dataset))
            acc = report.accuracy
            return (digest, config_str, "ok", acc, out_path)
        except Exception as exc:  # a failing combination must not kill the sweep
            return (digest, config_str, f"failed: {exc}", None, out_path)

    if parallelism > 1:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            rows = list(pool.map(run_combo, combos))
    else:
        rows = [run_combo(c) for c in combos]
    rows.sort(key=lambda r: (r[3] is None, -(r[3] or 0.0), r[1]))
    leaderboard = f"{args.out_dir}/leaderboard.tsv"
    with open(leaderboard, "w", encoding="utf-8") as fh:
        fh.write("rank\tconfig_hash\tparams\tstatus\taccuracy\tartifact\n")
        for rank, (digest, config_str, status, acc, path) in enumerate(rows, start=1):
            acc_str = "NA" if acc is None else f"{acc:.6f}"
            fh.write(f"{rank}\t{digest}\t{config_str}\t{status}\t{acc_str}\t{path}\n")
    print(f"wrote {leaderboard} ({len(rows)} rows)")
    return EXIT_OK


# ---------------------------------------------------------------- parser


def _add_preprocess_flags(sub):
    sub.add_argument("--lowercase", type=_parse_bool, default=None, metavar="BOOL")
    sub.add_argument("--drop-nonalnum-tokens", dest="drop_nonalnum_tokens",
                     type=_parse_bool, default=None, metavar="BOOL")
    sub.add_argument("--min-sentence-tokens", dest="min_sentence_tokens",
                     type=int, default=None, metavar="N")
    sub.add_argument("--drop-single-char", dest="drop_single_char",
                     type=_parse_bool, default=None, metavar="BOOL")
    sub.add_argument("--single-char-exceptions", dest="single_char_exceptions",
                     default=None, metavar="WORDS")


def _add_model_flags(sub):
    sub.add_argument("--algorithm", choices=("sgns", "sppmi"), default=None)
    sub.add_argument("--dim", type=int, default=None)
    sub.add_argument("--window", type=int, default=None)
    sub.add_argument("--negatives", type=int, default=None)
    sub.add_argument("--epochs", type=int, default=None)
    sub.add_argument("--initial-lr", dest="initial_lr", type=float, default=None)
    sub.add_argument("--final-lr-fraction", dest="final_lr_fraction",
                     type=float, default=None)
    sub.add_argument("--subsample-threshold", dest="subsample_threshold",
                     type=float, default=None)
    sub.add_argument("--unigram-power", dest="unigram_power", type=float, default=None)
    sub.add_argument("--shift-k", dest="shift_k", type=float, default=None)
    sub.add_argument("--dynamic-window", dest="dynamic_window",
                     type=_parse_bool, default=None, metavar="BOOL")
    sub.add_argument("--max-size", dest="max_size", type=_parse_optional_int, default=None)
    sub.add_argument("--min-count", dest="min_count", type=int, default=None)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="wordbench",
        description="Train SPPMI/SGNS word embeddings and benchmark them.",
    )
    parser.add_argument("--config", default=None, help="key = value config file")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--workers", type=int, default=None)
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("preprocess", help="normalize a corpus file")
    sub.add_argument("--in", dest="input", required=True)
    sub.add_argument("--out", dest="output", required=True)
    _add_preprocess_flags(sub)
    sub.set_defaults(func=cmd_preprocess)

    sub = commands.add_parser("vocab", help="build a frequency-ranked vocabulary")
    sub.add_argument("--in", dest="input", required=True)
    sub.add_argument("--out", dest="output", required=True)
    sub.add_argument("--algorithm", choices=("sgns", "sppmi"), default=None)
    sub.add_argument("--max-size", dest="max_size", type=_parse_optional_int, default=None)
    sub.add_argument("--min-count", dest="min_count", type=int, default=None)
    _add_preprocess_flags(sub)
    sub.set_defaults(func=cmd_vocab)

    sub = commands.add_parser("cooc", help="count window co-occurrences")
    sub.add_argument("--in", dest="input", required=True)
    sub.add_argument("--vocab", required=True)
    sub.add_argument("--out", dest="output", required=True)
    sub.add_argument("--window", type=int, default=None)
    sub.add_argument("--dynamic-window", dest="dynamic_window",
                     type=_parse_bool, default=None, metavar="BOOL")
    _add_preprocess_flags(sub)
    sub.set_defaults(func=cmd_cooc)

    sub = commands.add_parser("train", help="train embeddings (sgns or sppmi route)")
    sub.add_argument("--in", dest="input", required=True)
    sub.add_argument("--out", dest="output", required=True)
    sub.add_argument("--vocab", default=None, help="use an existing vocabulary file")
    _add_model_flags(sub)
    _add_preprocess_flags(sub)
    sub.set_defaults(func=cmd_train)

    sub = commands.add_parser("eval-relations", help="run the analogy benchmark")
    sub.add_argument("--embeddings", required=True)
    sub.add_argument("--dataset", required=True)
    sub.add_argument("--vocab", default=None)
    sub.add_argument("--out-prefix", dest="out_prefix", required=True)
    sub.set_defaults(func=cmd_eval_relations)

    sub = commands.add_parser("eval-dialect", help="run the dialect benchmark")
    sub.add_argument("--resource", required=True)
    sub.add_argument("--kind", choices=("dense", "sparse", "dictionary"), default=None)
    sub.add_argument("--posts", required=True)
    sub.add_argument("--targets", required=True)
    sub.add_argument("--method", choices=("PROV", "CO"), default=None)
    sub.add_argument("--vocab", default=None)
    sub.add_argument("--standard", default=None)
    sub.add_argument("--out-prefix", dest="out_prefix", required=True)
    sub.set_defaults(func=cmd_eval_dialect)

    sub = commands.add_parser("nn", help="print nearest neighbors of a word")
    sub.add_argument("--embeddings", required=True)
    sub.add_argument("--vocab", default=None)
    sub.add_argument("--word", required=True)
    sub.add_argument("--top", type=int, default=10)
    sub.set_defaults(func=cmd_nn)

    sub = commands.add_parser("sweep", help="grid-train models and rank them")
    sub.add_argument("--in", dest="input", required=True)
    sub.add_argument("--dataset", required=True)
    sub.add_argument("--out-dir", dest="out_dir", required=True)
    sub.add_argument("--param", action="append", default=None,
                     help="grid axis, e.g. --param window=5,11 (repeatable)")
    sub.add_argument("--parallelism", type=int, default=None)
    _add_model_flags(sub)
    _add_preprocess_flags(sub)
    sub.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_VALIDATION
    try:
        settings = Settings(args.config)
        return args.func(args, settings)
    except (ValidationError, OovError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except WordbenchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
