"""Dialect identification: similarity-vote and dictionary classifiers plus scoring.

Each word of a post votes for the target it is most similar to; posts are
labeled with the province collecting the most votes. The CO variant adds
country names as vote sinks: a word closest to a country name casts no
province vote, which filters general-vocabulary words out of the tally. The
dictionary baseline replaces similarity with membership lookup in
per-province word sets.
"""

import json
from dataclasses import dataclass, field

import numpy as np
from scipy import sparse as _sparse

from .errors import ParseError, ValidationError

METHODS = ("PROV", "CO")


@dataclass(frozen=True)
class TargetSet:
    """Province inventory, optional country sinks, and name aliases.

    Aliases map alternative spellings (as they appear in a corpus
    tokenization) to canonical names.
    """

    provinces: tuple
    countries: tuple = ()
    aliases: dict = field(default_factory=dict)

    def __post_init__(self):
        provinces = tuple(p.lower() for p in self.provinces)
        countries = tuple(c.lower() for c in self.countries)
        aliases = {a.lower(): c.lower() for a, c in self.aliases.items()}
        object.__setattr__(self, "provinces", provinces)
        object.__setattr__(self, "countries", countries)
        object.__setattr__(self, "aliases", aliases)
        if not provinces:
            raise ValidationError("target set needs at least one province")
        if len(set(provinces)) != len(provinces):
            raise ValidationError("province names must be distinct")
        if set(countries) & set(provinces):
            raise ValidationError("country names must be disjoint from provinces")
        for alias, canon in aliases.items():
            if canon not in provinces and canon not in countries:
                raise ValidationError(f"alias {alias!r} points to unknown target {canon!r}")

    def canonical(self, name):
        name = name.lower()
        return self.aliases.get(name, name)


class DialectDictionary:
    """Per-province word sets plus the standard-language reference set."""

    def __init__(self, provinces, standard=()):
        self.provinces = {name: set(words) for name, words in provinces.items()}
        self.standard = set(standard)

    def check_disjoint(self):
        """Raise unless province sets are pairwise disjoint and clear of standard."""
        seen = {}
        for name, words in self.provinces.items():
            for w in words:
                if w in seen:
                    raise ValidationError(
                        f"word {w!r} appears in both {seen[w]!r} and {name!r};"
                        " run dedup_dictionaries first"
                    )
                seen[w] = name
            overlap = words & self.standard
            if overlap:
                raise ValidationError(
                    f"province {name!r} still contains standard words, e.g."
                    f" {sorted(overlap)[:3]}"
                )

    def province_of(self, word):
        for name, words in self.provinces.items():
            if word in words:
                return name
        return None


def dedup_dictionaries(raw, standard=()):
    """Drop cross-province duplicates everywhere, then standard-language words.

    A word listed under two or more provinces is removed from all of them; a
    word also present in the standard set is deleted from the dialect side.
    """
    standard = set(standard)
    counts = {}
    for words in raw.values():
        for w in set(words):
            counts[w] = counts.get(w, 0) + 1
    provinces = {
        name: {w for w in words if counts[w] == 1 and w not in standard}
        for name, words in raw.items()
    }
    return DialectDictionary(provinces, standard)


@dataclass(frozen=True)
class LabeledPost:
    label: str
    tokens: tuple

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))


@dataclass(frozen=True)
class RankEntry:
    name: str
    votes: int
    similarity: float = 0.0


@dataclass(frozen=True)
class ClassifyResult:
    """Ranked voted provinces plus the bookkeeping that conserves post length.

    ``entries`` holds only provinces that received at least one vote;
    province votes + discarded country votes + non-voting words (out of
    vocabulary, or with a zero vector) always sum to the post length.
    """

    entries: tuple
    discarded_country_votes: int = 0
    oov_words: int = 0
    zero_vector_words: int = 0

    @property
    def abstain(self):
        return not self.entries

    @property
    def votes(self):
        return sum(e.votes for e in self.entries)


class EmbeddingClassifier:
    """Vote by cosine similarity between post words and target-name vectors."""

    def __init__(self, space, targets, method="PROV"):
        if method not in METHODS:
            raise ValidationError(f"method must be one of {METHODS}, got {method!r}")
        if method == "CO" and not targets.countries:
            raise ValidationError("method CO requires a country section in the target set")
        self.space = space
        self.targets = targets
        self.method = method
        self.provinces = targets.provinces
        names = list(targets.provinces)
        if method == "CO":
            names += list(targets.countries)
        self._names = names
        self._is_country = [n in targets.countries for n in names]
        vectors = []
        missing = []
        for name in names:
            word = self._resolve(name)
            if word is None:
                missing.append(name)
            else:
                vectors.append(space.vector(word))
        if missing:
            raise ValidationError(
                "target name(s) missing from embedding vocabulary: " + ", ".join(missing)
            )
        if _sparse.issparse(vectors[0]):
            mat = _sparse.vstack(vectors).tocsr()
            norms = np.sqrt(np.asarray(mat.multiply(mat).sum(axis=1)).ravel())
        else:
            mat = np.vstack(vectors)
            norms = np.linalg.norm(mat, axis=1)
        self._matrix = mat
        self._norms = norms
        self._name_ranks = _name_rank(names)

    def _resolve(self, target_name):
        """The vocabulary word carrying this target's vector (name or alias)."""
        if self.space.contains(target_name):
            return target_name
        for alias, canon in self.targets.aliases.items():
            if canon == target_name and self.space.contains(alias):
                return alias
        return None

    def _target_scores(self, vec):
        if _sparse.issparse(vec):
            dots = np.asarray((self._matrix @ vec.T).todense()).ravel()
            vnorm = np.sqrt(vec.multiply(vec).sum())
        else:
            dots = self._matrix @ vec
            vnorm = np.linalg.norm(vec)
        denom = self._norms * vnorm
        return np.divide(dots, denom, out=np.zeros_like(dots), where=denom > 0.0)

    def __call__(self, tokens):
        votes = {}
        sims = {}
        discarded = 0
        oov = 0
        zero = 0
        for tok in tokens:
            if not self.space.contains(tok):
                oov += 1
                continue
            vec = self.space.vector(tok)
            vnorm = (
                np.sqrt(vec.multiply(vec).sum())
                if _sparse.issparse(vec)
                else np.linalg.norm(vec)
            )
            if vnorm == 0.0:
                zero += 1
                continue
            scores = self._target_scores(vec)
            # argmax with lexicographic tie-break on the target name
            ranks = self._name_ranks
            best = max(range(len(scores)), key=lambda i: (scores[i], -ranks[i]))
            if self._is_country[best]:
                discarded += 1
                continue
            name = self._names[best]
            votes[name] = votes.get(name, 0) + 1
            sims[name] = sims.get(name, 0.0) + float(scores[best])
        entries = tuple(
            RankEntry(name, votes[name], sims[name])
            for name in sorted(votes, key=lambda n: (-votes[n], -sims[n], n))
        )
        return ClassifyResult(entries, discarded, oov, zero)


def _name_rank(names):
    # rank in ascending lexicographic order; higher rank = later name
    order = sorted(range(len(names)), key=lambda i: names[i])
    rank = [0] * len(names)
    for pos, idx in enumerate(order):
        rank[idx] = pos
    return rank


class DictionaryClassifier:
    """Vote by membership lookup in deduplicated per-province word sets."""

    def __init__(self, dictionary, targets=None):
        dictionary.check_disjoint()
        self.dictionary = dictionary
        if targets is not None:
            unknown = set(dictionary.provinces) - set(targets.provinces)
            if unknown:
                raise ValidationError(
                    "dictionary provinces not in target set: " + ", ".join(sorted(unknown))
                )
            self.provinces = targets.provinces
        else:
            self.provinces = tuple(sorted(dictionary.provinces))
        self._word_to_province = {}
        for name, words in dictionary.provinces.items():
            for w in words:
                self._word_to_province[w] = name

    def __call__(self, tokens):
        votes = {}
        misses = 0
        for tok in tokens:
            name = self._word_to_province.get(tok)
            if name is None:
                misses += 1
            else:
                votes[name] = votes.get(name, 0) + 1
        entries = tuple(
            RankEntry(name, votes[name])
            for name in sorted(votes, key=lambda n: (-votes[n], n))
        )
        return ClassifyResult(entries, oov_words=misses)


def classify_embedding(space, post, targets, method="PROV"):
    """One-shot similarity-vote classification of a single post."""
    return EmbeddingClassifier(space, targets, method)(post)


def classify_dictionary(dictionary, post):
    """One-shot dictionary-lookup classification of a single post."""
    return DictionaryClassifier(dictionary)(post)


@dataclass
class ProvinceScore:
    posts: int = 0
    correct: int = 0
    rr_sum: float = 0.0

    @property
    def accuracy(self):
        return self.correct / self.posts if self.posts else None

    @property
    def mrr(self):
        return self.rr_sum / self.posts if self.posts else None


@dataclass
class DialectReport:
    accuracy: float
    mrr: float
    posts: int
    abstains: int
    per_province: dict
    coverage: float = None
    standard_coverage: float = None


def evaluate_dialect(classifier, posts):
    """Accuracy and mean reciprocal rank of a classifier over labeled posts.

    Provinces with zero votes are appended to each ranking in lexicographic
    order, so every label has a total rank. Abstaining posts (no votes at
    all) count as incorrect and take their reciprocal rank from that same
    appended ordering.
    """
    if not posts:
        raise ValidationError("no posts to evaluate")
    provinces = list(classifier.provinces)
    inventory = set(provinces)
    unvoted_tail = sorted(provinces)
    correct_total = 0
    rr_total = 0.0
    abstains = 0
    per_province = {name: ProvinceScore() for name in provinces}
    for post in posts:
        if post.label not in inventory:
            raise ValidationError(f"post label {post.label!r} not in the target set")
        result = classifier(post.tokens)
        ranked = [e.name for e in result.entries]
        ranked += [name for name in unvoted_tail if name not in set(ranked)]
        rank = ranked.index(post.label) + 1
        correct = bool(result.entries) and result.entries[0].name == post.label
        if result.abstain:
            abstains += 1
        score = per_province[post.label]
        score.posts += 1
        score.correct += int(correct)
        score.rr_sum += 1.0 / rank
        correct_total += int(correct)
        rr_total += 1.0 / rank
    n = len(posts)
    return DialectReport(
        accuracy=correct_total / n,
        mrr=rr_total / n,
        posts=n,
        abstains=abstains,
        per_province=per_province,
    )


def coverage(resource, posts):
    """Fraction of the posts' unique tokens found in the resource.

    For an embedding space, "found" means in vocabulary; for a dictionary it
    means listed under any province (see :func:`standard_coverage` for the
    standard-language side).
    """
    if not posts:
        raise ValidationError("no posts to evaluate")
    unique = {tok for post in posts for tok in post.tokens}
    if not unique:
        return 0.0
    if isinstance(resource, DialectDictionary):
        found = sum(1 for tok in unique if resource.province_of(tok) is not None)
    else:
        found = sum(1 for tok in unique if resource.contains(tok))
    return found / len(unique)


def standard_coverage(dictionary, posts):
    """Fraction of the posts' unique tokens present in the standard set."""
    if not posts:
        raise ValidationError("no posts to evaluate")
    unique = {tok for post in posts for tok in post.tokens}
    if not unique:
        return 0.0
    return sum(1 for tok in unique if tok in dictionary.standard) / len(unique)


def load_targets(path):
    """Parse the target-set file: province lines, then an optional [countries] section.

    A province line may carry TAB-separated aliases after the canonical name.
    """
    provinces = []
    countries = []
    aliases = {}
    section = "provinces"
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if line == "[countries]":
                section = "countries"
                continue
            if line.startswith("["):
                raise ParseError(f"unknown section {line!r}", path, lineno)
            fields = line.split("\t")
            name = fields[0].lower()
            if section == "provinces":
                provinces.append(name)
            else:
                countries.append(name)
            for alias in fields[1:]:
                aliases[alias.lower()] = name
    try:
        return TargetSet(tuple(provinces), tuple(countries), aliases)
    except ValidationError as exc:
        raise ParseError(str(exc), path) from exc


def load_posts(path, targets=None):
    """Load ``province<TAB>post text`` lines; labels are alias-canonicalized."""
    posts = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            fields = line.rstrip("\n").split("\t", 1)
            if len(fields) != 2:
                raise ParseError("expected 'province<TAB>post text'", path, lineno)
            label, text = fields
            label = label.lower()
            if targets is not None:
                label = targets.canonical(label)
            posts.append(LabeledPost(label, tuple(text.split())))
    if not posts:
        raise ParseError("no posts found", path)
    return posts


def load_dictionary(path, standard_path=None):
    """Load ``province<TAB>word`` lines plus an optional one-word-per-line standard list."""
    raw = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            fields = line.rstrip("\n").split("\t")
            if len(fields) != 2 or not fields[0] or not fields[1]:
                raise ParseError("expected 'province<TAB>word'", path, lineno)
            raw.setdefault(fields[0].lower(), set()).add(fields[1].lower())
    standard = set()
    if standard_path is not None:
        with open(standard_path, encoding="utf-8") as fh:
            for line in fh:
                word = line.strip().lower()
                if word:
                    standard.add(word)
    return dedup_dictionaries(raw, standard)


def report_to_dict(report):
    return {
        "posts": report.posts,
        "accuracy": report.accuracy,
        "mrr": report.mrr,
        "abstains": report.abstains,
        "coverage": report.coverage,
        "standard_coverage": report.standard_coverage,
        "per_province": {
            name: {
                "posts": s.posts,
                "correct": s.correct,
                "accuracy": s.accuracy,
                "mrr": s.mrr,
            }
            for name, s in report.per_province.items()
        },
    }


def write_report_json(report, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report_to_dict(report), fh, indent=2, ensure_ascii=False)
        fh.write("\n")


def write_report_tsv(report, path):
    def fmt(value):
        return "NA" if value is None else f"{value:.6f}"

    with open(path, "w", encoding="utf-8") as fh:
        fh.write("province\tposts\tcorrect\taccuracy\tmrr\n")
        for name in sorted(report.per_province):
            s = report.per_province[name]
            fh.write(f"{name}\t{s.posts}\t{s.correct}\t{fmt(s.accuracy)}\t{fmt(s.mrr)}\n")
        fh.write(
            f"OVERALL\t{report.posts}\t"
            f"{sum(s.correct for s in report.per_province.values())}\t"
            f"{fmt(report.accuracy)}\t{fmt(report.mrr)}\n"
        )
