"""Relation-identification benchmark: build, parse, and score analogy questions.

A category holds word pairs sharing one relation. Questions are the ordered
2-permutations of its pairs: tuples ``(A, B)`` and ``(C, D)`` yield the
question "A relates to B as which word relates to D?", answered by ranking
the vocabulary against the vector ``A - B + D`` and comparing the top word
to the expected answer ``C``.
"""

import json
from dataclasses import dataclass, field

from .embedspace import analogy_query
from .errors import ParseError, ValidationError

KINDS = ("syntactic", "semantic")


@dataclass(frozen=True)
class AnalogyCategory:
    name: str
    kind: str
    tuples: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError(f"kind must be one of {KINDS}, got {self.kind!r}")
        object.__setattr__(self, "tuples", tuple((l, r) for l, r in self.tuples))
        seen = set()
        for left, right in self.tuples:
            if left == right:
                raise ValidationError(
                    f"category {self.name!r}: pair ({left!r}, {right!r}) repeats one word"
                )
            if (left, right) in seen:
                raise ValidationError(
                    f"category {self.name!r}: duplicate pair ({left!r}, {right!r})"
                )
            seen.add((left, right))


@dataclass(frozen=True)
class AnalogyQuestion:
    a: str
    b: str
    c: str
    d: str
    category: str


def generate_questions(category):
    """Ordered pairs of distinct tuples, dropping questions with repeated words.

    For ``n`` tuples the raw count is ``n * (n - 1)``; questions whose four
    words are not pairwise distinct are silently dropped (the count is
    recoverable as the difference from the raw total).
    """
    if len(category.tuples) < 2:
        raise ValidationError(
            f"category {category.name!r} needs at least 2 tuples to form questions"
        )
    questions = []
    for i, (a, b) in enumerate(category.tuples):
        for j, (c, d) in enumerate(category.tuples):
            if i == j:
                continue
            if len({a, b, c, d}) == 4:
                questions.append(AnalogyQuestion(a, b, c, d, category.name))
    return questions


@dataclass
class CategoryResult:
    name: str
    kind: str
    generated: int
    dropped_distinct: int
    attempted: int = 0
    correct: int = 0
    skipped_oov: int = 0

    @property
    def accuracy(self):
        """correct / attempted, or None when nothing could be attempted."""
        if self.attempted == 0:
            return None
        return self.correct / self.attempted


@dataclass
class RelationReport:
    categories: list

    @property
    def attempted(self):
        return sum(c.attempted for c in self.categories)

    @property
    def correct(self):
        return sum(c.correct for c in self.categories)

    @property
    def skipped_oov(self):
        return sum(c.skipped_oov for c in self.categories)

    @property
    def generated(self):
        return sum(c.generated for c in self.categories)

    @property
    def accuracy(self):
        """Micro-average over attempted questions (the headline number)."""
        if self.attempted == 0:
            return None
        return self.correct / self.attempted

    @property
    def macro_accuracy(self):
        scores = [c.accuracy for c in self.categories if c.accuracy is not None]
        if not scores:
            return None
        return sum(scores) / len(scores)


def evaluate_relations(space, categories, exclude_queries=True):
    """Score every category's questions against an embedding space.

    A question whose ``a``, ``b``, ``d``, or expected answer is out of
    vocabulary is counted under ``skipped_oov``; otherwise it is attempted
    and correct iff the top-ranked word equals the expected answer.
    """
    results = []
    for category in categories:
        questions = generate_questions(category)
        raw = len(category.tuples) * (len(category.tuples) - 1)
        res = CategoryResult(
            name=category.name,
            kind=category.kind,
            generated=len(questions),
            dropped_distinct=raw - len(questions),
        )
        for q in questions:
            if not all(space.contains(w) for w in (q.a, q.b, q.d, q.c)):
                res.skipped_oov += 1
                continue
            res.attempted += 1
            top = analogy_query(space, q.a, q.b, q.d, top_n=1, exclude_queries=exclude_queries)
            if top and top[0][0] == q.c:
                res.correct += 1
        results.append(res)
    return RelationReport(results)


def parse_tuple_file(path):
    """Parse categories from ``: name kind`` headers and ``left<TAB>right`` lines."""
    categories = []
    name = None
    kind = None
    tuples = []
    seen_names = set()

    def close():
        if name is not None:
            categories.append(AnalogyCategory(name, kind, tuples))

    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            if line.startswith(":"):
                close()
                parts = line[1:].split()
                if len(parts) < 2 or parts[-1] not in KINDS:
                    raise ParseError(
                        "expected ': <category-name> <syntactic|semantic>'", path, lineno
                    )
                name = " ".join(parts[:-1])
                kind = parts[-1]
                if name in seen_names:
                    raise ParseError(f"duplicate category {name!r}", path, lineno)
                seen_names.add(name)
                tuples = []
                continue
            if name is None:
                raise ParseError("tuple line before any category header", path, lineno)
            fields = line.split("\t")
            if len(fields) != 2 or not fields[0] or not fields[1]:
                raise ParseError("expected 'left<TAB>right'", path, lineno)
            pair = (fields[0], fields[1])
            if pair in tuples:
                raise ParseError(f"duplicate tuple {pair!r}", path, lineno)
            if pair[0] == pair[1]:
                raise ParseError(f"tuple {pair!r} repeats one word", path, lineno)
            tuples.append(pair)
    close()
    return categories


def vet_dataset(categories, vocab_intersection):
    """Tuples whose words fall outside the common vocabulary, per category.

    Returns ``{category name: [offending tuples]}``; an empty dict means the
    dataset is safe for every model in the comparison.
    """
    report = {}
    for category in categories:
        bad = [
            (left, right)
            for left, right in category.tuples
            if left not in vocab_intersection or right not in vocab_intersection
        ]
        if bad:
            report[category.name] = bad
    return report


def _fmt_acc(value):
    return "NA" if value is None else f"{value:.6f}"


def write_report_tsv(report, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("category\tkind\tattempted\tcorrect\tskipped\taccuracy\n")
        for c in report.categories:
            fh.write(
                f"{c.name}\t{c.kind}\t{c.attempted}\t{c.correct}"
                f"\t{c.skipped_oov}\t{_fmt_acc(c.accuracy)}\n"
            )
        fh.write(
            f"OVERALL\t-\t{report.attempted}\t{report.correct}"
            f"\t{report.skipped_oov}\t{_fmt_acc(report.accuracy)}\n"
        )


def report_to_dict(report):
    return {
        "categories": [
            {
                "category": c.name,
                "kind": c.kind,
                "generated": c.generated,
                "dropped_distinct": c.dropped_distinct,
                "attempted": c.attempted,
                "correct": c.correct,
                "skipped": c.skipped_oov,
                "accuracy": c.accuracy,
            }
            for c in report.categories
        ],
        "generated": report.generated,
        "attempted": report.attempted,
        "correct": report.correct,
        "skipped": report.skipped_oov,
        "accuracy": report.accuracy,
        "macro_accuracy": report.macro_accuracy,
    }


def write_report_json(report, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report_to_dict(report), fh, indent=2, ensure_ascii=False)
        fh.write("\n")
