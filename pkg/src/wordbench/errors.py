"""Exception types shared across the package."""


class WordbenchError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(WordbenchError, ValueError):
    """A configuration value or command argument is invalid."""


class EmptyVocabularyError(ValidationError):
    """No tokens survived preprocessing/frequency filtering."""


class ParseError(WordbenchError, ValueError):
    """A data file is malformed. Carries the path and 1-based line number."""

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class OovError(WordbenchError, LookupError):
    """One or more query words are missing from a vocabulary."""

    def __init__(self, words):
        self.words = tuple(words)
        super().__init__("out-of-vocabulary word(s): " + ", ".join(self.words))


class TrainingError(WordbenchError):
    """Training aborted, e.g. after detecting non-finite parameters."""
