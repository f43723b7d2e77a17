"""Exception hierarchy shared across the pipeline."""

from __future__ import annotations


class LGLexGreekError(Exception):
    """Base class for all errors raised by this package."""


class LabelError(LGLexGreekError):
    """A property-label heading could not be analyzed."""


class LexError(LabelError):
    """Unknown token or Greek/Latin homoglyph inside a heading."""


class ParseError(LabelError):
    """No label structure matches the token sequence."""


class AmbiguityError(LabelError):
    """More than one label structure matches the token sequence."""


class TableError(LGLexGreekError):
    """Malformed table file (ragged rows, duplicate headings, bad cells)."""


class ConfigError(LGLexGreekError):
    """Missing or malformed configuration / knowledge file."""


class CycleError(LGLexGreekError):
    """Heading rewriting did not reach a fixpoint within the pass budget."""


class UnknownConjunction(LGLexGreekError):
    """Conjunction absent from the conjunction-mood lexicon."""


class UnmatchedLabel(LGLexGreekError):
    """A table column has no extraction directive."""


class ValueContainsQuote(LGLexGreekError):
    """A lexicon string value contains a double quote (not representable)."""


class LGLexSyntaxError(LGLexGreekError):
    """Malformed LGLex text input."""

    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column
