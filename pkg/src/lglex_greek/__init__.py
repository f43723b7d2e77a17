"""Compile Lexicon-Grammar tables of Modern Greek verbs into the LGLex lexicon."""

__version__ = "0.1.0"
