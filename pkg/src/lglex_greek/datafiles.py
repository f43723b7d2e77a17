"""Paths to the knowledge files shipped inside the package."""

from __future__ import annotations

from functools import lru_cache
from importlib.resources import files
from pathlib import Path

DATA_FILES = {
    "rules": "rules.tsv",
    "defining": "defining.tsv",
    "prep_case": "prep_case.tsv",
    "conj_mood": "conj_mood.tsv",
    "verb_classes": "verb_classes.tsv",
    "script": "extraction_script.tsv",
    "corpus": "label_corpus.txt",
    "loader": "loader.cfg",
}


def data_path(name: str) -> Path:
    """Absolute path of a shipped data file (by short name or filename)."""
    filename = DATA_FILES.get(name, name)
    return Path(str(files("lglex_greek").joinpath("data", filename)))


@lru_cache(maxsize=1)
def shipped_conjunctions() -> frozenset[str]:
    """Conjunctions known to the shipped conjunction-mood lexicon."""
    out = set()
    for line in data_path("conj_mood").read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            out.add(line.split("\t")[0])
    return frozenset(out)
