"""Greek case government, conjunction moods and verb prefixation.

Case resolution follows a strict priority: an explicit case tag wins, then
(a) a governing preposition assigns its case (accusative by default), then
(b) the subject position N0 is nominative, then (c) the object rule:
accusative for the direct object of a transitive verb, nominative for the
attribute of a copula, accusative otherwise (flagged as defaulted).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from pathlib import Path
from typing import Mapping

from .datafiles import data_path
from .errors import ConfigError, UnknownConjunction
from .labels import Case, Construction, Loc, Noun, OptionalGroup, Prep


class Mood(Enum):
    INDICATIVE = "indicative"
    SUBJUNCTIVE = "subjunctive"


@dataclass(frozen=True)
class Lexicons:
    """External knowledge: preposition cases, conjunction moods, verb classes."""

    prep_case: Mapping[str, Case]
    conj_mood: Mapping[str, Mood]
    transitive_verbs: frozenset[str]
    copula_verbs: frozenset[str]

    def case_for_prep(self, prep: str) -> tuple[Case, bool]:
        """Case governed by a preposition and whether the default was used."""
        if prep in self.prep_case:
            return self.prep_case[prep], False
        return Case.ACCUSATIVE, True

    @property
    def conjunctions(self) -> frozenset[str]:
        return frozenset(self.conj_mood)


def _read_pairs(path: Path) -> list[tuple[str, str]]:
    pairs = []
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ConfigError(f"{path}:{lineno}: expected two tab-separated fields")
        pairs.append((parts[0], parts[1]))
    return pairs


def load_lexicons(
    prep_case_path: Path | str,
    conj_mood_path: Path | str,
    verb_classes_path: Path | str,
) -> Lexicons:
    prep_case = {}
    for prep, case in _read_pairs(Path(prep_case_path)):
        try:
            prep_case[prep] = Case(case)
        except ValueError:
            raise ConfigError(f"unknown case {case!r} for preposition {prep!r}") from None
    conj_mood = {}
    for conj, mood in _read_pairs(Path(conj_mood_path)):
        try:
            conj_mood[conj] = Mood(mood)
        except ValueError:
            raise ConfigError(f"unknown mood {mood!r} for conjunction {conj!r}") from None
    transitive, copula = set(), set()
    for lemma, klass in _read_pairs(Path(verb_classes_path)):
        if klass == "transitive":
            transitive.add(lemma)
        elif klass == "copula":
            copula.add(lemma)
        else:
            raise ConfigError(f"unknown verb class {klass!r} for {lemma!r}")
    return Lexicons(prep_case, conj_mood, frozenset(transitive), frozenset(copula))


def load_lexicons_dir(directory: Path | str) -> Lexicons:
    directory = Path(directory)
    return load_lexicons(
        directory / "prep_case.tsv",
        directory / "conj_mood.tsv",
        directory / "verb_classes.tsv",
    )


@lru_cache(maxsize=1)
def shipped_lexicons() -> Lexicons:
    return load_lexicons(
        data_path("prep_case"), data_path("conj_mood"), data_path("verb_classes")
    )


# --- case resolution -----------------------------------------------------------


@dataclass(frozen=True)
class CaseResolution:
    case: Case
    rule: str  # "tag", "a", "b" or "c"
    defaulted: bool = False


def _find_noun(construction: Construction, position: int):
    """The noun at a position plus its governor: a Prep word or "loc"."""

    def walk(tokens):
        previous = None
        for token in tokens:
            if isinstance(token, Noun) and token.ref.position == position:
                governor = previous.word if isinstance(previous, Prep) else None
                return token.ref, governor
            if isinstance(token, Loc) and token.arg.position == position:
                return token.arg, "loc"
            if isinstance(token, OptionalGroup):
                found = walk(token.tokens)
                if found is not None:
                    return found
            previous = token
        return None

    found = walk(construction.tokens)
    if found is None:
        raise ValueError(
            f"position N{position} does not occur in {construction.render()!r}"
        )
    return found


def rule_a(construction: Construction, position: int, lex: Lexicons):
    """Prepositions govern their case (accusative unless listed otherwise)."""
    ref, governor = _find_noun(construction, position)
    if governor is None:
        return None
    if governor == "loc":
        return CaseResolution(Case.ACCUSATIVE, "a", defaulted=True)
    case, defaulted = lex.case_for_prep(governor)
    return CaseResolution(case, "a", defaulted)


def rule_b(construction: Construction, position: int, lex: Lexicons):
    """The subject N0 is nominative."""
    if position == 0:
        return CaseResolution(Case.NOMINATIVE, "b")
    return None


def rule_c(
    construction: Construction, position: int, lex: Lexicons, verb_lemma: str
) -> CaseResolution:
    """Object rule (total): transitive object accusative, copula attribute
    nominative, otherwise accusative with the defaulted flag set."""
    if position == 1 and verb_lemma in lex.transitive_verbs:
        return CaseResolution(Case.ACCUSATIVE, "c")
    if position == 1 and verb_lemma in lex.copula_verbs:
        return CaseResolution(Case.NOMINATIVE, "c")
    return CaseResolution(Case.ACCUSATIVE, "c", defaulted=True)


def resolve_case(
    construction: Construction,
    position: int,
    verb_lemma: str,
    lex: Lexicons,
) -> CaseResolution:
    """Resolve the case of the noun at a position (priority: tag, a, b, c)."""
    ref, _ = _find_noun(construction, position)
    if ref.case_tag is not None:
        return CaseResolution(ref.case_tag, "tag")
    resolution = rule_a(construction, position, lex)
    if resolution is not None:
        return resolution
    resolution = rule_b(construction, position, lex)
    if resolution is not None:
        return resolution
    return rule_c(construction, position, lex, verb_lemma)


def lookup_mood(conjunction: str, lex: Lexicons) -> Mood:
    try:
        return lex.conj_mood[conjunction]
    except KeyError:
        raise UnknownConjunction(
            f"conjunction {conjunction!r} is not in the conjunction-mood lexicon"
        ) from None


def apply_prefix(form: str, prefix: str) -> str:
    """Prefixed verb form: plain concatenation, no hyphen."""
    if not form or not prefix:
        raise ValueError("both the verb form and the prefix must be non-empty")
    return prefix + form
