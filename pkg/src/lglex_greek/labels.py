"""Grammar for property-label headings: lexer, parser, classifier, printer.

A heading is one of a small number of structures: argument distributions
("N1 =: Nhum"), locative-preposition distributions ("Loc N2 =: από N2
source"), thematic-role assignments ("N1 apparition"), full constructions
("N0 V N1 Loc N2 source"), relative transformations ("N1 = Ppv =: (με+…)"),
extra complements ("με N"), lexical fields ("V-adj, Sfx = τος"), prefixed
entry formation ("ξανα-V") and the etymological mark "X-V".

`parse_label` returns the unique AST, `render_label` prints the canonical
spelling, and `classify_label` maps an AST to its structure-kind number(s).
Round trip: render(parse(x)) == x for every canonical heading, and
parse(render(l)) == l for every AST.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field
from enum import Enum
from typing import Union

from .errors import AmbiguityError, LexError, ParseError


class Case(Enum):
    """Greek grammatical case carried by explicit tags on noun positions."""

    NOMINATIVE = "nominative"
    GENITIVE = "genitive"
    ACCUSATIVE = "accusative"
    DATIVE = "dative"

    @property
    def tag(self) -> str:
        return _CASE_TAGS[self]


_CASE_TAGS = {
    Case.NOMINATIVE: "nominatif",
    Case.GENITIVE: "genitif",
    Case.ACCUSATIVE: "accusatif",
    Case.DATIVE: "datif",
}
_TAG_TO_CASE = {v: k for k, v in _CASE_TAGS.items()}


class Trait(Enum):
    """Semantic trait attached to a noun (surface form after the N)."""

    HUM = "hum"
    NOT_HUM = "-hum"
    CONC = "conc"
    PC = "pc"
    PL_OBL = "pl obl"
    ARGENT = "argent"
    TRANSPORT = "transport"


class Role(Enum):
    """Closed set of thematic roles."""

    SOURCE = "source"
    DESTINATION = "destination"
    APPARITION = "apparition"
    DISPARITION = "disparition"
    INSTRUMENT = "instrument"
    MOYEN_DESTINATION = "moyen-destination"


class LexField(Enum):
    """Lexical-field column kinds."""

    V_N = "V-n"
    V_ADJ = "V-adj"
    VPP = "Vpp"
    VP = "VP"
    NPRED = "Npred"
    VSUP = "Vsup"
    N0_VSUP_NPRED = "N0 Vsup Npred"


@dataclass(frozen=True)
class NounRef:
    """An argument position N0..N3 with optional trait and case tag."""

    position: int
    trait: Trait | None = None
    case_tag: Case | None = None

    def __post_init__(self) -> None:
        if self.position not in (0, 1, 2, 3):
            raise ValueError(f"noun position out of range: {self.position}")

    def render(self) -> str:
        out = f"N{self.position}"
        if self.trait is not None:
            out += self.trait.value
        if self.case_tag is not None:
            out += self.case_tag.tag
        return out


# --- distribution values -----------------------------------------------------


@dataclass(frozen=True)
class NounClass:
    trait: Trait

    def render(self) -> str:
        return "N" + self.trait.value


@dataclass(frozen=True)
class PlainNP:
    def render(self) -> str:
        return "N"


@dataclass(frozen=True)
class PpvValue:
    """Preverbal pronoun, optionally with the admissible clitic forms."""

    clitics: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.clitics is not None:
            if not self.clitics or any(not c for c in self.clitics):
                raise ValueError("clitic enumeration must be non-empty strings")
            if len(set(self.clitics)) != len(self.clitics):
                raise ValueError("duplicate clitic in enumeration")

    def render(self) -> str:
        if self.clitics is None:
            return "Ppv"
        return "Ppv =: (" + "+".join(self.clitics) + ")"


@dataclass(frozen=True)
class VnValue:
    def render(self) -> str:
        return "V-n"


@dataclass(frozen=True)
class Completive:
    """Finite complement clause: Pcomp<k>, P<conj>, or controlled "<conj> V0"."""

    position: int | None = None
    conjunction: str | None = None
    controlled_by_subject: bool = False
    nominalized: bool = False

    def __post_init__(self) -> None:
        if (self.position is None) == (self.conjunction is None):
            raise ValueError("completive carries either a position or a conjunction")
        if self.position is not None and self.controlled_by_subject:
            raise ValueError("Pcomp markers cannot be subject-controlled")

    def render(self) -> str:
        prefix = "το " if self.nominalized else ""
        if self.position is not None:
            return f"{prefix}Pcomp{self.position}"
        if self.controlled_by_subject:
            return f"{prefix}{self.conjunction} V0"
        return f"{prefix}P{self.conjunction}"


DistValue = Union[NounClass, PlainNP, PpvValue, VnValue, Completive]


# --- construction tokens -----------------------------------------------------


@dataclass(frozen=True)
class Noun:
    ref: NounRef

    def render(self) -> str:
        return self.ref.render()


@dataclass(frozen=True)
class Verb:
    prefix: str | None = None
    participle: bool = False

    def render(self) -> str:
        head = "Vpp" if self.participle else "V"
        return f"{self.prefix}-{head}" if self.prefix else head


@dataclass(frozen=True)
class Prep:
    word: str

    def render(self) -> str:
        return self.word


@dataclass(frozen=True)
class MetaPrep:
    """The bare "Prep" metasymbol (any preposition)."""

    def render(self) -> str:
        return "Prep"


@dataclass(frozen=True)
class Loc:
    arg: NounRef
    role: Role | None = None

    def render(self) -> str:
        out = f"Loc {self.arg.render()}"
        if self.role is not None:
            out += f" {self.role.value}"
        return out


@dataclass(frozen=True)
class RoleToken:
    role: Role

    def render(self) -> str:
        return self.role.value


@dataclass(frozen=True)
class FixedWord:
    word: str

    def render(self) -> str:
        return self.word


@dataclass(frozen=True)
class LexItem:
    field: LexField
    case_tag: Case | None = None

    def render(self) -> str:
        out = self.field.value
        if self.case_tag is not None:
            out += self.case_tag.tag
        return out


@dataclass(frozen=True)
class CompletiveToken:
    spec: Completive

    def render(self) -> str:
        return self.spec.render()


@dataclass(frozen=True)
class OptionalGroup:
    """Optional material, rendered "(E+…)"."""

    tokens: tuple["ConstructionToken", ...]

    def render(self) -> str:
        return "(E+" + " ".join(t.render() for t in self.tokens) + ")"


ConstructionToken = Union[
    Noun, Verb, Prep, MetaPrep, Loc, RoleToken, FixedWord, LexItem,
    CompletiveToken, OptionalGroup,
]


# --- label kinds --------------------------------------------------------------


@dataclass(frozen=True)
class Distribution:
    """Argument distribution; arg=None when the value implies the position
    (standalone Pcomp0, standalone Ppv, standalone P<conj>)."""

    value: DistValue
    arg: NounRef | None = None

    def __post_init__(self) -> None:
        if isinstance(self.value, PpvValue) and self.value.clitics is not None:
            raise ValueError("enumerated clitics belong to relative transforms")
        if self.arg is None and not isinstance(self.value, (PpvValue, Completive)):
            raise ValueError(f"{self.value!r} needs an explicit argument position")

    def render(self) -> str:
        if self.arg is None:
            return _render_value(self.value)
        return f"{self.arg.render()} =: {_render_value(self.value)}"


@dataclass(frozen=True)
class LocPrepDistribution:
    """Locative preposition(s) introducing an argument, optional role."""

    arg: NounRef
    preps: tuple[str, ...]
    role: Role | None = None

    def __post_init__(self) -> None:
        if not self.preps or any(not p for p in self.preps):
            raise ValueError("preposition list must be non-empty strings")

    def render(self) -> str:
        preps = self.preps[0] if len(self.preps) == 1 else "(" + "+".join(self.preps) + ")"
        out = f"Loc {self.arg.render()} =: {preps} N{self.arg.position}"
        if self.role is not None:
            out += f" {self.role.value}"
        return out


@dataclass(frozen=True)
class RoleAssignment:
    arg: NounRef
    role: Role

    def render(self) -> str:
        return f"{self.arg.render()} {self.role.value}"


@dataclass(frozen=True)
class Construction:
    tokens: tuple[ConstructionToken, ...]

    def __post_init__(self) -> None:
        heads = _count_verbal_heads(self.tokens)
        if heads != 1:
            raise ValueError(f"construction needs exactly one verbal head, found {heads}")

    def render(self) -> str:
        return " ".join(t.render() for t in self.tokens)


@dataclass(frozen=True)
class RelativeTransform:
    """Transformation equality, e.g. "N1 = Ppv =: (με+…)"."""

    lhs: Noun | Loc
    rhs: DistValue

    def render(self) -> str:
        return f"{self.lhs.render()} = {_render_value(self.rhs)}"


@dataclass(frozen=True)
class ExtraComplement:
    prep: str
    head: str = "N"

    def render(self) -> str:
        return f"{self.prep} {self.head}"


@dataclass(frozen=True)
class LexicalField:
    field: LexField
    suffix: str | None = None
    role: Role | None = None

    def __post_init__(self) -> None:
        if self.suffix is not None and self.role is not None:
            raise ValueError("a lexical field carries a suffix or a role, not both")

    def render(self) -> str:
        out = self.field.value
        if self.role is not None:
            out += f" {self.role.value}"
        if self.suffix is not None:
            out += f", Sfx = {self.suffix}"
        return out


@dataclass(frozen=True)
class EntryFormation:
    """Prefixed-verb column "pfx-V": the prefixed verb is a new entry."""

    prefix: str

    def __post_init__(self) -> None:
        if not self.prefix:
            raise ValueError("empty prefix")

    def render(self) -> str:
        return f"{self.prefix}-V"


@dataclass(frozen=True)
class EtymologicalMark:
    """The non-exploitable "X-V" mark (verb is etymologically prefixed)."""

    def render(self) -> str:
        return "X-V"


PropertyLabel = Union[
    Distribution, LocPrepDistribution, RoleAssignment, Construction,
    RelativeTransform, ExtraComplement, LexicalField, EntryFormation,
    EtymologicalMark,
]


def _render_value(v: DistValue) -> str:
    return v.render()


def _count_verbal_heads(tokens) -> int:
    n = 0
    for t in tokens:
        if isinstance(t, Verb):
            n += 1
        elif isinstance(t, LexItem) and t.field is LexField.VSUP:
            n += 1
        elif isinstance(t, OptionalGroup):
            n += _count_verbal_heads(t.tokens)
    return n


def _has_argument(tokens) -> bool:
    for t in tokens:
        if isinstance(t, (Noun, Loc, CompletiveToken)):
            return True
        if isinstance(t, OptionalGroup) and _has_argument(t.tokens):
            return True
    return False


# --- lexer --------------------------------------------------------------------

GREEK_CHARS = "Ͱ-Ͽἀ-῿"

_TRAIT_ALT = "pl obl|-hum|hum|conc|pc|argent|transport"
_CASE_ALT = "nominatif|genitif|accusatif|datif"
_ROLE_ALT = "moyen-destination|source|destination|apparition|disparition|instrument"

_TOKEN_SPECS: list[tuple[str, re.Pattern[str]]] = [
    ("ASSIGN", re.compile(r"=:")),
    ("EQ", re.compile(r"=")),
    ("COMMA", re.compile(r",")),
    ("LPAREN", re.compile(r"\(")),
    ("RPAREN", re.compile(r"\)")),
    ("PLUS", re.compile(r"\+")),
    ("PCOMP", re.compile(r"Pcomp([0-3])")),
    ("PPV", re.compile(r"Ppv(?![A-Za-z])")),
    ("METAPREP", re.compile(r"Prep(?![A-Za-z])")),
    ("LEXFIELD", re.compile(rf"V-adj({_CASE_ALT})?(?![a-z])")),
    ("LEXFIELD", re.compile(rf"V-n({_CASE_ALT})?(?![a-z])")),
    ("VERB_PP", re.compile(r"Vpp(?![A-Za-z])")),
    ("LEXFIELD", re.compile(r"Vsup(?![A-Za-z])")),
    ("LEXFIELD", re.compile(r"VP(?![A-Za-z])")),
    ("LEXFIELD", re.compile(r"Npred(?![A-Za-z])")),
    ("V0", re.compile(r"V0(?![A-Za-z])")),
    ("VERB", re.compile(r"V(?![A-Za-z0-9-])")),
    ("LOC", re.compile(r"Loc(?![a-z])")),
    ("SFX", re.compile(r"Sfx(?![a-z])")),
    ("OPT_E", re.compile(r"E(?![A-Za-z0-9])")),
    ("XV", re.compile(r"X-V(?![A-Za-z])")),
    ("PREFV", re.compile(rf"([{GREEK_CHARS}]+)-V(pp)?(?![A-Za-z])")),
    ("PCONJ", re.compile(rf"P([{GREEK_CHARS}]+)")),
    ("NREF", re.compile(rf"N([0-3])({_TRAIT_ALT})?({_CASE_ALT})?(?![a-z0-9])")),
    ("NCLASS", re.compile(rf"N({_TRAIT_ALT})(?![a-z])")),
    ("NBARE", re.compile(r"N(?![A-Za-z0-9])")),
    ("ROLE", re.compile(rf"({_ROLE_ALT})(?![a-z])")),
    ("GREEK", re.compile(rf"[{GREEK_CHARS}]+")),
    ("WORD", re.compile(r"[A-Za-z][A-Za-z-]*")),
]

# Greek capitals (and a few lowercase letters) that are visually identical to
# Latin letters used in the meta vocabulary.
_CONFUSABLE_TO_LATIN = {
    "Α": "A", "Β": "B", "Ε": "E", "Ζ": "Z", "Η": "H", "Ι": "I", "Κ": "K",
    "Μ": "M", "Ν": "N", "Ο": "O", "Π": "P", "Ρ": "P", "Τ": "T", "Υ": "Y",
    "Χ": "X", "ο": "o", "ν": "v",
}

_CHUNK_RE = re.compile(r"[^\s=,()+\[\]]+")
_META_SHAPES = [
    re.compile(rf"N[0-3]({_TRAIT_ALT})?({_CASE_ALT})?"),
    re.compile(rf"N({_TRAIT_ALT})"),
    re.compile(r"Ppv|Pcomp[0-3]|Prep|Npred|Vsup|Vpp|VP|V|E|N|Loc|Sfx|X-V"),
    re.compile(rf"P[{GREEK_CHARS}]+"),
]

_LATIN_LETTERS = re.compile(r"[A-Za-z]")
_GREEK_LETTERS = re.compile(rf"[{GREEK_CHARS}]")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int
    groups: tuple[str | None, ...] = ()


def _codepoints(s: str) -> str:
    return " ".join(f"{c!r} U+{ord(c):04X} {unicodedata.name(c, '?')}" for c in s)


def _is_sanctioned_mixed(chunk: str, conjunctions: frozenset[str]) -> bool:
    """Mixed Greek/Latin chunks that are legitimate by construction."""
    if chunk.startswith("P") and chunk[1:] in conjunctions:
        return True
    m = re.fullmatch(rf"([{GREEK_CHARS}]+)-V(pp)?", chunk)
    return m is not None


def _homoglyph_check(chunk: str, conjunctions: frozenset[str]) -> None:
    has_latin = bool(_LATIN_LETTERS.search(chunk))
    has_greek = bool(_GREEK_LETTERS.search(chunk))
    if has_latin and has_greek and not _is_sanctioned_mixed(chunk, conjunctions):
        raise LexError(
            f"Greek/Latin homoglyph mix in {chunk!r}: {_codepoints(chunk)}"
        )
    mapped = "".join(_CONFUSABLE_TO_LATIN.get(c, c) for c in chunk)
    if mapped != chunk:
        for shape in _META_SHAPES:
            if shape.fullmatch(mapped) or (
                mapped.startswith("P") and mapped[1:] in conjunctions
            ):
                raise LexError(
                    f"homoglyph: {chunk!r} reads as meta token {mapped!r}: "
                    f"{_codepoints(chunk)}"
                )


def tokenize(text: str, conjunctions: frozenset[str]) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    n = len(text)
    checked_until = 0
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch in "[]":
            raise LexError(
                f"romanization brackets are not part of property labels "
                f"(at offset {pos} in {text!r})"
            )
        if pos >= checked_until:
            m = _CHUNK_RE.match(text, pos)
            if m:
                _homoglyph_check(m.group(0), conjunctions)
                checked_until = m.end()
        for kind, pattern in _TOKEN_SPECS:
            m = pattern.match(text, pos)
            if m:
                tokens.append(Token(kind, m.group(0), pos, m.groups()))
                pos = m.end()
                break
        else:
            raise LexError(f"unknown character at offset {pos}: {_codepoints(ch)}")
    return tokens


# --- parser -------------------------------------------------------------------


class _NoMatch(Exception):
    """Internal: this kind-parser does not apply."""


class _Cursor:
    def __init__(self, tokens: list[Token]) -> None:
        self.tokens = tokens
        self.i = 0

    def at_end(self) -> bool:
        return self.i >= len(self.tokens)

    def peek(self) -> Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def peek_kind(self, kind: str) -> bool:
        t = self.peek()
        return t is not None and t.kind == kind

    def take(self, kind: str) -> Token:
        t = self.peek()
        if t is None or t.kind != kind:
            raise _NoMatch
        self.i += 1
        return t

    def expect_end(self) -> None:
        if not self.at_end():
            raise _NoMatch


def _nref_from_token(t: Token) -> NounRef:
    position = int(t.groups[0])
    trait = Trait(t.groups[1]) if t.groups[1] else None
    case = _TAG_TO_CASE[t.groups[2]] if t.groups[2] else None
    return NounRef(position, trait, case)


def _lexfield_from_token(t: Token) -> LexItem:
    if t.kind == "VERB_PP":
        return LexItem(LexField.VPP)
    case = None
    text = t.text
    if t.groups and t.groups[0]:
        case = _TAG_TO_CASE[t.groups[0]]
        text = text[: -len(t.groups[0])]
    return LexItem(LexField(text), case)


def _parse_clitics(cur: _Cursor) -> tuple[str, ...]:
    cur.take("LPAREN")
    clitics = [cur.take("GREEK").text]
    while cur.peek_kind("PLUS"):
        cur.take("PLUS")
        clitics.append(cur.take("GREEK").text)
    cur.take("RPAREN")
    return tuple(clitics)


def _parse_dist_value(cur: _Cursor, conjunctions: frozenset[str]) -> DistValue:
    t = cur.peek()
    if t is None:
        raise _NoMatch
    if t.kind == "NCLASS":
        cur.take("NCLASS")
        return NounClass(Trait(t.groups[0]))
    if t.kind == "NBARE":
        cur.take("NBARE")
        return PlainNP()
    if t.kind == "PPV":
        cur.take("PPV")
        if cur.peek_kind("ASSIGN"):
            cur.take("ASSIGN")
            return PpvValue(_parse_clitics(cur))
        return PpvValue()
    if t.kind == "LEXFIELD" and t.text == "V-n":
        cur.take("LEXFIELD")
        return VnValue()
    return _parse_completive(cur, conjunctions)


def _parse_completive(cur: _Cursor, conjunctions: frozenset[str]) -> Completive:
    nominalized = False
    t = cur.peek()
    if t is not None and t.kind == "GREEK" and t.text == "το":
        cur.take("GREEK")
        nominalized = True
        nxt = cur.peek()
        if nxt is not None and nxt.kind == "GREEK" and nxt.text == "γεγονός":
            cur.take("GREEK")
    t = cur.peek()
    if t is None:
        raise _NoMatch
    if t.kind == "PCOMP":
        cur.take("PCOMP")
        return Completive(position=int(t.groups[0]), nominalized=nominalized)
    if t.kind == "PCONJ":
        conj = t.groups[0]
        if conj not in conjunctions:
            raise ParseError(f"unknown conjunction {conj!r} in {t.text!r}")
        cur.take("PCONJ")
        return Completive(conjunction=conj, nominalized=nominalized)
    if t.kind == "GREEK" and t.text in conjunctions:
        cur.take("GREEK")
        cur.take("V0")
        return Completive(
            conjunction=t.text, controlled_by_subject=True, nominalized=nominalized
        )
    raise _NoMatch


def _parse_distribution(cur: _Cursor, conjunctions: frozenset[str]) -> Distribution:
    arg = _nref_from_token(cur.take("NREF"))
    cur.take("ASSIGN")
    value = _parse_dist_value(cur, conjunctions)
    if isinstance(value, PpvValue) and value.clitics is not None:
        raise _NoMatch  # enumerated Ppv belongs to relative transforms
    cur.expect_end()
    return Distribution(value, arg)


def _parse_bare_distribution(cur: _Cursor, conjunctions: frozenset[str]) -> Distribution:
    if cur.peek_kind("PPV"):
        cur.take("PPV")
        cur.expect_end()
        return Distribution(PpvValue())
    value = _parse_completive(cur, conjunctions)
    cur.expect_end()
    return Distribution(value)


def _parse_locprep(cur: _Cursor, conjunctions: frozenset[str]) -> LocPrepDistribution:
    cur.take("LOC")
    arg = _nref_from_token(cur.take("NREF"))
    cur.take("ASSIGN")
    if cur.peek_kind("LPAREN"):
        cur.take("LPAREN")
        preps = [cur.take("GREEK").text]
        while cur.peek_kind("PLUS"):
            cur.take("PLUS")
            preps.append(cur.take("GREEK").text)
        cur.take("RPAREN")
    else:
        preps = [cur.take("GREEK").text]
    rhs = _nref_from_token(cur.take("NREF"))
    if rhs.position != arg.position or rhs.trait or rhs.case_tag:
        raise ParseError(
            f"locative distribution must repeat the plain argument N{arg.position}"
        )
    role = None
    if cur.peek_kind("ROLE"):
        role = Role(cur.take("ROLE").groups[0])
    cur.expect_end()
    return LocPrepDistribution(arg, tuple(preps), role)


def _parse_relative(cur: _Cursor, conjunctions: frozenset[str]) -> RelativeTransform:
    lhs: Noun | Loc
    if cur.peek_kind("LOC"):
        cur.take("LOC")
        lhs = Loc(_nref_from_token(cur.take("NREF")))
    else:
        lhs = Noun(_nref_from_token(cur.take("NREF")))
    cur.take("EQ")
    rhs = _parse_dist_value(cur, conjunctions)
    cur.expect_end()
    return RelativeTransform(lhs, rhs)


def _parse_role_assignment(cur: _Cursor, conjunctions: frozenset[str]) -> RoleAssignment:
    arg = _nref_from_token(cur.take("NREF"))
    role = Role(cur.take("ROLE").groups[0])
    cur.expect_end()
    return RoleAssignment(arg, role)


def _parse_extra_complement(cur: _Cursor, conjunctions: frozenset[str]) -> ExtraComplement:
    prep = cur.take("GREEK").text
    cur.take("NBARE")
    cur.expect_end()
    return ExtraComplement(prep)


def _parse_lexical_field(cur: _Cursor, conjunctions: frozenset[str]) -> LexicalField:
    t = cur.peek()
    if t is not None and t.kind == "NREF":
        # the provisional support-verb column "N0 Vsup Npred"
        ref = _nref_from_token(cur.take("NREF"))
        vsup = _lexfield_from_token(cur.take("LEXFIELD"))
        npred = _lexfield_from_token(cur.take("LEXFIELD"))
        cur.expect_end()
        if ref != NounRef(0) or vsup.field is not LexField.VSUP or npred.field is not LexField.NPRED:
            raise _NoMatch
        return LexicalField(LexField.N0_VSUP_NPRED)
    if cur.peek_kind("VERB_PP"):
        cur.take("VERB_PP")
        item = LexItem(LexField.VPP)
    else:
        item = _lexfield_from_token(cur.take("LEXFIELD"))
    if item.case_tag is not None:
        raise _NoMatch  # cased lexical items only occur inside constructions
    if cur.at_end():
        return LexicalField(item.field)
    if cur.peek_kind("ROLE"):
        role = Role(cur.take("ROLE").groups[0])
        cur.expect_end()
        return LexicalField(item.field, role=role)
    cur.take("COMMA")
    cur.take("SFX")
    cur.take("EQ")
    t = cur.peek()
    if t is None or t.kind not in ("GREEK", "WORD"):
        raise _NoMatch
    cur.i += 1
    cur.expect_end()
    return LexicalField(item.field, suffix=t.text)


def _parse_entry_formation(cur: _Cursor, conjunctions: frozenset[str]) -> EntryFormation:
    t = cur.take("PREFV")
    if t.groups[1]:  # participle form never creates a new entry
        raise _NoMatch
    cur.expect_end()
    return EntryFormation(t.groups[0])


def _parse_etymological(cur: _Cursor, conjunctions: frozenset[str]) -> EtymologicalMark:
    cur.take("XV")
    cur.expect_end()
    return EtymologicalMark()


def _parse_construction_tokens(
    cur: _Cursor, conjunctions: frozenset[str], *, in_group: bool = False
) -> tuple[ConstructionToken, ...]:
    tokens: list[ConstructionToken] = []
    while not cur.at_end():
        t = cur.peek()
        assert t is not None
        if t.kind == "RPAREN" and in_group:
            break
        if t.kind == "NREF":
            tokens.append(Noun(_nref_from_token(cur.take("NREF"))))
        elif t.kind == "VERB":
            cur.take("VERB")
            tokens.append(Verb())
        elif t.kind == "VERB_PP":
            cur.take("VERB_PP")
            tokens.append(Verb(participle=True))
        elif t.kind == "PREFV":
            cur.take("PREFV")
            tokens.append(Verb(prefix=t.groups[0], participle=bool(t.groups[1])))
        elif t.kind == "LEXFIELD":
            cur.take("LEXFIELD")
            tokens.append(_lexfield_from_token(t))
        elif t.kind == "METAPREP":
            cur.take("METAPREP")
            tokens.append(MetaPrep())
        elif t.kind == "LOC":
            cur.take("LOC")
            arg = _nref_from_token(cur.take("NREF"))
            role = None
            if cur.peek_kind("ROLE"):
                role = Role(cur.take("ROLE").groups[0])
            tokens.append(Loc(arg, role))
        elif t.kind == "ROLE":
            cur.take("ROLE")
            tokens.append(RoleToken(Role(t.groups[0])))
        elif t.kind == "PCOMP" or t.kind == "PCONJ":
            tokens.append(CompletiveToken(_parse_completive(cur, conjunctions)))
        elif t.kind == "GREEK":
            cur.take("GREEK")
            nxt = cur.peek()
            if nxt is not None and nxt.kind in ("NREF", "NBARE", "NCLASS"):
                tokens.append(Prep(t.text))
            else:
                tokens.append(FixedWord(t.text))
        elif t.kind == "LPAREN":
            cur.take("LPAREN")
            cur.take("OPT_E")
            cur.take("PLUS")
            inner = _parse_construction_tokens(cur, conjunctions, in_group=True)
            cur.take("RPAREN")
            if not inner:
                raise _NoMatch
            tokens.append(OptionalGroup(inner))
        else:
            raise _NoMatch
    return tuple(tokens)


def _parse_construction(cur: _Cursor, conjunctions: frozenset[str]) -> Construction:
    tokens = _parse_construction_tokens(cur, conjunctions)
    cur.expect_end()
    if _count_verbal_heads(tokens) != 1:
        raise _NoMatch
    verb = next((t for t in tokens if isinstance(t, Verb)), None)
    prefixed = verb is not None and (verb.prefix or verb.participle)
    if not _has_argument(tokens) and not prefixed:
        raise _NoMatch
    return Construction(tokens)


_KIND_PARSERS = [
    ("distribution", _parse_distribution),
    ("bare_distribution", _parse_bare_distribution),
    ("locprep", _parse_locprep),
    ("relative", _parse_relative),
    ("role_assignment", _parse_role_assignment),
    ("extra_complement", _parse_extra_complement),
    ("lexical_field", _parse_lexical_field),
    ("entry_formation", _parse_entry_formation),
    ("etymological", _parse_etymological),
    ("construction", _parse_construction),
]

# Documented overlaps: the first kind wins over the second.
_PRECEDENCE = [
    ("entry_formation", "construction"),
    ("lexical_field", "construction"),
]


def _default_conjunctions() -> frozenset[str]:
    from .datafiles import shipped_conjunctions

    return shipped_conjunctions()


def parse_label(
    text: str, conjunctions: frozenset[str] | None = None
) -> PropertyLabel:
    """Parse a heading into its unique property-label AST.

    Raises LexError for unknown tokens and homoglyph mixes, ParseError when
    no structure matches, AmbiguityError when several do.
    """
    if conjunctions is None:
        conjunctions = _default_conjunctions()
    if not text.strip():
        raise ParseError("empty label")
    tokens = tokenize(text, conjunctions)
    matches: list[tuple[str, PropertyLabel]] = []
    for name, fn in _KIND_PARSERS:
        try:
            matches.append((name, fn(_Cursor(tokens), conjunctions)))
        except _NoMatch:
            continue
    for winner, loser in _PRECEDENCE:
        names = [n for n, _ in matches]
        if winner in names and loser in names:
            matches = [(n, ast) for n, ast in matches if n != loser]
    if not matches:
        unknown = next((t for t in tokens if t.kind == "WORD"), None)
        if unknown is not None:
            raise LexError(f"unknown token {unknown.text!r} in {text!r}")
        raise ParseError(f"no label structure matches {text!r}")
    if len(matches) > 1:
        kinds = ", ".join(n for n, _ in matches)
        raise AmbiguityError(f"{text!r} matches several structures: {kinds}")
    return matches[0][1]


def render_label(label: PropertyLabel) -> str:
    """Canonical spelling of a label AST."""
    return label.render()


def classify_label(label: PropertyLabel) -> frozenset[int]:
    """Structure-kind number(s) of a label (combinations return the pair)."""
    if isinstance(label, Distribution):
        if isinstance(label.value, PpvValue):
            return frozenset({5})
        if isinstance(label.value, VnValue):
            return frozenset({1, 7})
        return frozenset({1})
    if isinstance(label, LocPrepDistribution):
        return frozenset({2, 3}) if label.role else frozenset({2})
    if isinstance(label, RoleAssignment):
        return frozenset({3})
    if isinstance(label, Construction):
        return frozenset({4})
    if isinstance(label, RelativeTransform):
        return frozenset({5})
    if isinstance(label, ExtraComplement):
        return frozenset({6})
    if isinstance(label, LexicalField):
        return frozenset({3, 7}) if label.role else frozenset({7})
    if isinstance(label, EntryFormation):
        return frozenset({8})
    if isinstance(label, EtymologicalMark):
        return frozenset({8})
    raise TypeError(f"not a property label: {label!r}")
