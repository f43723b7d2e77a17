"""Compile table entries into lexicon entries.

Every property column is interpreted through a directive script: the
defining base construction becomes the "true::" construction, plus-coded
construction columns become "o::" constructions, distribution columns feed
the argument section, locative-preposition columns the locatif lists,
lexical columns the lexical fields, and prefix columns the prefixed-verb
list (optionally expanded into clone entries).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path

from .errors import ConfigError, UnmatchedLabel
from .greek import Lexicons, apply_prefix, lookup_mood
from .labels import (
    Completive, Construction, Distribution, EntryFormation, EtymologicalMark,
    ExtraComplement, LexicalField, LocPrepDistribution, NounClass, PlainNP,
    PpvValue, PropertyLabel, RelativeTransform, RoleAssignment, Trait, VnValue,
    Case, render_label,
)
from .lglex_format import (
    EmptyStr, LGLexEntryDoc, LGLexLexicon, Lst, Record, Str,
)
from .normalize import DefiningConfig
from .tables import ColumnKind, Empty, Lexical, Plus, Table

EFFECTS = frozenset({
    "add_absolute_construction", "add_relative", "add_distribution",
    "add_locatif", "add_preposition", "add_pfx_verb", "add_lexical_field",
    "ignore",
})

_KIND_NAMES = {
    Distribution: "Distribution",
    LocPrepDistribution: "LocPrepDistribution",
    RoleAssignment: "RoleAssignment",
    Construction: "Construction",
    RelativeTransform: "RelativeTransform",
    ExtraComplement: "ExtraComplement",
    LexicalField: "LexicalField",
    EntryFormation: "EntryFormation",
    EtymologicalMark: "EtymologicalMark",
}

_CATEGORY_NAMES = {"V": "verb", "N": "noun", "A": "adjective"}

_TRAIT_ATTRS = {
    Trait.HUM: ("hum", "true"),
    Trait.NOT_HUM: ("hum", "false"),
    Trait.CONC: ("conc", "true"),
    Trait.PC: ("pc", "true"),
    Trait.PL_OBL: ("pl-obl", "true"),
    Trait.ARGENT: ("argent", "true"),
    Trait.TRANSPORT: ("transport", "true"),
}


@dataclass(frozen=True)
class Directive:
    selector: str  # a canonical label string or a label-kind name
    effect: str
    params: dict[str, str]


@dataclass(frozen=True)
class ExtractionScript:
    directives: tuple[Directive, ...]

    def find(self, label_text: str, kind_name: str) -> Directive | None:
        for directive in self.directives:
            if directive.selector in (label_text, kind_name):
                return directive
        return None


def _parse_params(raw: str) -> dict[str, str]:
    params: dict[str, str] = {}
    raw = raw.strip()
    if not raw:
        return params
    if "=" not in raw:
        return {"note": raw}
    for part in raw.split(","):
        key, _, value = part.partition("=")
        params[key.strip()] = value.strip()
    return params


def load_script(path: Path | str) -> ExtractionScript:
    directives = []
    for lineno, line in enumerate(
        Path(path).read_text(encoding="utf-8").splitlines(), start=1
    ):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) not in (2, 3):
            raise ConfigError(f"{path}:{lineno}: expected selector<TAB>effect[<TAB>params]")
        selector, effect = parts[0], parts[1]
        if effect not in EFFECTS:
            raise ConfigError(f"{path}:{lineno}: unknown effect {effect!r}")
        params = _parse_params(parts[2]) if len(parts) == 3 else {}
        directives.append(Directive(selector, effect, params))
    return ExtractionScript(tuple(directives))


# --- entry model -------------------------------------------------------------------


@dataclass(frozen=True)
class ArgDist:
    cat: str
    attrs: tuple[tuple[str, str], ...]
    origin: str


@dataclass(frozen=True)
class ArgConst:
    pos: int
    dists: tuple[ArgDist, ...]


@dataclass(frozen=True)
class LexFieldForms:
    key: str
    forms: tuple[str, ...]
    suffix: str | None = None


@dataclass(frozen=True)
class LGLexEntry:
    entry_id: str
    category: str
    lemma: str
    pfx_verbs: tuple[str, ...] = ()
    prepositions: tuple[tuple[int, tuple[str, ...]], ...] = ()
    locatifs: tuple[tuple[int, tuple[str, ...]], ...] = ()
    args: tuple[ArgConst, ...] = ()
    absolute: tuple[str, ...] = ()
    relative: tuple[str, ...] = ()
    lexical_fields: tuple[LexFieldForms, ...] = ()
    example: str | None = None

    def __post_init__(self) -> None:
        markers = [c for c in self.absolute if c.startswith("true::")]
        if len(markers) != 1:
            raise ValueError(
                f"{self.entry_id}: exactly one true:: construction required, "
                f"got {len(markers)}"
            )

    def to_doc(self) -> LGLexEntryDoc:
        def prep_group(name: str, groups) -> Lst:
            return Lst(tuple(
                (name, Record((
                    ("id", Str(str(pos))),
                    ("list", Lst(tuple(("prep", Str(p)) for p in preps))),
                )))
                for pos, preps in groups
            ))

        lexinfo_fields: list = [
            ("cat", Str(self.category)),
            ("verb", Record((("lemma", Str(self.lemma)),))),
            ("pfx-V", Lst(tuple(("verb", Str(v)) for v in self.pfx_verbs))),
            ("prepositions", prep_group("preposition", self.prepositions)),
            ("locatifs", prep_group("locatif", self.locatifs)),
        ]
        for lf in self.lexical_fields:
            items: list = [("form", Str(f)) for f in lf.forms]
            if lf.suffix is not None:
                items.append(("sfx", Str(lf.suffix)))
            lexinfo_fields.append((lf.key, Lst(tuple(items))))

        consts = []
        for const in self.args:
            comps = []
            for dist in const.dists:
                comp_fields: list = [("cat", Str(dist.cat))]
                comp_fields.extend((k, Str(v)) for k, v in dist.attrs)
                comp_fields.append(("introd-prep", Lst()))
                comp_fields.append(("introd-loc", Lst()))
                comp_fields.append(("origin", Lst((("orig", Str(dist.origin)),))))
                comps.append(("comp", Record(tuple(comp_fields))))
            consts.append(("const", Record((
                ("pos", Str(str(const.pos))),
                ("dist", Lst(tuple(comps))),
            ))))

        sections = (
            ("lexical-info", Record(tuple(lexinfo_fields))),
            ("args", Lst(tuple(consts))),
            ("all-constructions", Record((
                ("absolute", Lst(tuple(("construction", Str(c)) for c in self.absolute))),
                ("relative", Lst(tuple(("construction", Str(c)) for c in self.relative))),
            ))),
            ("example", Record((
                ("example", Str(self.example) if self.example else EmptyStr()),
            ))),
        )
        return LGLexEntryDoc(self.entry_id, sections)


# --- extraction --------------------------------------------------------------------


class _EntryBuilder:
    def __init__(self, entry_id: str, category: str, lemma: str) -> None:
        self.entry_id = entry_id
        self.category = category
        self.lemma = lemma
        self.pfx_verbs: list[str] = []
        self.prepositions: dict[int, list[str]] = {}
        self.locatifs: dict[int, list[str]] = {}
        self.dists: dict[int, list[ArgDist]] = {}
        self.absolute: list[str] = []
        self.relative: list[str] = []
        self.lexical_fields: list[LexFieldForms] = []
        self.example: str | None = None

    def add_prep_group(self, target: dict[int, list[str]], pos: int, preps) -> None:
        bucket = target.setdefault(pos, [])
        for prep in preps:
            if prep not in bucket:
                bucket.append(prep)

    def build(self) -> LGLexEntry:
        return LGLexEntry(
            entry_id=self.entry_id,
            category=self.category,
            lemma=self.lemma,
            pfx_verbs=tuple(self.pfx_verbs),
            prepositions=tuple(
                (pos, tuple(preps)) for pos, preps in sorted(self.prepositions.items())
            ),
            locatifs=tuple(
                (pos, tuple(preps)) for pos, preps in sorted(self.locatifs.items())
            ),
            args=tuple(
                ArgConst(pos, tuple(dists))
                for pos, dists in sorted(self.dists.items())
            ),
            absolute=tuple(self.absolute),
            relative=tuple(self.relative),
            lexical_fields=tuple(self.lexical_fields),
            example=self.example,
        )


def _distribution_comp(label: Distribution, origin: str, lex: Lexicons) -> ArgDist:
    value = label.value
    attrs: list[tuple[str, str]] = []
    if isinstance(value, NounClass):
        cat = "NP"
        attrs.append(_TRAIT_ATTRS[value.trait])
    elif isinstance(value, PlainNP):
        cat = "NP"
    elif isinstance(value, PpvValue):
        cat = "Ppv"
    elif isinstance(value, VnValue):
        cat = "V-n"
    elif isinstance(value, Completive):
        cat = "completive"
        if value.conjunction is not None:
            attrs.append(("conj", value.conjunction))
            attrs.append(("mood", lookup_mood(value.conjunction, lex).value))
            attrs.append(("control", "true" if value.controlled_by_subject else "false"))
        if value.nominalized:
            attrs.append(("nominalized", "true"))
    else:
        raise TypeError(f"unexpected distribution value {value!r}")
    if label.arg is not None and label.arg.case_tag not in (None, Case.DATIVE):
        attrs.append(("case", label.arg.case_tag.value))
    return ArgDist(cat, tuple(attrs), origin)


def _distribution_position(label: Distribution, params: dict[str, str]) -> int:
    if "pos" in params:
        return int(params["pos"])
    if label.arg is not None:
        return label.arg.position
    if isinstance(label.value, Completive) and label.value.position is not None:
        return label.value.position
    raise ConfigError(
        f"cannot determine the argument position of {render_label(label)!r}; "
        f"give the directive a pos= parameter"
    )


def _apply_directive(
    builder: _EntryBuilder,
    directive: Directive,
    label: PropertyLabel,
    origin: str,
    lex: Lexicons,
    cell_forms: tuple[str, ...] | None,
) -> None:
    effect = directive.effect
    if effect == "ignore":
        return
    if effect == "add_absolute_construction":
        text = directive.params.get("template") or render_label(label)
        builder.absolute.append(f"o::{text}")
    elif effect == "add_relative":
        builder.relative.append(directive.params.get("template") or render_label(label))
    elif effect == "add_distribution":
        if not isinstance(label, Distribution):
            raise ConfigError(f"add_distribution applied to non-distribution {origin!r}")
        pos = _distribution_position(label, directive.params)
        builder.dists.setdefault(pos, []).append(
            _distribution_comp(label, origin, lex)
        )
    elif effect == "add_locatif":
        pos, preps = _prep_target(label, directive.params, origin)
        builder.add_prep_group(builder.locatifs, pos, preps)
    elif effect == "add_preposition":
        pos, preps = _prep_target(label, directive.params, origin)
        builder.add_prep_group(builder.prepositions, pos, preps)
    elif effect == "add_pfx_verb":
        if not isinstance(label, EntryFormation):
            raise ConfigError(f"add_pfx_verb applied to non-formation {origin!r}")
        builder.pfx_verbs.append(apply_prefix(builder.lemma, label.prefix))
    elif effect == "add_lexical_field":
        _add_lexical_field(builder, label, cell_forms)
    else:
        raise ConfigError(f"unknown effect {effect!r}")


def _prep_target(
    label: PropertyLabel, params: dict[str, str], origin: str
) -> tuple[int, tuple[str, ...]]:
    if isinstance(label, LocPrepDistribution):
        return label.arg.position, label.preps
    if isinstance(label, ExtraComplement) and "pos" in params:
        return int(params["pos"]), (label.prep,)
    if "pos" in params and "prep" in params:
        return int(params["pos"]), tuple(params["prep"].split("+"))
    raise ConfigError(
        f"cannot determine preposition target for {origin!r}; "
        f"give the directive pos=/prep= parameters"
    )


def _add_lexical_field(
    builder: _EntryBuilder, label: PropertyLabel, cell_forms: tuple[str, ...] | None
) -> None:
    if not isinstance(label, LexicalField):
        return
    if label.field.value == "N0 Vsup Npred":
        # marker column: the forms live in the Vsup/Npred lexical columns
        return
    if not cell_forms:
        return
    key = label.field.value.lower().replace(" ", "-")
    builder.lexical_fields.append(LexFieldForms(key, cell_forms, label.suffix))


def extract_entry(
    table: Table,
    row_index: int,
    script: ExtractionScript,
    defining: DefiningConfig,
    lex: Lexicons,
    expand_prefixes: bool = True,
) -> list[LGLexEntry]:
    """Compile one table row; prefix clones follow the base entry."""
    row = next((r for r in table.rows if r.row_index == row_index), None)
    if row is None:
        raise ValueError(f"table {table.name} has no entry {row_index}")
    category = _CATEGORY_NAMES.get(table.category, table.category.lower())
    builder = _EntryBuilder(
        f"{table.category}_{table.name}_{row_index}", category, row.lemma
    )

    base = defining.base_construction(table.name)
    builder.absolute.append(f"true::{render_label(base.parsed)}")
    for defining_label in defining.labels_for(table.name)[1:]:
        _dispatch(builder, script, defining_label.parsed, defining_label.text, lex, None)

    for index, col in enumerate(table.columns):
        cell = row.cells[index]
        if col.kind is ColumnKind.EXAMPLE:
            if builder.example is None and isinstance(cell, Lexical):
                builder.example = cell.render()
            continue
        if col.kind not in (ColumnKind.CODED, ColumnKind.LEXICAL):
            continue
        if col.parsed is None:
            raise UnmatchedLabel(
                f"table {table.name}: column {col.raw_heading!r} does not parse "
                f"({col.parse_error}); normalize the table first"
            )
        if col.kind is ColumnKind.CODED:
            if isinstance(cell, Plus):
                _dispatch(builder, script, col.parsed, col.raw_heading, lex, None)
        else:
            forms = cell.alternatives if isinstance(cell, Lexical) else None
            _dispatch(builder, script, col.parsed, col.raw_heading, lex, forms)

    entries = [builder.build()]
    if expand_prefixes:
        base_entry = entries[0]
        for k, form in enumerate(base_entry.pfx_verbs, start=1):
            entries.append(
                replace(base_entry, entry_id=f"{base_entry.entry_id}_pfx{k}", lemma=form)
            )
    return entries


def _dispatch(
    builder: _EntryBuilder,
    script: ExtractionScript,
    label: PropertyLabel,
    label_text: str,
    lex: Lexicons,
    cell_forms: tuple[str, ...] | None,
) -> None:
    canonical = render_label(label)
    kind_name = _KIND_NAMES[type(label)]
    directive = script.find(canonical, kind_name)
    if directive is None and canonical != label_text:
        directive = script.find(label_text, kind_name)
    if directive is None:
        raise UnmatchedLabel(
            f"no extraction directive matches label {label_text!r} (kind {kind_name})"
        )
    _apply_directive(builder, directive, label, canonical, lex, cell_forms)


@dataclass(frozen=True)
class ExtractionResult:
    entries: tuple[LGLexEntry, ...]
    rows: int

    def to_lexicon(self) -> LGLexLexicon:
        return LGLexLexicon(tuple(entry.to_doc() for entry in self.entries))

    @property
    def stats(self) -> dict[str, int]:
        return {"rows": self.rows, "entries": len(self.entries)}


def extract_lexicon(
    tables: list[Table],
    script: ExtractionScript,
    defining: DefiningConfig,
    lex: Lexicons,
    *,
    expand_prefixes: bool = True,
) -> ExtractionResult:
    """Compile all rows of all tables, ordered by (table name, entry number)."""
    entries: list[LGLexEntry] = []
    rows = 0
    for table in sorted(tables, key=lambda t: t.name):
        for row in table.rows:
            rows += 1
            try:
                entries.extend(
                    extract_entry(
                        table, row.row_index, script, defining, lex,
                        expand_prefixes=expand_prefixes,
                    )
                )
            except (UnmatchedLabel, ConfigError) as err:
                raise type(err)(
                    f"table {table.name}, entry {row.row_index}: {err}"
                ) from err
    return ExtractionResult(tuple(entries), rows)
