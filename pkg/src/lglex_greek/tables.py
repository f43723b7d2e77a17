"""In-memory model, loading, validation and writing of table files.

A table file is UTF-8 delimited text (tab by default): first row = column
headings, one lexical entry per following row. Coded cells use "+", "-",
"?", "<E>" or the empty string; lexical cells carry word forms, alternatives
joined by "+".
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path
from typing import Iterable, Union

from .errors import ConfigError, LabelError, TableError
from .labels import LexicalField, PropertyLabel, parse_label

CODED_TOKENS = {"+", "-", "?", "<E>", ""}


# --- cells ---------------------------------------------------------------------


@dataclass(frozen=True)
class Plus:
    def render(self) -> str:
        return "+"


@dataclass(frozen=True)
class Minus:
    def render(self) -> str:
        return "-"


@dataclass(frozen=True)
class Unknown:
    def render(self) -> str:
        return "?"


@dataclass(frozen=True)
class Empty:
    """Empty cell; the source marker ("" or "<E>") is kept for write-back."""

    marker: str = ""

    def render(self) -> str:
        return self.marker


@dataclass(frozen=True)
class Lexical:
    alternatives: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.alternatives or any(not a for a in self.alternatives):
            raise ValueError("lexical alternatives must be non-empty strings")
        if len(set(self.alternatives)) != len(self.alternatives):
            raise ValueError(f"duplicate lexical alternative in {self.alternatives}")

    def render(self) -> str:
        return "+".join(self.alternatives)


CellValue = Union[Plus, Minus, Unknown, Empty, Lexical]


class ColumnKind(Enum):
    CODED = "coded"
    LEXICAL = "lexical"
    LEMMA = "lemma"
    ENTRY_ID = "entry_id"
    EXAMPLE = "example"
    TRANSLATION = "translation"


PROPERTY_KINDS = (ColumnKind.CODED, ColumnKind.LEXICAL)


@dataclass(frozen=True)
class ColumnSpec:
    raw_heading: str
    kind: ColumnKind
    parsed: PropertyLabel | None = None
    parse_error: str | None = None


@dataclass(frozen=True)
class Entry:
    row_index: int
    lemma: str
    cells: tuple[CellValue, ...]


@dataclass(frozen=True)
class Table:
    name: str
    category: str
    columns: tuple[ColumnSpec, ...]
    rows: tuple[Entry, ...]

    def column_indices(self, heading: str) -> list[int]:
        return [i for i, c in enumerate(self.columns) if c.raw_heading == heading]

    def column_cells(self, index: int) -> list[CellValue]:
        return [row.cells[index] for row in self.rows]


# --- loader configuration --------------------------------------------------------

_DELIMITER_NAMES = {"tab": "\t", "comma": ",", "semicolon": ";"}


@dataclass(frozen=True)
class LoaderConfig:
    """Per-run knobs: delimiter, lemma/id column names, untouched columns."""

    delimiter: str = "\t"
    lemma_column: str = "ENT"
    id_column: str | None = None
    example_columns: tuple[str, ...] = ("Example",)
    translation_columns: tuple[str, ...] = ("Translation",)
    category: str = "V"

    @classmethod
    def from_file(cls, path: Path | str) -> "LoaderConfig":
        values: dict[str, str] = {}
        for lineno, line in enumerate(
            Path(path).read_text(encoding="utf-8").splitlines(), start=1
        ):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            values[key.strip()] = value.strip()
        known = {
            "delimiter", "lemma_column", "id_column",
            "example_columns", "translation_columns", "category",
        }
        unknown = set(values) - known
        if unknown:
            raise ConfigError(f"{path}: unknown loader keys {sorted(unknown)}")
        kwargs: dict = {}
        if "delimiter" in values:
            raw = values["delimiter"]
            kwargs["delimiter"] = _DELIMITER_NAMES.get(raw, raw)
        if "lemma_column" in values:
            kwargs["lemma_column"] = values["lemma_column"]
        if "id_column" in values:
            kwargs["id_column"] = values["id_column"] or None
        for key in ("example_columns", "translation_columns"):
            if key in values:
                kwargs[key] = tuple(
                    part.strip() for part in values[key].split(",") if part.strip()
                )
        if "category" in values:
            kwargs["category"] = values["category"]
        return cls(**kwargs)


# --- loading ---------------------------------------------------------------------


def _classify_column(
    heading: str, cells: list[str], config: LoaderConfig, conjunctions=None
) -> ColumnSpec:
    if heading == config.lemma_column:
        return ColumnSpec(heading, ColumnKind.LEMMA)
    if config.id_column is not None and heading == config.id_column:
        return ColumnSpec(heading, ColumnKind.ENTRY_ID)
    if heading in config.example_columns:
        return ColumnSpec(heading, ColumnKind.EXAMPLE)
    if heading in config.translation_columns:
        return ColumnSpec(heading, ColumnKind.TRANSLATION)
    try:
        parsed = parse_label(heading, conjunctions)
    except LabelError as err:
        # heading not (yet) canonical: fall back on the cell contents
        kind = (
            ColumnKind.CODED
            if all(c in CODED_TOKENS for c in cells)
            else ColumnKind.LEXICAL
        )
        return ColumnSpec(heading, kind, parse_error=str(err))
    kind = (
        ColumnKind.LEXICAL
        if isinstance(parsed, LexicalField)
        else ColumnKind.CODED
    )
    return ColumnSpec(heading, kind, parsed=parsed)


def _coded_cell(raw: str) -> CellValue:
    if raw == "+":
        return Plus()
    if raw == "-":
        return Minus()
    if raw == "?":
        return Unknown()
    if raw in ("", "<E>"):
        return Empty(raw)
    # off-convention content in a coded column; kept verbatim, flagged by validation
    return Lexical((raw,))


def _lexical_cell(raw: str) -> CellValue:
    if raw in ("", "<E>"):
        return Empty(raw)
    if raw in ("+", "-", "?"):
        # coded token in a lexical column; kept verbatim, flagged by validation
        return Lexical((raw,))
    return Lexical(tuple(part for part in raw.split("+") if part))


def build_table(
    name: str,
    headings: list[str],
    data_rows: list[list[str]],
    config: LoaderConfig,
    *,
    allow_duplicate_headings: bool = False,
    conjunctions=None,
) -> Table:
    """Assemble and check a Table from already-split heading and cell text."""
    seen: dict[str, int] = {}
    for heading in headings:
        seen[heading] = seen.get(heading, 0) + 1
    duplicates = sorted(h for h, n in seen.items() if n > 1)
    if duplicates and not allow_duplicate_headings:
        raise TableError(f"table {name}: duplicate headings {duplicates}")
    for i, row in enumerate(data_rows, start=2):
        if len(row) != len(headings):
            raise TableError(
                f"table {name}: ragged row {i}: {len(row)} cells for "
                f"{len(headings)} headings"
            )

    columns_raw = list(zip(*data_rows)) if data_rows else [()] * len(headings)
    columns = tuple(
        _classify_column(h, list(cells), config, conjunctions)
        for h, cells in zip(headings, columns_raw)
    )
    lemma_indices = [i for i, c in enumerate(columns) if c.kind is ColumnKind.LEMMA]
    if len(lemma_indices) != 1:
        raise TableError(
            f"table {name}: expected exactly one lemma column "
            f"{config.lemma_column!r}, found {len(lemma_indices)}"
        )
    lemma_index = lemma_indices[0]
    id_indices = [i for i, c in enumerate(columns) if c.kind is ColumnKind.ENTRY_ID]
    id_index = id_indices[0] if id_indices else None

    rows = []
    previous_index = 0
    for offset, raw_row in enumerate(data_rows):
        lemma = raw_row[lemma_index]
        if not lemma:
            raise TableError(f"table {name}: empty lemma at row {offset + 2}")
        if id_index is not None:
            try:
                row_index = int(raw_row[id_index])
            except ValueError:
                raise TableError(
                    f"table {name}: non-numeric entry id {raw_row[id_index]!r} "
                    f"at row {offset + 2}"
                ) from None
        else:
            row_index = offset + 1
        if row_index <= previous_index:
            raise TableError(
                f"table {name}: entry ids must be strictly increasing "
                f"(got {row_index} after {previous_index})"
            )
        previous_index = row_index
        cells = []
        for col, raw in zip(columns, raw_row):
            if col.kind is ColumnKind.CODED:
                cells.append(_coded_cell(raw))
            elif col.kind is ColumnKind.LEXICAL:
                cells.append(_lexical_cell(raw))
            elif col.kind is ColumnKind.ENTRY_ID:
                cells.append(Lexical((raw,)))
            else:  # lemma, example, translation: carried through untouched
                cells.append(Empty(raw) if raw in ("", "<E>") else Lexical((raw,)))
        rows.append(Entry(row_index, lemma, tuple(cells)))
    return Table(name, config.category, columns, tuple(rows))


def load_table(
    path: Path | str,
    config: LoaderConfig | None = None,
    *,
    name: str | None = None,
    allow_duplicate_headings: bool = False,
    conjunctions=None,
) -> Table:
    """Load one table file. The table name defaults to the file stem."""
    path = Path(path)
    config = config or LoaderConfig()
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as err:
        raise TableError(f"cannot read table file {path}: {err}") from err
    lines = text.splitlines()
    if not lines:
        raise TableError(f"table file {path} is empty")
    headings = lines[0].split(config.delimiter)
    data_rows = [line.split(config.delimiter) for line in lines[1:]]
    return build_table(
        name or path.stem,
        headings,
        data_rows,
        config,
        allow_duplicate_headings=allow_duplicate_headings,
        conjunctions=conjunctions,
    )


# --- writing ---------------------------------------------------------------------


def render_table(table: Table, delimiter: str = "\t") -> str:
    """Delimited text for a table; always ends with exactly one newline."""
    lines = [delimiter.join(col.raw_heading for col in table.columns)]
    for row in table.rows:
        lines.append(delimiter.join(cell.render() for cell in row.cells))
    return "\n".join(lines) + "\n"


def write_table(table: Table, path: Path | str, delimiter: str = "\t") -> None:
    Path(path).write_text(render_table(table, delimiter), encoding="utf-8")


# --- validation --------------------------------------------------------------------


@dataclass(frozen=True)
class ValidationItem:
    table: str
    column: str
    code: str
    category: str
    message: str
    row: int | None = None


@dataclass
class ValidationReport:
    items: list[ValidationItem]

    @property
    def is_clean(self) -> bool:
        return not self.items

    def to_tsv(self) -> str:
        lines = ["table\tcolumn\trow\tcode\tcategory\tmessage"]
        for it in self.items:
            row = "" if it.row is None else str(it.row)
            lines.append(
                f"{it.table}\t{it.column}\t{row}\t{it.code}\t{it.category}\t{it.message}"
            )
        return "\n".join(lines) + "\n"


def validate_table(table: Table, rules=None) -> ValidationReport:
    """Report notation problems; an empty report means the table is clean.

    When a rule set is given, headings that the rewrite rules would repair
    are categorized by the repairing rule; everything else is reported
    under its own code.
    """
    items: list[ValidationItem] = []
    seen: dict[str, int] = {}
    for col in table.columns:
        seen[col.raw_heading] = seen.get(col.raw_heading, 0) + 1
    for heading in sorted(h for h, n in seen.items() if n > 1):
        items.append(
            ValidationItem(
                table.name, heading, "duplicate_heading", "structural",
                f"{seen[heading]} columns share the heading {heading!r}",
            )
        )
    for index, col in enumerate(table.columns):
        if col.kind not in PROPERTY_KINDS:
            continue
        if col.parse_error is not None:
            category = "unparseable"
            note = ""
            if rules is not None:
                from .normalize import normalize_label

                fixed = normalize_label(col.raw_heading, rules)
                if fixed.applied and fixed.residual_error is None:
                    category = rules.by_id(fixed.applied[0]).category
                    note = f"; rewrites to {fixed.text!r}"
            code = (
                "homoglyph_heading"
                if "homoglyph" in col.parse_error
                else "unparseable_heading"
            )
            if code == "homoglyph_heading":
                category = "typographic"
            items.append(
                ValidationItem(
                    table.name, col.raw_heading, code, category,
                    f"unparseable or non-canonical heading: {col.parse_error}{note}",
                )
            )
        if col.kind is ColumnKind.CODED:
            for row in table.rows:
                cell = row.cells[index]
                if isinstance(cell, Lexical):
                    items.append(
                        ValidationItem(
                            table.name, col.raw_heading, "lexical_in_coded",
                            "linguistic",
                            f"coded column holds {cell.render()!r}",
                            row=row.row_index,
                        )
                    )
        elif col.kind is ColumnKind.LEXICAL:
            for row in table.rows:
                cell = row.cells[index]
                if isinstance(cell, Lexical) and cell.alternatives[0] in ("+", "-", "?"):
                    items.append(
                        ValidationItem(
                            table.name, col.raw_heading, "coded_in_lexical",
                            "linguistic",
                            f"lexical column holds coded token {cell.render()!r}",
                            row=row.row_index,
                        )
                    )
    return ValidationReport(items)


def replace_columns(
    table: Table, columns: Iterable[ColumnSpec], rows_cells: list[list[CellValue]]
) -> Table:
    """New table with the given columns and per-row cells (metadata kept)."""
    columns = tuple(columns)
    new_rows = tuple(
        replace(row, cells=tuple(cells))
        for row, cells in zip(table.rows, rows_cells)
    )
    return replace(table, columns=columns, rows=new_rows)
