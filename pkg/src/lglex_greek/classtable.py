"""The property × table matrix and near-duplicate label detection.

Cell values: "+" the property is defining for the table, "o" the table has
a column carrying the property, "?" not yet coded. "-" is never inferred;
it can only come from explicit configuration.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .normalize import DefiningConfig
from .tables import PROPERTY_KINDS, Table

PLUS, MINUS, CODED, UNKNOWN = "+", "-", "o", "?"


@dataclass(frozen=True)
class ClassTable:
    properties: tuple[str, ...]
    tables: tuple[str, ...]
    cells: tuple[tuple[str, ...], ...]  # rows = properties, columns = tables

    def cell(self, prop: str, table: str) -> str:
        return self.cells[self.properties.index(prop)][self.tables.index(table)]


def build_class_table(
    tables: list[Table],
    defining: DefiningConfig,
    minus: dict[str, set[str]] | None = None,
) -> ClassTable:
    """Matrix over the union of column headings and defining properties.

    Deterministic regardless of input order: tables sorted by name,
    properties sorted as strings. Explicit minus coding comes from the
    optional `minus` map (property -> table names); it is never inferred.
    """
    table_names = sorted({t.name for t in tables})
    headings: dict[str, set[str]] = {name: set() for name in table_names}
    for table in tables:
        for col in table.columns:
            if col.kind in PROPERTY_KINDS:
                headings[table.name].add(col.raw_heading.strip())
    defining_map: dict[str, set[str]] = {name: set() for name in table_names}
    for name in table_names:
        for label in defining.labels_for(name):
            defining_map[name].add(label.text)
    properties = sorted(
        set().union(*headings.values(), *defining_map.values())
        if table_names else set()
    )
    minus = minus or {}
    rows = []
    for prop in properties:
        row = []
        for name in table_names:
            if prop in defining_map[name]:
                row.append(PLUS)
            elif name in minus.get(prop, ()):
                row.append(MINUS)
            elif prop in headings[name]:
                row.append(CODED)
            else:
                row.append(UNKNOWN)
        rows.append(tuple(row))
    return ClassTable(tuple(properties), tuple(table_names), tuple(rows))


def render_class_table(ct: ClassTable) -> str:
    lines = ["property\t" + "\t".join(ct.tables)]
    for prop, row in zip(ct.properties, ct.cells):
        lines.append(prop + "\t" + "\t".join(row))
    return "\n".join(lines) + "\n"


def edit_distance(a: str, b: str) -> int:
    """Levenshtein distance over Unicode scalar values, case-sensitive."""
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            current.append(min(
                previous[j] + 1,          # deletion
                current[j - 1] + 1,       # insertion
                previous[j - 1] + (ca != cb),  # substitution
            ))
        previous = current
    return previous[-1]


_CONFUSABLE = {
    "Α": "A", "Β": "B", "Ε": "E", "Ζ": "Z", "Η": "H", "Ι": "I", "Κ": "K",
    "Μ": "M", "Ν": "N", "Ο": "O", "Π": "P", "Ρ": "P", "Τ": "T", "Υ": "Y",
    "Χ": "X", "ο": "o", "ν": "v",
}

_ASSIGN_SPACING = re.compile(r"\s*=:\s*")


def _strip_confusables(s: str) -> str:
    return "".join(_CONFUSABLE.get(c, c) for c in s)


def _normalize_spacing(s: str) -> str:
    return _ASSIGN_SPACING.sub(" =: ", s)


@dataclass(frozen=True)
class SuspectPair:
    label_a: str
    label_b: str
    distance: int
    reasons: tuple[str, ...]


def find_suspect_labels(ct: ClassTable, max_distance: int = 2) -> list[SuspectPair]:
    """Property pairs likely to be two spellings of one property.

    Pairs within `max_distance` edits, pairs differing only by Greek/Latin
    homoglyphs, only by spacing around "=:", or only by letter case; sorted
    by distance, then lexicographically.
    """
    if max_distance < 1:
        raise ValueError("max_distance must be >= 1")
    suspects = []
    props = ct.properties
    for i in range(len(props)):
        for j in range(i + 1, len(props)):
            a, b = props[i], props[j]
            reasons = []
            distance = edit_distance(a, b)
            if distance <= max_distance:
                reasons.append("edit_distance")
            if _strip_confusables(a) == _strip_confusables(b):
                reasons.append("homoglyph")
            if _normalize_spacing(a) == _normalize_spacing(b):
                reasons.append("spacing")
            if a.casefold() == b.casefold():
                reasons.append("case")
            if reasons:
                first, second = sorted((a, b))
                suspects.append(SuspectPair(first, second, distance, tuple(reasons)))
    suspects.sort(key=lambda s: (s.distance, s.label_a, s.label_b))
    return suspects


def render_suspects(suspects: list[SuspectPair]) -> str:
    lines = ["label_a\tlabel_b\tdistance\treasons"]
    for s in suspects:
        lines.append(f"{s.label_a}\t{s.label_b}\t{s.distance}\t{','.join(s.reasons)}")
    return "\n".join(lines) + "\n"
