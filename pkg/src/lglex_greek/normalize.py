"""Rule-driven heading rewriting and table normalization.

Rules live in an external TSV file (id, category, match, replace, mode) so
that the same conventions can be applied to future tables without touching
code. `normalize_table` additionally merges duplicate lexical columns,
drops defining-property columns and constant (non-pertinent) coded columns,
and reports every change under one of five categories.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError, CycleError, LabelError
from .labels import parse_label, render_label
from .tables import (
    ColumnKind, ColumnSpec, Empty, Lexical, Minus, Table,
    PROPERTY_KINDS, replace_columns,
)

CATEGORIES = (
    "typographic", "structural", "lexical_addition", "column_removal", "linguistic",
)

MAX_PASSES = 32


@dataclass(frozen=True)
class RewriteRule:
    rule_id: str
    category: str
    match: str
    replace: str
    mode: str = "literal"

    def apply(self, text: str) -> str:
        if self.mode == "literal":
            return self.replace if text == self.match else text
        return re.sub(self.match, self.replace, text)


@dataclass(frozen=True)
class RuleSet:
    rules: tuple[RewriteRule, ...]

    def __iter__(self):
        return iter(self.rules)

    def by_id(self, rule_id: str) -> RewriteRule:
        for rule in self.rules:
            if rule.rule_id == rule_id:
                return rule
        raise KeyError(rule_id)


def load_rules(path: Path | str) -> RuleSet:
    rules = []
    for lineno, line in enumerate(
        Path(path).read_text(encoding="utf-8").splitlines(), start=1
    ):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) not in (4, 5):
            raise ConfigError(f"{path}:{lineno}: expected 4 or 5 fields, got {len(parts)}")
        rule_id, category, match, replace = parts[:4]
        mode = parts[4] if len(parts) == 5 else "literal"
        if category not in CATEGORIES:
            raise ConfigError(f"{path}:{lineno}: unknown category {category!r}")
        if mode not in ("literal", "regex"):
            raise ConfigError(f"{path}:{lineno}: unknown mode {mode!r}")
        if mode == "regex":
            try:
                re.compile(match)
            except re.error as err:
                raise ConfigError(f"{path}:{lineno}: bad pattern: {err}") from err
        rules.append(RewriteRule(rule_id, category, match, replace, mode))
    return RuleSet(tuple(rules))


@dataclass(frozen=True)
class NormalizedLabel:
    text: str
    applied: tuple[str, ...]
    residual_error: str | None = None


def normalize_label(
    text: str,
    rules: RuleSet,
    conjunctions=None,
    max_passes: int = MAX_PASSES,
) -> NormalizedLabel:
    """Rewrite a heading to its fixpoint under the rule set.

    Returns the final text, the rule ids applied (in order), and a residual
    error message when the result still does not parse.
    """
    current = text
    applied: list[str] = []
    for _ in range(max_passes):
        changed = False
        for rule in rules:
            after = rule.apply(current)
            if after != current:
                applied.append(rule.rule_id)
                current = after
                changed = True
        if not changed:
            break
    else:
        raise CycleError(
            f"heading {text!r} still rewriting after {max_passes} passes "
            f"(last state {current!r})"
        )
    residual = None
    try:
        parse_label(current, conjunctions)
    except LabelError as err:
        residual = str(err)
    return NormalizedLabel(current, tuple(applied), residual)


@dataclass(frozen=True)
class Change:
    table: str
    column: str
    before: str
    after: str
    rule_id: str
    category: str


@dataclass
class ChangeReport:
    changes: list[Change] = field(default_factory=list)

    def extend(self, other: "ChangeReport") -> None:
        self.changes.extend(other.changes)

    def histogram(self) -> dict[str, tuple[int, float]]:
        """Per-category (count, percent of all changes)."""
        counts = {cat: 0 for cat in CATEGORIES}
        for change in self.changes:
            counts[change.category] += 1
        total = len(self.changes)
        return {
            cat: (n, 100.0 * n / total if total else 0.0)
            for cat, n in counts.items()
        }

    def to_tsv(self) -> str:
        lines = ["table\tcolumn\tbefore\tafter\trule_id\tcategory"]
        for c in self.changes:
            lines.append(
                f"{c.table}\t{c.column}\t{c.before}\t{c.after}\t{c.rule_id}\t{c.category}"
            )
        return "\n".join(lines) + "\n"


def change_stats(report: ChangeReport) -> dict[str, tuple[int, float]]:
    return report.histogram()


def merge_duplicate_columns(table: Table, heading: str) -> Table:
    """Collapse columns sharing a heading into one, "+"-joining the cells.

    Duplicates are removed and first-occurrence order is preserved. All
    duplicate columns must be lexical.
    """
    indices = table.column_indices(heading)
    if len(indices) < 2:
        raise ValueError(f"table {table.name}: heading {heading!r} is not duplicated")
    for i in indices:
        if table.columns[i].kind is not ColumnKind.LEXICAL:
            from .errors import TableError

            raise TableError(
                f"table {table.name}: cannot merge coded column {heading!r}"
            )
    keep = indices[0]
    drop = set(indices[1:])
    new_columns = [c for i, c in enumerate(table.columns) if i not in drop]
    rows_cells = []
    for row in table.rows:
        merged: list[str] = []
        for i in indices:
            cell = row.cells[i]
            if isinstance(cell, Lexical):
                for alt in cell.alternatives:
                    if alt not in merged:
                        merged.append(alt)
        merged_cell = Lexical(tuple(merged)) if merged else Empty()
        cells = [
            merged_cell if i == keep else cell
            for i, cell in enumerate(row.cells)
            if i not in drop
        ]
        rows_cells.append(cells)
    return replace_columns(table, new_columns, rows_cells)


def _reparse(column: ColumnSpec, text: str, conjunctions) -> ColumnSpec:
    from .labels import LexicalField

    try:
        parsed = parse_label(text, conjunctions)
    except LabelError as err:
        return ColumnSpec(text, column.kind, parse_error=str(err))
    kind = column.kind
    if kind in PROPERTY_KINDS:
        kind = (
            ColumnKind.LEXICAL if isinstance(parsed, LexicalField) else ColumnKind.CODED
        )
    return ColumnSpec(text, kind, parsed=parsed)


def normalize_table(
    table: Table,
    rules: RuleSet,
    defining: "DefiningConfig",
    conjunctions=None,
) -> tuple[Table, ChangeReport]:
    """Normalize headings, merge duplicates, drop defining and constant columns.

    Idempotent: a second run returns the same table and an empty report.
    Lemma, entry-id, example and translation columns are never touched.
    """
    report = ChangeReport()

    # 1. heading rewrites
    new_columns: list[ColumnSpec] = []
    for col in table.columns:
        if col.kind not in PROPERTY_KINDS:
            new_columns.append(col)
            continue
        result = normalize_label(col.raw_heading, rules, conjunctions)
        if result.applied:
            before = col.raw_heading
            for rule_id in result.applied:
                rule = rules.by_id(rule_id)
                after = rule.apply(before)
                report.changes.append(
                    Change(table.name, col.raw_heading, before, after, rule_id, rule.category)
                )
                before = after
            new_columns.append(_reparse(col, result.text, conjunctions))
        else:
            new_columns.append(col)
    current = replace_columns(
        table, new_columns, [list(row.cells) for row in table.rows]
    )

    # 2. merge duplicate lexical columns
    seen: dict[str, int] = {}
    for col in current.columns:
        if col.kind is ColumnKind.LEXICAL:
            seen[col.raw_heading] = seen.get(col.raw_heading, 0) + 1
    for heading in [h for h, n in seen.items() if n > 1]:
        count = seen[heading]
        current = merge_duplicate_columns(current, heading)
        report.changes.append(
            Change(
                table.name, heading, f"{count}x {heading}", heading,
                "merge_duplicate_columns", "structural",
            )
        )

    # 3. drop defining-property columns
    defining_canonical = set()
    for label in defining.labels_for(table.name):
        defining_canonical.add(render_label(label.parsed))
    removed: set[int] = set()
    for i, col in enumerate(current.columns):
        if col.kind not in PROPERTY_KINDS or col.parsed is None:
            continue
        if render_label(col.parsed) in defining_canonical:
            removed.add(i)
            report.changes.append(
                Change(
                    table.name, col.raw_heading, col.raw_heading, "",
                    "defining_property", "column_removal",
                )
            )

    # 4. drop constant (non-pertinent) coded columns
    for i, col in enumerate(current.columns):
        if i in removed or col.kind is not ColumnKind.CODED or not current.rows:
            continue
        cells = current.column_cells(i)
        if all(isinstance(c, Minus) for c in cells) or all(
            isinstance(c, Empty) for c in cells
        ):
            removed.add(i)
            report.changes.append(
                Change(
                    table.name, col.raw_heading, col.raw_heading, "",
                    "non_pertinent_constant", "column_removal",
                )
            )

    if removed:
        kept_columns = [c for i, c in enumerate(current.columns) if i not in removed]
        rows_cells = [
            [cell for i, cell in enumerate(row.cells) if i not in removed]
            for row in current.rows
        ]
        current = replace_columns(current, kept_columns, rows_cells)

    return current, report


# --- defining configuration ---------------------------------------------------------


@dataclass(frozen=True)
class DefiningLabel:
    text: str
    parsed: object  # PropertyLabel


@dataclass(frozen=True)
class DefiningConfig:
    """Defining properties per table; the first one is the base construction."""

    by_table: dict[str, tuple[DefiningLabel, ...]]

    def labels_for(self, table_name: str) -> tuple[DefiningLabel, ...]:
        return self.by_table.get(table_name, ())

    def base_construction(self, table_name: str) -> DefiningLabel:
        labels = self.labels_for(table_name)
        if not labels:
            raise ConfigError(f"no defining construction configured for {table_name!r}")
        from .labels import Construction

        if not isinstance(labels[0].parsed, Construction):
            raise ConfigError(
                f"first defining property of {table_name!r} must be a construction, "
                f"got {labels[0].text!r}"
            )
        return labels[0]

    @property
    def tables(self) -> list[str]:
        return sorted(self.by_table)


def load_defining(path: Path | str, conjunctions=None) -> DefiningConfig:
    by_table: dict[str, list[DefiningLabel]] = {}
    for lineno, line in enumerate(
        Path(path).read_text(encoding="utf-8").splitlines(), start=1
    ):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ConfigError(f"{path}:{lineno}: expected table<TAB>label")
        name, text = parts
        try:
            parsed = parse_label(text, conjunctions)
        except LabelError as err:
            raise ConfigError(
                f"{path}:{lineno}: defining property does not parse: {err}"
            ) from err
        by_table.setdefault(name, []).append(DefiningLabel(text, parsed))
    return DefiningConfig({k: tuple(v) for k, v in by_table.items()})
