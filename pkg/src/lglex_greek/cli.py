"""Command-line pipeline: validate, normalize, class-table, extract, stats.

Exit codes: 0 success, 1 validation failures, 2 configuration or input
errors, 3 internal invariant violations. All output files are written
atomically (temp file + rename); machine-readable reports are delimited
text, with the change histogram also rendered as a PNG figure.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path

from .classtable import (
    build_class_table, find_suspect_labels, render_class_table, render_suspects,
)
from .datafiles import data_path
from .errors import ConfigError, LGLexGreekError
from .extract import ExtractionScript, extract_lexicon, load_script
from .figures import save_change_histogram
from .greek import Lexicons, load_lexicons_dir, shipped_lexicons
from .lglex_format import write_text, write_xml
from .normalize import (
    CATEGORIES, ChangeReport, DefiningConfig, RuleSet, load_defining, load_rules,
    normalize_table,
)
from .tables import LoaderConfig, Table, load_table, render_table, validate_table


@dataclass
class RunConfig:
    tables: list[Path]
    loader: LoaderConfig
    rules: RuleSet
    defining: DefiningConfig
    lexicons: Lexicons
    script: ExtractionScript
    out: Path
    expand_prefixes: bool = True
    output_format: str = "text"
    max_distance: int = 2


def _collect_table_files(specs: list[str]) -> list[Path]:
    files: list[Path] = []
    for spec in specs:
        path = Path(spec)
        if path.is_dir():
            files.extend(sorted(path.glob("*.tsv")))
        elif path.exists():
            files.append(path)
        else:
            raise ConfigError(f"table path does not exist: {spec}")
    if not files:
        raise ConfigError("no table files found")
    return sorted(files, key=lambda p: p.stem)


def _require(path: Path | str, what: str) -> Path:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"{what} file does not exist: {path}")
    return path


def build_run_config(args: argparse.Namespace) -> RunConfig:
    table_files = _collect_table_files(args.tables)
    loader_path = _require(args.loader_config or data_path("loader"), "loader config")
    rules_path = _require(args.rules or data_path("rules"), "rules")
    defining_path = _require(args.defining or data_path("defining"), "defining config")
    script_path = _require(args.script or data_path("script"), "extraction script")
    if args.lexicons:
        lexicons = load_lexicons_dir(_require(args.lexicons, "lexicon directory"))
    else:
        lexicons = shipped_lexicons()
    return RunConfig(
        tables=table_files,
        loader=LoaderConfig.from_file(loader_path),
        rules=load_rules(rules_path),
        defining=load_defining(defining_path, lexicons.conjunctions),
        lexicons=lexicons,
        script=load_script(script_path),
        out=Path(args.out),
        expand_prefixes=not getattr(args, "no_expand_prefixes", False),
        output_format=getattr(args, "format", "text"),
        max_distance=getattr(args, "max_distance", 2),
    )


def _atomic_write(path: Path, data: bytes) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=path.suffix)
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _write_histogram_figure(histogram, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".png")
    os.close(fd)
    try:
        save_change_histogram(histogram, tmp)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load_tables(config: RunConfig) -> list[Table]:
    tables = []
    for path in config.tables:
        tables.append(
            load_table(
                path, config.loader,
                allow_duplicate_headings=True,
                conjunctions=config.lexicons.conjunctions,
            )
        )
    names = [t.name for t in tables]
    clashes = sorted({n for n in names if names.count(n) > 1})
    if clashes:
        raise ConfigError(f"table names must be unique within a run: {clashes}")
    return sorted(tables, key=lambda t: t.name)


def _normalize_all(config: RunConfig, tables: list[Table]) -> tuple[list[Table], ChangeReport]:
    report = ChangeReport()
    normalized = []
    for table in tables:
        new_table, table_report = normalize_table(
            table, config.rules, config.defining, config.lexicons.conjunctions
        )
        normalized.append(new_table)
        report.extend(table_report)
    return normalized, report


def cmd_validate(config: RunConfig) -> int:
    items = 0
    reports = []
    for table in _load_tables(config):
        report = validate_table(table, config.rules)
        reports.append(report)
        items += len(report.items)
        state = "clean" if report.is_clean else f"{len(report.items)} item(s)"
        print(f"{table.name}: {state}")
    merged = "table\tcolumn\trow\tcode\tcategory\tmessage\n" + "".join(
        "".join(r.to_tsv().splitlines(keepends=True)[1:]) for r in reports
    )
    _atomic_write(config.out / "validation_report.tsv", merged.encode("utf-8"))
    print(f"validation items: {items}")
    return 1 if items else 0


def cmd_normalize(config: RunConfig) -> int:
    tables = _load_tables(config)
    normalized, report = _normalize_all(config, tables)
    for table in normalized:
        _atomic_write(
            config.out / "normalized" / f"{table.name}.tsv",
            render_table(table, config.loader.delimiter).encode("utf-8"),
        )
    _atomic_write(config.out / "change_report.tsv", report.to_tsv().encode("utf-8"))
    histogram = report.histogram()
    _write_histogram_figure(histogram, config.out / "change_histogram.png")
    print(f"changes: {len(report.changes)}")
    for cat in CATEGORIES:
        count, percent = histogram[cat]
        print(f"  {cat}: {count} ({percent:.1f}%)")
    return 0


def cmd_class_table(config: RunConfig) -> int:
    tables = _load_tables(config)
    ct = build_class_table(tables, config.defining)
    suspects = find_suspect_labels(ct, config.max_distance)
    _atomic_write(config.out / "class_table.tsv", render_class_table(ct).encode("utf-8"))
    _atomic_write(config.out / "suspect_labels.tsv", render_suspects(suspects).encode("utf-8"))
    print(f"properties: {len(ct.properties)} tables: {len(ct.tables)} "
          f"suspect pairs: {len(suspects)}")
    return 0


def cmd_extract(config: RunConfig) -> int:
    tables = _load_tables(config)
    normalized, _ = _normalize_all(config, tables)
    result = extract_lexicon(
        normalized, config.script, config.defining, config.lexicons,
        expand_prefixes=config.expand_prefixes,
    )
    lexicon = result.to_lexicon()
    if config.output_format in ("text", "both"):
        _atomic_write(config.out / "lglex.txt", write_text(lexicon))
    if config.output_format in ("xml", "both"):
        _atomic_write(config.out / "lglex.xml", write_xml(lexicon))
    print(f"rows={result.stats['rows']} entries={result.stats['entries']}")
    return 0


def cmd_stats(config: RunConfig) -> int:
    tables = _load_tables(config)
    normalized, report = _normalize_all(config, tables)
    result = extract_lexicon(
        normalized, config.script, config.defining, config.lexicons,
        expand_prefixes=config.expand_prefixes,
    )
    ct = build_class_table(normalized, config.defining)
    histogram = report.histogram()
    lines = [
        ("tables", str(len(tables))),
        ("rows", str(result.stats["rows"])),
        ("entries", str(result.stats["entries"])),
        ("properties", str(len(ct.properties))),
        ("changes", str(len(report.changes))),
    ]
    for cat in CATEGORIES:
        count, percent = histogram[cat]
        lines.append((f"changes_{cat}", str(count)))
        lines.append((f"percent_{cat}", f"{percent:.1f}"))
    tsv = "metric\tvalue\n" + "".join(f"{k}\t{v}\n" for k, v in lines)
    _atomic_write(config.out / "stats.tsv", tsv.encode("utf-8"))
    _write_histogram_figure(histogram, config.out / "change_histogram.png")
    for key, value in lines:
        print(f"{key}={value}")
    return 0


_COMMANDS = {
    "validate": cmd_validate,
    "normalize": cmd_normalize,
    "class-table": cmd_class_table,
    "extract": cmd_extract,
    "stats": cmd_stats,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lglex-greek",
        description="Compile Lexicon-Grammar tables of Greek verbs into the "
                    "LGLex syntactic lexicon.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--tables", nargs="+", required=True,
                       help="table files or directories of *.tsv files")
        p.add_argument("--loader-config", help="loader configuration file")
        p.add_argument("--rules", help="rewrite rules file")
        p.add_argument("--defining", help="defining-properties file")
        p.add_argument("--lexicons", help="directory with prep_case.tsv, "
                                          "conj_mood.tsv, verb_classes.tsv")
        p.add_argument("--script", help="extraction script file")
        p.add_argument("--out", default="out", help="output directory")
        if name == "extract":
            p.add_argument("--format", choices=("text", "xml", "both"), default="text")
            p.add_argument("--no-expand-prefixes", action="store_true")
        if name == "stats":
            p.add_argument("--no-expand-prefixes", action="store_true")
        if name == "class-table":
            p.add_argument("--max-distance", type=int, default=2)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = build_run_config(args)
        return _COMMANDS[args.command](config)
    except (ConfigError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except LGLexGreekError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except Exception as err:  # invariant violation
        print(f"internal error: {type(err).__name__}: {err}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
