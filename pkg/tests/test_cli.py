from __future__ import annotations

from pathlib import Path

import pytest

from lglex_greek.cli import main

from conftest import DATA

GOLDEN_ARGS = [
    "--tables", str(DATA / "golden_38GL"),
    "--loader-config", str(DATA / "loader_38GL.cfg"),
]
SEEDED_ARGS = [
    "--tables", str(DATA / "seeded"),
    "--defining", str(DATA / "defining_90SEED.tsv"),
]


def test_validate_clean_fixture(tmp_path, capsys):
    code = main(["validate", *GOLDEN_ARGS, "--out", str(tmp_path)])
    assert code == 0
    report = (tmp_path / "validation_report.tsv").read_text(encoding="utf-8")
    assert report.splitlines() == ["table\tcolumn\trow\tcode\tcategory\tmessage"]
    assert "38GL: clean" in capsys.readouterr().out


def test_validate_dirty_fixture_exits_one(tmp_path):
    code = main(["validate", *SEEDED_ARGS, "--out", str(tmp_path)])
    assert code == 1
    report = (tmp_path / "validation_report.tsv").read_text(encoding="utf-8")
    assert "ppv" in report


def test_extract_writes_both_formats(tmp_path, capsys, golden_full_bytes):
    code = main(["extract", *GOLDEN_ARGS, "--format", "both",
                 "--out", str(tmp_path)])
    assert code == 0
    assert (tmp_path / "lglex.txt").read_bytes() == golden_full_bytes
    assert (tmp_path / "lglex.xml").read_bytes().startswith(b"<?xml")
    assert "rows=1 entries=3" in capsys.readouterr().out


def test_extract_without_prefix_expansion(tmp_path, capsys):
    code = main(["extract", *GOLDEN_ARGS, "--no-expand-prefixes",
                 "--out", str(tmp_path)])
    assert code == 0
    assert "rows=1 entries=1" in capsys.readouterr().out


def test_normalize_then_extract_equals_extract_inline(tmp_path, golden_full_bytes):
    norm_out = tmp_path / "normalized_run"
    assert main(["normalize", *GOLDEN_ARGS, "--out", str(norm_out)]) == 0
    second = tmp_path / "extract_after"
    assert main([
        "extract", "--tables", str(norm_out / "normalized"),
        "--loader-config", str(DATA / "loader_38GL.cfg"),
        "--out", str(second),
    ]) == 0
    assert (second / "lglex.txt").read_bytes() == golden_full_bytes


def test_normalize_outputs(tmp_path, capsys):
    code = main(["normalize", *SEEDED_ARGS, "--out", str(tmp_path)])
    assert code == 0
    out = capsys.readouterr().out
    assert "typographic: 11 (55.0%)" in out
    assert (tmp_path / "normalized" / "90SEED.tsv").exists()
    report = (tmp_path / "change_report.tsv").read_text(encoding="utf-8")
    assert report.count("\ttypographic") == 11
    png = (tmp_path / "change_histogram.png").read_bytes()
    assert png.startswith(b"\x89PNG")


def test_class_table_on_seventeen_fixture(tmp_path, capsys):
    code = main(["class-table", "--tables", str(DATA / "seventeen"),
                 "--out", str(tmp_path)])
    assert code == 0
    lines = (tmp_path / "class_table.tsv").read_text(encoding="utf-8").splitlines()
    header = lines[0].split("\t")
    assert header[0] == "property"
    assert len(header) == 1 + 17
    assert (tmp_path / "suspect_labels.tsv").exists()


def test_stats_reports_seeded_percentages(tmp_path, capsys):
    code = main(["stats", *SEEDED_ARGS, "--out", str(tmp_path)])
    assert code == 0
    out = capsys.readouterr().out
    assert "percent_typographic=55.0" in out
    assert "percent_structural=30.0" in out
    assert "percent_lexical_addition=10.0" in out
    assert "percent_column_removal=5.0" in out
    assert "percent_linguistic=0.0" in out
    stats = dict(
        line.split("\t") for line in
        (tmp_path / "stats.tsv").read_text(encoding="utf-8").splitlines()[1:]
    )
    assert stats["rows"] == "2"
    assert (tmp_path / "change_histogram.png").exists()


def test_missing_table_path_exits_two(tmp_path, capsys):
    code = main(["validate", "--tables", str(tmp_path / "nowhere"),
                 "--out", str(tmp_path)])
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_missing_rules_file_fails_fast(tmp_path, capsys):
    code = main(["validate", *GOLDEN_ARGS, "--rules", str(tmp_path / "no.tsv"),
                 "--out", str(tmp_path)])
    assert code == 2


def test_argument_order_does_not_change_output(tmp_path):
    files = sorted(str(p) for p in (DATA / "seventeen").glob("*.tsv"))
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    assert main(["class-table", "--tables", *files, "--out", str(out_a)]) == 0
    assert main(["class-table", "--tables", *reversed(files), "--out", str(out_b)]) == 0
    assert (out_a / "class_table.tsv").read_bytes() == \
        (out_b / "class_table.tsv").read_bytes()


def test_duplicate_table_names_rejected(tmp_path):
    nested = tmp_path / "more"
    nested.mkdir()
    source = (DATA / "seventeen" / "32GA.tsv").read_text(encoding="utf-8")
    (tmp_path / "32GA.tsv").write_text(source, encoding="utf-8")
    (nested / "32GA.tsv").write_text(source, encoding="utf-8")
    code = main(["validate", "--tables", str(tmp_path / "32GA.tsv"),
                 str(nested / "32GA.tsv"), "--out", str(tmp_path / "out")])
    assert code == 2


def test_no_partial_outputs_left_on_failure(tmp_path):
    # extraction fails fast with an empty script: no lexicon file may remain
    bad_script = tmp_path / "script.tsv"
    bad_script.write_text("EtymologicalMark\tignore\tx\n", encoding="utf-8")
    out = tmp_path / "out"
    code = main(["extract", *GOLDEN_ARGS, "--script", str(bad_script),
                 "--out", str(out)])
    assert code == 2
    assert not (out / "lglex.txt").exists()
    leftovers = [p for p in out.glob("*") if p.is_file()] if out.exists() else []
    assert leftovers == []
