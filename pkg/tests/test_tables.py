from __future__ import annotations

import pytest

from lglex_greek.errors import TableError
from lglex_greek.tables import (
    ColumnKind, Empty, Lexical, LoaderConfig, Minus, Plus, Unknown,
    load_table, render_table, validate_table,
)

from conftest import DATA, make_table


def test_minimal_wellformed_table(tiny_table):
    assert len(tiny_table.rows) == 1
    kinds = [c.kind for c in tiny_table.columns]
    assert kinds == [ColumnKind.LEMMA, ColumnKind.CODED, ColumnKind.CODED]
    entry = tiny_table.rows[0]
    assert entry.lemma == "βγάζω"
    assert entry.cells[1] == Plus()
    assert entry.cells[2] == Minus()


def test_ragged_row_error_names_row():
    with pytest.raises(TableError, match="row 2"):
        make_table(["ENT", "N0 V", "N0 =: Nhum"], [["βγάζω", "+"]])


def test_duplicate_heading_rejected_unless_allowed():
    headings = ["ENT", "Npred", "Npred"]
    rows = [["βγάζω", "βόλτα", "περίπατος"]]
    with pytest.raises(TableError, match="duplicate"):
        make_table(headings, rows)
    table = make_table(headings, rows, allow_duplicate_headings=True)
    assert len(table.columns) == 3


def test_golden_fixture_entry_numbering(golden_table):
    entry = golden_table.rows[0]
    assert entry.row_index == 33
    assert entry.lemma == "βγάζω"


def test_row_order_numbering_is_default():
    table = make_table(["ENT", "N0 V"], [["βγάζω", "+"], ["βάζω", "-"]])
    assert [r.row_index for r in table.rows] == [1, 2]


def test_identity_write_back_is_byte_exact(golden_loader_config):
    source = (DATA / "golden_38GL" / "38GL.tsv").read_text(encoding="utf-8")
    table = load_table(DATA / "golden_38GL" / "38GL.tsv", golden_loader_config)
    assert render_table(table) == source


def test_identity_write_back_with_all_cell_kinds(tmp_path):
    content = "ENT\tN0 V\tN0 =: Nhum\tVpp\n" \
              "βγάζω\t+\t<E>\tβγαλμένος+βγαλτός\n" \
              "βάζω\t?\t\tβαλμένος\n"
    path = tmp_path / "T1.tsv"
    path.write_text(content, encoding="utf-8")
    table = load_table(path)
    assert render_table(table) == content
    assert table.rows[0].cells[2] == Empty("<E>")
    assert table.rows[1].cells[1] == Unknown()
    assert table.rows[1].cells[2] == Empty("")
    assert table.rows[0].cells[3] == Lexical(("βγαλμένος", "βγαλτός"))


def test_cell_classification_is_total(golden_table):
    for row in golden_table.rows:
        assert len(row.cells) == len(golden_table.columns)
        for cell in row.cells:
            assert isinstance(cell, (Plus, Minus, Unknown, Empty, Lexical))


def test_lexical_field_heading_gives_lexical_column():
    table = make_table(["ENT", "Vpp"], [["βγάζω", "βγαλμένος"]])
    assert table.columns[1].kind is ColumnKind.LEXICAL


def test_empty_lemma_rejected():
    with pytest.raises(TableError, match="lemma"):
        make_table(["ENT", "N0 V"], [["", "+"]])


def test_entry_ids_strictly_increasing():
    cfg = LoaderConfig(id_column="N°")
    with pytest.raises(TableError, match="strictly increasing"):
        make_table(["N°", "ENT", "N0 V"],
                   [["5", "βγάζω", "+"], ["5", "βάζω", "-"]], config=cfg)
    with pytest.raises(TableError, match="non-numeric"):
        make_table(["N°", "ENT", "N0 V"], [["x", "βγάζω", "+"]], config=cfg)


def test_validate_clean_fixture_is_empty(golden_table):
    assert validate_table(golden_table).is_clean


def test_validate_noncanonical_heading_categorized(rules):
    table = make_table(["ENT", "ppv"], [["βγάζω", "+"]])
    report = validate_table(table, rules)
    item = next(i for i in report.items if i.column == "ppv")
    assert item.code == "unparseable_heading"
    assert item.category == "typographic"
    assert "Ppv" in item.message


def test_validate_duplicate_headings(rules):
    table = make_table(["ENT", "Npred", "Npred"],
                       [["βγάζω", "βόλτα", "περίπατος"]],
                       allow_duplicate_headings=True)
    report = validate_table(table, rules)
    assert any(i.code == "duplicate_heading" for i in report.items)


def test_validate_lexical_text_in_coded_column():
    table = make_table(["ENT", "N0 V"], [["βγάζω", "ναι"]])
    report = validate_table(table)
    item = next(i for i in report.items if i.code == "lexical_in_coded")
    assert item.row == 1


def test_validate_coded_token_in_lexical_column():
    table = make_table(["ENT", "Npred"], [["βγάζω", "+"]])
    report = validate_table(table)
    assert any(i.code == "coded_in_lexical" for i in report.items)


def test_validate_homoglyph_heading():
    table = make_table(["ENT", "Ν0 V"], [["βγάζω", "+"]])
    report = validate_table(table)
    item = next(i for i in report.items if i.code == "homoglyph_heading")
    assert item.category == "typographic"
    assert "U+039D" in item.message


def test_loader_config_from_file(tmp_path):
    path = tmp_path / "loader.cfg"
    path.write_text(
        "delimiter=tab\nlemma_column=LEMMA\nid_column=NUM\n"
        "example_columns=Ex1,Ex2\ncategory=V\n", encoding="utf-8")
    cfg = LoaderConfig.from_file(path)
    assert cfg.delimiter == "\t"
    assert cfg.lemma_column == "LEMMA"
    assert cfg.id_column == "NUM"
    assert cfg.example_columns == ("Ex1", "Ex2")


def test_example_columns_untouched():
    table = make_table(["ENT", "N0 V", "Example"],
                       [["βγάζω", "+", "Έβγαλε το γάλα από το ψυγείο"]])
    assert table.columns[2].kind is ColumnKind.EXAMPLE
    assert table.rows[0].cells[2] == Lexical(("Έβγαλε το γάλα από το ψυγείο",))
