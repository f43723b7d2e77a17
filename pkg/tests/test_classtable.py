from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from lglex_greek.classtable import (
    build_class_table, edit_distance, find_suspect_labels, render_class_table,
)
from lglex_greek.normalize import load_defining, normalize_table
from lglex_greek.tables import load_table

from conftest import DATA, make_table


def _defining_from_lines(tmp_path, lines):
    path = tmp_path / "defining.tsv"
    path.write_text("".join(f"{t}\t{p}\n" for t, p in lines), encoding="utf-8")
    return load_defining(path)


def test_minimal_class_table(tmp_path):
    table = make_table(["ENT", "N1 =: Nhum"], [["βγάζω", "+"]], name="T1")
    defining = _defining_from_lines(tmp_path, [("T1", "N0 V N1")])
    ct = build_class_table([table], defining)
    assert ct.properties == ("N0 V N1", "N1 =: Nhum")
    assert ct.cell("N0 V N1", "T1") == "+"
    assert ct.cell("N1 =: Nhum", "T1") == "o"


def test_shared_column_is_one_property(tmp_path):
    t1 = make_table(["ENT", "N1 =: Nhum"], [["βγάζω", "+"]], name="T1")
    t2 = make_table(["ENT", "N1 =: Nhum"], [["βάζω", "-"]], name="T2")
    defining = _defining_from_lines(
        tmp_path, [("T1", "N0 V N1"), ("T2", "N0 V N1")])
    ct = build_class_table([t1, t2], defining)
    assert ct.properties.count("N1 =: Nhum") == 1
    assert ct.cell("N1 =: Nhum", "T1") == "o"
    assert ct.cell("N1 =: Nhum", "T2") == "o"
    assert ct.cell("N0 V N1", "T1") == "+"


def test_seventeen_table_fixture(defining):
    tables = [
        load_table(path) for path in sorted((DATA / "seventeen").glob("*.tsv"))
    ]
    ct = build_class_table(tables, defining)
    assert len(ct.tables) == 17
    # every configured defining property appears and is plus for its table
    for name in ct.tables:
        for label in defining.labels_for(name):
            assert label.text in ct.properties
            assert ct.cell(label.text, name) == "+"
    base = defining.base_construction("38GL").text
    assert ct.cell(base, "38GL") == "+"
    assert ct.cell("N0 =: Nhum", "38GL") == "o"


def test_build_is_deterministic_under_input_order(defining):
    tables = [
        load_table(path) for path in sorted((DATA / "seventeen").glob("*.tsv"))
    ]
    shuffled = tables[:]
    random.Random(7).shuffle(shuffled)
    assert build_class_table(tables, defining) == build_class_table(shuffled, defining)


def test_unknown_cells_are_default(tmp_path):
    t1 = make_table(["ENT", "N1 =: Nhum"], [["βγάζω", "+"]], name="T1")
    t2 = make_table(["ENT", "N1 =: Nconc"], [["βάζω", "+"]], name="T2")
    defining = _defining_from_lines(
        tmp_path, [("T1", "N0 V N1"), ("T2", "N0 V N1")])
    ct = build_class_table([t1, t2], defining)
    assert ct.cell("N1 =: Nconc", "T1") == "?"
    assert ct.cell("N1 =: Nhum", "T2") == "?"


def test_minus_only_from_explicit_config(tmp_path):
    t1 = make_table(["ENT", "N1 =: Nhum"], [["βγάζω", "+"]], name="T1")
    defining = _defining_from_lines(tmp_path, [("T1", "N0 V N1")])
    ct = build_class_table([t1], defining, minus={"N1 =: Nconc": {"T1"}})
    assert "-" not in {ct.cell("N1 =: Nhum", "T1"), ct.cell("N0 V N1", "T1")}
    ct2 = build_class_table([t1], defining)
    assert "-" not in {cell for row in ct2.cells for cell in row}


def test_defining_must_parse(tmp_path):
    path = tmp_path / "defining.tsv"
    path.write_text("T1\ttotal nonsense!!\n", encoding="utf-8")
    from lglex_greek.errors import ConfigError

    with pytest.raises(ConfigError):
        load_defining(path)


def test_render_class_table_shape(defining):
    tables = [
        load_table(path) for path in sorted((DATA / "seventeen").glob("*.tsv"))
    ]
    ct = build_class_table(tables, defining)
    lines = render_class_table(ct).splitlines()
    assert lines[0].split("\t")[1:] == list(ct.tables)
    assert len(lines) == 1 + len(ct.properties)
    for line in lines[1:]:
        assert len(line.split("\t")) == 18


def test_property_count_monotone_under_normalization(rules, tmp_path):
    table = load_table(DATA / "seeded" / "90SEED.tsv",
                       allow_duplicate_headings=True)
    seeded_defining = load_defining(DATA / "defining_90SEED.tsv")
    before = build_class_table([table], seeded_defining)
    normalized, _ = normalize_table(table, rules, seeded_defining)
    after = build_class_table([normalized], seeded_defining)
    assert len(after.properties) <= len(before.properties)
    assert len(after.properties) < len(before.properties)  # variants collapsed


# --- suspects -------------------------------------------------------------------


def _ct_of(labels, tmp_path):
    table = make_table(
        ["ENT"] + list(labels),
        [["βγάζω"] + ["+"] * len(labels)],
        name="T1", allow_duplicate_headings=True)
    defining = _defining_from_lines(tmp_path, [("T1", "N0 V N1")])
    return build_class_table([table], defining)


def test_case_pair_found(tmp_path):
    ct = _ct_of(["Ppv", "ppv"], tmp_path)
    pairs = find_suspect_labels(ct, 1)
    match = next(p for p in pairs if {p.label_a, p.label_b} == {"Ppv", "ppv"})
    assert match.distance == 1
    assert "case" in match.reasons


def test_spacing_pair_found_beyond_max_distance(tmp_path):
    ct = _ct_of(["N0 =: Nhum", "N0=:Nhum"], tmp_path)
    pairs = find_suspect_labels(ct, 1)
    match = next(
        p for p in pairs if {p.label_a, p.label_b} == {"N0 =: Nhum", "N0=:Nhum"}
    )
    assert "spacing" in match.reasons


def test_homoglyph_pair_found(tmp_path):
    ct = _ct_of(["N0 V", "Ν0 V"], tmp_path)  # second has a Greek capital Nu
    pairs = find_suspect_labels(ct, 1)
    assert any("homoglyph" in p.reasons for p in pairs)


def test_clean_canonical_corpus_has_no_suspects(corpus_labels, tmp_path):
    distinct = [
        "N0 V N1 Loc N2 source Loc N3 destination",
        "N1 = Ppv =: (με+μας+σε+σας+τον+τους+τη+την+τις+το+τα)",
        "V-adj, Sfx = τικός",
    ]
    ct = _ct_of(distinct, tmp_path)
    assert find_suspect_labels(ct, 1) == []


def test_suspects_sorted_and_max_distance_validated(tmp_path):
    ct = _ct_of(["N0 V", "N1 V", "N2 V"], tmp_path)
    pairs = find_suspect_labels(ct, 2)
    keys = [(p.distance, p.label_a, p.label_b) for p in pairs]
    assert keys == sorted(keys)
    with pytest.raises(ValueError):
        find_suspect_labels(ct, 0)


# --- edit distance ---------------------------------------------------------------


def _edit_distance_brute(a: str, b: str) -> int:
    if not a:
        return len(b)
    if not b:
        return len(a)
    return min(
        _edit_distance_brute(a[1:], b) + 1,
        _edit_distance_brute(a, b[1:]) + 1,
        _edit_distance_brute(a[1:], b[1:]) + (a[0] != b[0]),
    )


@given(st.text("αβN01 ", max_size=5), st.text("αβN01 ", max_size=5))
def test_edit_distance_matches_bruteforce(a, b):
    assert edit_distance(a, b) == _edit_distance_brute(a, b)


def test_edit_distance_examples():
    assert edit_distance("Ppv", "ppv") == 1
    assert edit_distance("N0 =: Nhum", "N0=:Nhum") == 2
    assert edit_distance("", "abc") == 3
    assert edit_distance("same", "same") == 0
