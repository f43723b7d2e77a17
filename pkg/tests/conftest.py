from __future__ import annotations

from pathlib import Path

import pytest

from lglex_greek.datafiles import data_path
from lglex_greek.extract import load_script
from lglex_greek.greek import shipped_lexicons
from lglex_greek.normalize import load_defining, load_rules
from lglex_greek.tables import LoaderConfig, build_table, load_table

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def rules():
    return load_rules(data_path("rules"))


@pytest.fixture(scope="session")
def defining():
    return load_defining(data_path("defining"))


@pytest.fixture(scope="session")
def script():
    return load_script(data_path("script"))


@pytest.fixture(scope="session")
def lexicons():
    return shipped_lexicons()


@pytest.fixture(scope="session")
def corpus_labels() -> list[str]:
    lines = data_path("corpus").read_text(encoding="utf-8").splitlines()
    return [line for line in lines if line.strip()]


@pytest.fixture(scope="session")
def golden_loader_config():
    return LoaderConfig.from_file(DATA / "loader_38GL.cfg")


@pytest.fixture()
def golden_table(golden_loader_config):
    return load_table(DATA / "golden_38GL" / "38GL.tsv", golden_loader_config)


@pytest.fixture(scope="session")
def golden_entry_bytes() -> bytes:
    return (DATA / "golden" / "lglex_38GL_entry.txt").read_bytes()


@pytest.fixture(scope="session")
def golden_full_bytes() -> bytes:
    return (DATA / "golden" / "lglex_38GL_full.txt").read_bytes()


def make_table(headings, rows, name="T", config=None, **kwargs):
    """In-memory table from heading and row lists."""
    return build_table(name, list(headings), [list(r) for r in rows],
                       config or LoaderConfig(), **kwargs)


@pytest.fixture()
def tiny_table():
    return make_table(["ENT", "N0 =: Nhum", "N0 V"], [["βγάζω", "+", "-"]])
