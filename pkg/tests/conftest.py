from pathlib import Path

import pytest

from cmxsent.corpus import load_tsv
from cmxsent.soundex import load_char_map
from cmxsent.translit import load_table

FIXTURES = Path(__file__).parent / "fixtures"


def read_rows(name):
    rows = []
    for line in (FIXTURES / name).read_text(encoding="utf-8").splitlines():
        if line and not line.startswith("#"):
            rows.append(line.split("\t"))
    return rows


@pytest.fixture(scope="session")
def ta_table():
    return load_table("ta")


@pytest.fixture(scope="session")
def ml_table():
    return load_table("ml")


@pytest.fixture(scope="session")
def char_map():
    return load_char_map()


@pytest.fixture(scope="session")
def emoji_train():
    return load_tsv(FIXTURES / "emoji_train.tsv", "ta")


@pytest.fixture(scope="session")
def emoji_val():
    return load_tsv(FIXTURES / "emoji_val.tsv", "ta")


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        status, title = results[number]
        terminalreporter.write_line(f"[{status}] criterion {number}: {title}")
