from pathlib import Path

import pytest

from conjectures.semantics import read_interp
from conjectures.syntax import parse

CORPUS = Path(__file__).parent / "corpus"
LISTINGS = CORPUS / "listings"
SYNTHETIC = CORPUS / "synthetic"

# Filled in by test_acceptance, printed once at the end of the run.
CRITERIA: dict[int, tuple[bool, str]] = {}


def load(name: str):
    return parse((LISTINGS / f"{name}.trigc").read_text(encoding="utf-8"))


def load_interp(name: str, prefixes):
    return read_interp((LISTINGS / f"{name}.interp").read_text(encoding="utf-8"), prefixes)


def listing_files() -> list[Path]:
    return sorted(LISTINGS.glob("*.trigc"))


def synthetic_files() -> list[Path]:
    return sorted(SYNTHETIC.glob("*.trigc"))


def corpus_files() -> list[Path]:
    return listing_files() + synthetic_files()


@pytest.fixture
def criterion():
    def record(number: int, ok: bool, detail: str = ""):
        CRITERIA[number] = (ok, detail)
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, max(10, max(CRITERIA)) + 1):
        ok, detail = CRITERIA.get(n, (False, "did not run to completion"))
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
