import pytest

from tpact.corpus import CORPUS_DIR, load_corpus
from tpact.suite import generate_suite


@pytest.fixture(scope="session")
def suite():
    return generate_suite(seed=0)


@pytest.fixture(scope="session")
def corpus_dir():
    return CORPUS_DIR


@pytest.fixture(scope="session")
def corpus():
    return {suf: dict(load_corpus(suf)) for suf in (".sgp", ".tpa", ".tsm", ".ext")}


ACCEPTANCE_LINES = []


@pytest.fixture
def report():
    """Record one PASS/FAIL line per acceptance criterion; echoed in the terminal summary."""

    def record(number, title, ok, detail=""):
        line = f"ACCEPTANCE {number:>2} {title}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
