import pytest

import corpus

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def corpus_outcomes():
    return [corpus.evaluate(*inst) for inst in corpus.build_corpus()]


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
