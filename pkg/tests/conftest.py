import sys
from pathlib import Path

import pytest

from stagmt.grammar_io import load_grammar

sys.path.insert(0, str(Path(__file__).parent))


def pytest_terminal_summary(terminalreporter):
    """Repeat the acceptance verdicts where capture cannot swallow them."""
    import support

    if support.ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in support.ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def g_chase():
    return load_grammar("chase")


@pytest.fixture(scope="session")
def g_ditransitive():
    return load_grammar("ditransitive")


@pytest.fixture(scope="session")
def g_embedded():
    return load_grammar("embedded")
