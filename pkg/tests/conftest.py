import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

DATA = Path(__file__).parent / "data"

# verdict lines collected by the acceptance suite, one per criterion
acceptance_results: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if acceptance_results:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_results:
            terminalreporter.write_line(line)


@pytest.fixture
def data_dir() -> Path:
    return DATA


@pytest.fixture
def bibliography_xml() -> bytes:
    return (DATA / "bibliography.xml").read_bytes()


@pytest.fixture
def bibliography_single_xml() -> bytes:
    return (DATA / "bibliography_single.xml").read_bytes()


@pytest.fixture
def bibliography_xsd() -> bytes:
    return (DATA / "bibliography.xsd").read_bytes()


@pytest.fixture
def bibliography_nested_xsd() -> bytes:
    return (DATA / "bibliography_nested.xsd").read_bytes()
