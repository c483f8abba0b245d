import pytest

from lefschetz_lab.models import CATALOG_NAMES, get_model


@pytest.fixture(params=CATALOG_NAMES)
def catalog_entry(request):
    return get_model(request.param)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
