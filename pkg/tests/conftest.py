import pytest

# Filled by the acceptance module: criterion number -> "PASS ..." / "FAIL ..." line.
ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture
def acceptance_lines():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
