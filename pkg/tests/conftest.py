import pytest

# filled by test_acceptance.py, printed once at the end of the session
ACCEPTANCE: dict[int, str] = {}


def record(number: int, title: str, passed: bool, detail: str = "") -> None:
    line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}"
    if detail:
        line += f"  [{detail}]"
    ACCEPTANCE[number] = line
    print(line)


@pytest.fixture
def acceptance():
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[number])
