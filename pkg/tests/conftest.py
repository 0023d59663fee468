import pytest

from transframe.families import enumerate_frames

ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def record(criterion: int, passed: bool, detail: str) -> None:
    ACCEPTANCE_RESULTS[criterion] = (passed, detail)


@pytest.fixture(scope="session")
def rooted4():
    return enumerate_frames(4, rooted=True)


@pytest.fixture(scope="session")
def rooted5():
    return enumerate_frames(5, rooted=True)


@pytest.fixture(scope="session")
def catalog5():
    return enumerate_frames(5)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'} - {detail}")
