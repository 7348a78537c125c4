import pytest

from gromovclass.catalog import classify_all

# acceptance results, filled in by tests/test_acceptance.py
ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


def record(number: int, title: str, ok: bool, detail: str) -> None:
    ACCEPTANCE[number] = (title, ok, detail)
    print(f"criterion {number} ({title}): {'PASS' if ok else 'FAIL'} - {detail}")


@pytest.fixture(scope="session")
def small_catalogs():
    return {n: classify_all(n, workers=1) for n in (4, 5, 6)}


@pytest.fixture(scope="session")
def catalog7(small_catalogs):
    return classify_all(7, workers=1)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"{number}. {title}: {'PASS' if ok else 'FAIL'} - {detail}")
