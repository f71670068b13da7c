import pytest

from charvar.catalog import fixture_model, load_arrangement


@pytest.fixture(scope="session")
def deleted_b3():
    arr, _ = load_arrangement("deleted-b3")
    return arr


@pytest.fixture(scope="session")
def d_model():
    """Deleted B3 with its stored fibered decone."""
    return fixture_model("deleted-b3")


@pytest.fixture(scope="session")
def a3_model():
    return fixture_model("a3")


ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
