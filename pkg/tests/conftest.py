import pytest

from sfgroups.acceptance import catalog


def pytest_addoption(parser):
    parser.addoption("--long-run", action="store_true", default=False, help="run the order-32 classification")


def pytest_configure(config):
    config.addinivalue_line("markers", "long_run: needs --long-run")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--long-run"):
        return
    skip = pytest.mark.skip(reason="needs --long-run")
    for item in items:
        if "long_run" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def cat8():
    return catalog(2, 3)


@pytest.fixture(scope="session")
def cat16():
    return catalog(2, 4)


@pytest.fixture(scope="session")
def cat27():
    return catalog(3, 3)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def record_criterion():
    def record(result):
        ACCEPTANCE_LINES.append(result.line())
        return result

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
