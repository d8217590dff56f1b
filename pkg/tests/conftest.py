import pytest

from pcengel.catalog import build_catalog, catalog_by_name


@pytest.fixture(scope="session")
def catalog():
    return build_catalog()


@pytest.fixture(scope="session")
def entries(catalog):
    return catalog_by_name(catalog)


@pytest.fixture(scope="session")
def heis5(entries):
    return entries["heis5"].presentation


@pytest.fixture(scope="session")
def heis7(entries):
    return entries["heis7"].presentation


@pytest.fixture(scope="session")
def s3(entries):
    return entries["s3"].presentation


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n])
