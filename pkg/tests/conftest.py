import pytest

from cdakit.catalog import catalog_seed, seed_array


@pytest.fixture(scope="session")
def m_prime():
    """8x4 simple COA of index 2 over Z_2, used as a (1,2) detecting plan."""
    return seed_array("coa2-2-4-2")


@pytest.fixture(scope="session")
def coa27():
    return seed_array("coa3-2-6-3")


@pytest.fixture(scope="session")
def rowdiv12():
    return catalog_seed("rowdiv2-coa3-2-5-2")


# acceptance bookkeeping: one PASS/FAIL line per criterion at the end of the run
_CRITERIA: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            number, title = mark.args
            entry = _CRITERIA.setdefault(number, {"title": title, "nodes": set(), "failed": False, "ran": 0})
            entry["nodes"].add(item.nodeid)


def pytest_runtest_logreport(report):
    for entry in _CRITERIA.values():
        if report.nodeid in entry["nodes"]:
            if report.failed:
                entry["failed"] = True
            if report.when == "call":
                entry["ran"] += 1


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        entry = _CRITERIA[number]
        if entry["ran"] < len(entry["nodes"]) and not entry["failed"]:
            status = "NOT RUN"
        else:
            status = "FAIL" if entry["failed"] else "PASS"
        terminalreporter.write_line(f"criterion {number:2d}: {status:7s} {entry['title']}")
