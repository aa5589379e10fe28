from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bfcheck.catalogs import catalog_sweep, default_manifest_path, read_manifest  # noqa: E402

_CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    num, title = marker.args
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        verdict = "PASS" if rep.passed else "FAIL"
        _CRITERIA[num] = (verdict, title)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        verdict, title = _CRITERIA[num]
        terminalreporter.write_line(f"criterion {num}: {verdict}  {title}")


@pytest.fixture(scope="session")
def catalog_specs() -> list[str]:
    return [e.text for e in read_manifest(default_manifest_path())]


@pytest.fixture(scope="session")
def default_sweep(catalog_specs):
    """Reports for the bundled catalog, computed once per session."""
    results = catalog_sweep(catalog_specs, base_dir=default_manifest_path().parent)
    return results
