import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

DATA = Path(__file__).resolve().parent.parent / "data"


def pytest_addoption(parser):
    parser.addoption("--big", action="store_true", default=False,
                     help="run the long checks as well")


def pytest_configure(config):
    config.addinivalue_line("markers", "big: long running, needs --big")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--big"):
        return
    skip = pytest.mark.skip(reason="needs --big")
    for item in items:
        if "big" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import LINES
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(LINES, key=lambda s: (int(s.split()[1].rstrip(":").split(".")[0]), s)):
            terminalreporter.write_line(line)


@pytest.fixture
def big(request):
    return request.config.getoption("--big")
