import pytest


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="run the degree-7 sweep and other multi-minute tests")
    parser.addoption("--runlong", action="store_true", default=False,
                     help="run full-scale jobs (hours to days)")


def pytest_collection_modifyitems(config, items):
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    skip_long = pytest.mark.skip(reason="needs --runlong")
    for item in items:
        if "slow" in item.keywords and not config.getoption("--runslow"):
            item.add_marker(skip_slow)
        if "longrun" in item.keywords and not config.getoption("--runlong"):
            item.add_marker(skip_long)


# acceptance criteria report lines, filled in by test_acceptance.py
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(ACCEPTANCE_LINES, key=lambda t: t[0]):
        terminalreporter.write_line(line)
