import pytest

_ACCEPTANCE = {}


@pytest.fixture
def record_criterion():
    """Store one acceptance line; printed in the terminal summary."""
    def record(number, name, passed, detail, seconds, budget):
        status = "PASS" if passed else "FAIL"
        _ACCEPTANCE[number] = f"{status} criterion {number} {name}: {detail} [{seconds:.2f} s / {budget:g} s]"
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        terminalreporter.write_line(_ACCEPTANCE[number])
