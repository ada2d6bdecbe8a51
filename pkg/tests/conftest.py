import pytest

_LINES = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion.

    The line is written from the test outcome, so it is FAIL whenever the test
    body raises, whatever the test itself managed to note.
    """
    notes = []
    yield notes.append
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    label = request.node.function.__doc__.strip().splitlines()[0]
    detail = "; ".join(notes)
    _LINES.append(f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  [{detail}]" if detail else ""))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
