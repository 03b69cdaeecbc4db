from pathlib import Path

import pytest

from preempt_inbox.sched.runqueue import CRunQueue, PyRunQueue

FIXTURES = Path(__file__).parent / "fixtures"

BACKENDS = [pytest.param(PyRunQueue, id="python")]
if CRunQueue is not None:
    BACKENDS.append(pytest.param(CRunQueue, id="cython"))


@pytest.fixture(params=BACKENDS)
def queue_cls(request):
    return request.param


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(cid, title): acceptance criterion")
    config._criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call" and not rep.failed:
        return
    cid, title = marker.args
    results = item.config._criteria.setdefault(cid, [title, True])
    results[1] = results[1] and rep.passed


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not config._criteria:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(config._criteria, key=lambda c: int(c[1:])):
        title, ok = config._criteria[cid]
        terminalreporter.write_line(f"{cid} {'PASS' if ok else 'FAIL'}  {title}")
