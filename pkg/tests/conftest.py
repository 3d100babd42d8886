import time

import pytest

_RESULTS = {}
_START = {}


class AcceptanceLog:
    def __init__(self, number, title):
        self.number = number
        self.title = title
        self.checks = []

    def check(self, label, ok, detail=""):
        self.checks.append((label, bool(ok), detail))
        return bool(ok)

    @property
    def passed(self):
        return bool(self.checks) and all(ok for _, ok, _ in self.checks)


@pytest.fixture
def acceptance(request):
    """Record the sub-checks of one acceptance criterion.

    Use as ``log = acceptance(3, "title")`` and then ``log.check(...)``;
    the summary line is printed at the end of the run whatever happens.
    """
    logs = []

    def make(number, title):
        log = AcceptanceLog(number, title)
        _RESULTS[number] = log
        logs.append(log)
        return log

    yield make


def pytest_sessionstart(session):
    _START["t"] = time.perf_counter()


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_RESULTS):
        log = _RESULTS[number]
        status = "PASS" if log.passed else "FAIL"
        tr.write_line(f"[{status}] {number:2d}. {log.title}")
        for label, ok, detail in log.checks:
            mark = "ok " if ok else "BAD"
            tr.write_line(f"       {mark} {label}" + (f"  ({detail})" if detail else ""))
    tr.write_line(f"wall time {time.perf_counter() - _START.get('t', time.perf_counter()):.1f} s")


RUNTIME_BUDGET = 60.0


@pytest.hookimpl(tryfirst=True)
def pytest_sessionfinish(session, exitstatus):
    log = _RESULTS.get(10)
    if log is None:
        return
    elapsed = time.perf_counter() - _START.get("t", time.perf_counter())
    ok = log.check("total test runtime < 60 s", elapsed < RUNTIME_BUDGET, f"{elapsed:.1f} s")
    if not ok:
        session.exitstatus = 1
