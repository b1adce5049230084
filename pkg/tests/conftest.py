"""Shared brute-force helpers that do not touch the package under test."""
from collections import Counter
from math import comb, prod

import pytest


def plain_partitions(n, largest=None):
    """Non-increasing tuples summing to n, by direct recursion."""
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for p in range(min(n, largest), 0, -1):
        for rest in plain_partitions(n - p, p):
            yield (p,) + rest


def colored_count(n, colors):
    """Number of prefabs of n with ``colors(k)`` colors for part k.

    A value with frequency f in b colors can be colored in C(f+b-1, f) ways.
    """
    return sum(prod(comb(f + colors(k) - 1, f) for k, f in Counter(lam).items())
               for lam in plain_partitions(n))


def distinct_count(n):
    return sum(1 for lam in plain_partitions(n) if len(set(lam)) == len(lam))


@pytest.fixture
def brute():
    class Brute:
        partitions = staticmethod(plain_partitions)
        colored = staticmethod(colored_count)
        distinct = staticmethod(distinct_count)
    return Brute


# -- acceptance reporting: one line per criterion in the terminal summary ----

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion checked by this test")


def pytest_runtest_logreport(report):
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    failed = report.failed or (report.when == "call" and not report.passed)
    if report.when == "call" or failed:
        _CRITERIA[marker] = _CRITERIA.get(marker, True) and not failed


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    m = item.get_closest_marker("criterion")
    if m is not None:
        outcome.get_result().criterion = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for (num, title), ok in sorted(_CRITERIA.items()):
        terminalreporter.write_line(f"criterion {num} {'PASS' if ok else 'FAIL'}: {title}")
