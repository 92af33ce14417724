import os
import sys
import time
from contextlib import contextmanager

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

_ACCEPTANCE = pytest.StashKey[dict]()


@pytest.fixture
def criterion(request):
    """Context manager recording pass/fail and wall time for one acceptance criterion.

    ``extra`` adds time spent elsewhere (a shared fixture) to the measured body.
    A criterion whose time exceeds its budget fails.
    """
    results = request.config.stash.setdefault(_ACCEPTANCE, {})

    @contextmanager
    def run(number, title, budget=None, extra=0.0):
        start = time.perf_counter()
        passed = False
        try:
            yield
            passed = True
        finally:
            elapsed = time.perf_counter() - start + extra
            in_time = budget is None or elapsed < budget
            results[number] = (title, passed and in_time, elapsed, budget)
        assert in_time, f"criterion {number} took {elapsed:.1f}s, budget {budget}s"

    return run


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(_ACCEPTANCE, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        title, passed, elapsed, budget = results[number]
        limit = f", budget {budget:g}s" if budget is not None else ""
        terminalreporter.write_line(
            f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}  ({elapsed:.2f}s{limit})")
