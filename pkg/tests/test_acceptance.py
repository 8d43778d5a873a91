"""Acceptance gate: every criterion at full scope, one pass/fail line each.

Run with ``pytest -s tests/test_acceptance.py`` to watch the per-criterion
lines; the same checks back the ``permuto selftest --level full`` command.
"""

import time

import pytest

from permuto import selftest

SEED = 101


@pytest.mark.parametrize("name,fn", selftest.CRITERIA, ids=[n for n, _ in selftest.CRITERIA])
def test_criterion(name, fn):
    t0 = time.time()
    ok, detail = fn(SEED, "full")
    line = f"criterion {name}: {'pass' if ok else 'FAIL'} ({time.time() - t0:.2f}s) {detail}"
    print(line)
    assert ok, line
