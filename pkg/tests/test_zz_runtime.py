"""Runs last (file name sorts after the others): total suite wall clock."""

import time

from conftest import SESSION_START


def test_criterion_12_suite_wall_clock():
    elapsed = time.monotonic() - SESSION_START
    ok = elapsed < 120.0
    print(f"[{'PASS' if ok else 'FAIL'}] criterion 12: suite wall clock {elapsed:.1f}s < 120s")
    assert ok
