"""The acceptance gate: one test (and one printed PASS/FAIL line) per
binding criterion, at the pinned runtime budgets.  Each test delegates to
the shared criterion function in :mod:`jfilt.acceptance`, which the CLI
``selftest`` subcommand also runs."""

import time

import pytest

from jfilt.acceptance import CRITERIA

_BUDGETS = {
    1: 10.0,
    2: 10.0,
    3: 30.0,
    4: 120.0,
    5: 10.0,
    6: 60.0,
    7: 120.0,
    8: 30.0,
    9: 120.0,
    10: 120.0,
}


def _run(number):
    _, name, fn = next(c for c in CRITERIA if c[0] == number)
    start = time.time()
    ok, detail = fn(0)
    elapsed = time.time() - start
    status = "PASS" if ok else "FAIL"
    print("CRITERION %2d %s (%.2fs): %s — %s" % (number, status, elapsed, name, detail))
    assert ok, detail
    assert elapsed < _BUDGETS[number], "budget exceeded: %.2fs" % elapsed


def test_criterion_01_degree_one_kernel_rank():
    _run(1)


def test_criterion_02_gap_k2():
    _run(2)


def test_criterion_03_gap_k3_and_k1():
    _run(3)


def test_criterion_04_tree_span():
    _run(4)


def test_criterion_05_sign_calibration():
    _run(5)


def test_criterion_06_longitude_consistency():
    _run(6)


def test_criterion_07_crossed_homomorphism():
    _run(7)


def test_criterion_08_mirror_triviality():
    _run(8)


def test_criterion_09_orientation():
    _run(9)


def test_criterion_10_property_suite():
    _run(10)
