"""Runs the nine acceptance criteria; one PASS/FAIL line each."""

import pytest

from quasimap import acceptance


@pytest.mark.parametrize("number", [c[0] for c in acceptance.CHECKS])
def test_criterion(number, capsys):
    r = acceptance.run_check(number)
    with capsys.disabled():
        print("\n" + r.line())
    assert r.passed, r.line()
