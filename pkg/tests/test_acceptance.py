import pytest

from gl3ext.acceptance import CHECKS, run_check


@pytest.mark.parametrize("number", sorted(CHECKS))
def test_criterion(number, capsys):
    r = run_check(number)
    with capsys.disabled():
        print("\n" + r.line())
    assert r.ok, r.detail
    assert r.seconds < r.budget, f"{r.seconds:.1f}s over the {r.budget:.0f}s budget"
