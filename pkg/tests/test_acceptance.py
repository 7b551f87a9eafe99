"""AC1-AC12 at their stated tolerances; one PASS/FAIL line per criterion."""

import pytest

from poset_rainbow.acceptance import CRITERIA


@pytest.mark.parametrize("cid", list(CRITERIA))
def test_criterion(cid, capsys):
    result = CRITERIA[cid]()
    with capsys.disabled():
        print(f"\n{result.line()}")
    assert result.passed, f"{cid}: {result.detail} {result.notes}"
