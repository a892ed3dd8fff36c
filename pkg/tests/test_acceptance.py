"""The ten acceptance criteria, one test each; results are also listed in the run summary."""

from __future__ import annotations

import pytest

from conftest import ACCEPTANCE_LINES
from lieforms import regress


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(number):
    result = regress.CRITERIA[number - 1]()
    line = result.line()
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert result.ok, "\n".join(result.failures)
