"""One test per acceptance criterion; each reports a single pass/fail line,
collected in the "acceptance criteria" section of the pytest summary."""

import pytest

from permspectra import acceptance


@pytest.mark.parametrize("number", sorted(acceptance.CRITERIA))
def test_criterion(number, acceptance_line):
    result = acceptance.CRITERIA[number]()
    print(result.line())
    acceptance_line(result.line())
    assert result.checks, "criterion ran no checks"
    assert result.passed, "; ".join(result.failures)
