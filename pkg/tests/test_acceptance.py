"""The sixteen acceptance criteria, one test each.

Each run prints a PASS/FAIL line (collected again in the terminal summary)
followed by the individual checks.  NARAYANA_PROFILE=extended switches on
the slower variants.
"""

import pytest

from narayana import acceptance

from conftest import ACCEPTANCE_LINES


@pytest.mark.slow
@pytest.mark.parametrize("number", sorted(acceptance.CHECKS))
def test_criterion(number):
    res = acceptance.run(number)
    ACCEPTANCE_LINES.append(res.line())
    print(res.line())
    for d in res.details:
        print("      " + d)
    for w in res.warnings:
        print("      warning: " + w)
    assert res.passed, "\n".join([res.line()] + res.details)
