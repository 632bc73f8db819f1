"""Every acceptance criterion at its stated tolerance; one PASS/FAIL line each."""

import pytest

from submodstream.harness.acceptance import AcceptanceSuite

pytestmark = pytest.mark.acceptance


@pytest.fixture(scope="module")
def suite():
    return AcceptanceSuite()


@pytest.mark.parametrize("number", range(1, 13))
def test_criterion(suite, number, capsys):
    result = suite.run(number)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail
