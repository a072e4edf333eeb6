"""The theorem suite must notice when a predicate is wrong."""

import pytest

from spcls import suite
from spcls.core import validate_closure_space
from spcls.generate import all_closure_spaces

SPACES = [cs for n in range(4) for cs in all_closure_spaces(n)]


def test_clean_run():
    result = suite.run_suite(SPACES)
    assert result.instances == 51 and result.failures == []
    assert all(line.endswith("PASS") for line in suite.describe(result))


@pytest.mark.parametrize(
    "target, replacement, check",
    [
        ("ssr", lambda sps, a, b: True, "a"),
        ("is_clopen", lambda cs, a: False, "b"),
        ("atomistic_conditions", lambda sps: (True, False, True), "d"),
        ("is_topology", lambda cs: False, "e"),
        ("is_pure_nonclassical", lambda sps: False, "g"),
    ],
)
def test_sabotage_is_reported(monkeypatch, target, replacement, check):
    monkeypatch.setattr(suite, target, replacement)
    result = suite.run_suite(SPACES)
    assert result.failed(check)
    assert any(line.startswith(f"({check})") and "FAIL" in line
               for line in suite.describe(result))


def test_findings_are_counted():
    eta = validate_closure_space(
        "pqrsu",
        [[], ["p"], ["u"], ["p", "q"], ["p", "u"], ["r", "s"], ["p", "q", "u"],
         ["p", "r", "s", "u"], list("pqrsu")],
    )
    result = suite.check_space(eta)
    assert result.failures == []
    assert result.findings["eta-well-defined"] > 0
