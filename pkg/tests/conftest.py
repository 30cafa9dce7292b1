import sys

import pytest

from genrat.algebra.bipoly import parse_homogeneous, parse_polynomial
from genrat.algebra.fields import parse_field


@pytest.fixture
def poly():
    """poly("X^2+Y", "fp:5") -> BiPoly."""
    def make(text, field):
        return parse_polynomial(text, parse_field(field))
    return make


@pytest.fixture
def form():
    """form("X^2+Y*Z", "fp:5") -> HomPoly."""
    def make(text, field):
        return parse_homogeneous(text, parse_field(field))
    return make


def pytest_terminal_summary(terminalreporter):
    """Print the acceptance matrix, one line per criterion that ran."""
    module = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(module.RESULTS):
        ok, detail = module.RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
