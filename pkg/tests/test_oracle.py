import pytest

from genrat import oracle, resolution
from genrat.algebra.fields import parse_field
from genrat.errors import BudgetExceeded, PreconditionError, UnsupportedError


def test_graph_parametrization(poly):
    F = poly("X^2-Y", "fp:3")
    par = oracle.parametrization_search(F, 0)
    assert par is not None
    assert par.to_json(F.K) == {"x": "T", "y": "T^2", "z": "1", "degreeBound": 3}


def test_exotic_fiber_is_rational(poly):
    F = poly("X^2+Y^3", "fp:2")
    par = oracle.parametrization_search(F, 1)
    assert par is not None
    assert oracle._verify(F.add_const(1), par.x, par.y, par.z)


def test_elliptic_fiber_has_no_parametrization(poly):
    assert oracle.parametrization_search(poly("Y^2-X^3-X", "fp:5"), 0) is None


def test_search_rejects_reducible_fiber(poly):
    with pytest.raises(PreconditionError):
        oracle.parametrization_search(poly("X*Y", "fp:5"), 0)


def test_search_needs_finite_field(poly):
    with pytest.raises(UnsupportedError):
        oracle.parametrization_search(poly("X^2-Y", "q"), 0)


def test_search_budget(poly):
    with pytest.raises(BudgetExceeded):
        oracle.parametrization_search(poly("Y^2-X^3-X", "fp:5"), 0, budget=10)


def test_conic_point_count(form):
    h = form("X^2+Y^2-Z^2", "fp:5")
    assert oracle.count_points(h, parse_field("fp:5")) == 6
    assert oracle.point_count_genus(h, 2) == 0


def test_elliptic_point_count(form):
    h = form("Y^2*Z-X^3-X*Z^2-Z^3", "fp:5")
    assert oracle.point_count_genus(h, 2) == 1


def test_quartic_point_count(form):
    h = form("X^4+Y^4+Z^4", "fp:5")
    assert oracle.point_count_genus(h, 3) == 3


def test_point_count_needs_enough_extensions(form):
    # Genus 3 cannot be certified from counts over F_5 alone.
    assert oracle.point_count_genus(form("X^4+Y^4+Z^4", "fp:5"), 1) is None


def test_point_count_rejects_singular(form):
    with pytest.raises(PreconditionError):
        oracle.point_count_genus(form("Y^2*Z-X^2*(X+Z)", "fp:7"), 2)


@pytest.mark.parametrize("text,field,ext,entries", [
    ("X*Y", "fp:5", 2, [{"lambda": "0", "minimalField": "fp:5", "n": 2}]),
    ("X", "fp:2", 3, []),
    ("X*Y", "fp:3", 1, [{"lambda": "0", "minimalField": "fp:3", "n": 2}]),
    ("X*(Y^2+Y+1)+Y", "fp:2", 2, [{"lambda": "a", "minimalField": "fp:2^2", "n": 2},
                                  {"lambda": "a+1", "minimalField": "fp:2^2", "n": 2}]),
])
def test_brute_spectrum(poly, text, field, ext, entries):
    assert [e.to_json() for e in oracle.brute_spectrum(poly(text, field), ext)] == entries


def test_brute_spectrum_misses_values_outside_extension(poly):
    assert oracle.brute_spectrum(poly("X*(Y^2+Y+1)+Y", "fp:2"), 1) == []


def test_genus_engines_agree_on_fermat_cubic(form):
    h = form("X^3+Y^3+Z^3", "fp:5")
    assert oracle.point_count_genus(h, 2) == resolution.geometric_genus(h) == 1
