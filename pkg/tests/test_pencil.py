import pytest

from genrat import pencil
from genrat.errors import PreconditionError


def _res(poly, text, field):
    F = poly(text, field)
    return F, pencil.base_point_resolution(F)


def _centers(res):
    return [res.tree.nodes[b.node_id].center for b in res.base_points]


def test_coordinate_pencil(poly):
    F, res = _res(poly, "X", "fp:5")
    assert _centers(res) == ["[0:1:0]"]
    assert [b.mu for b in res.base_points] == [1]
    assert len(res.horizontal) == 1
    assert pencil.pencil_genus(res, 1) == 0


def test_hyperbola_pencil(poly):
    # a XY + b Z^2: at [1:0:0] the members y and z^2 are tangent, so each
    # proper base point carries one infinitely near base point (4 = 2^2).
    F, res = _res(poly, "X*Y", "fp:5")
    proper = [c for c in _centers(res) if c.startswith("[")]
    assert proper == ["[1:0:0]", "[0:1:0]"]
    assert sum(b.weight * b.mu ** 2 for b in res.base_points) == 4
    assert len(res.horizontal) == 2
    assert pencil.pencil_genus(res, 2) == 0


@pytest.mark.parametrize("p", [2, 3])
def test_exotic_fibers_pencil_genus(poly, p):
    # At [1:0:0] the members z + y^(p+1) and z^(p+1) meet with multiplicity
    # (p+1)^2 along a chain of smooth base points: g = p(p-1)/2.
    F, res = _res(poly, f"X^{p}+Y^{p + 1}", f"fp:{p}")
    assert all(b.mu == 1 for b in res.base_points)
    assert len(res.base_points) == (p + 1) ** 2
    assert pencil.pencil_genus(res, p + 1) == p * (p - 1) // 2


def test_exotic_line_pencil_genus(poly):
    F, res = _res(poly, "X^4+Y^6+Y", "fp:2")
    assert [b.mu for b in res.base_points] == [2] * 9
    assert pencil.pencil_genus(res, 6) == 1


def test_dicriticals_of_coordinate(poly):
    F, res = _res(poly, "X", "fp:5")
    assert [d.to_json() for d in pencil.dicriticals(res)] == [
        {"degree": 1, "separableDegree": 1, "purelyInseparable": True}]


def test_dicriticals_of_hyperbola(poly):
    F, res = _res(poly, "X*Y", "fp:5")
    assert [d.degree for d in pencil.dicriticals(res)] == [1, 1]


def test_two_dicriticals_p2(poly):
    F, res = _res(poly, "(X^2+Y^3)*Y", "fp:2")
    dics = pencil.dicriticals(res)
    assert len(dics) == 2
    assert any(d.purely_inseparable for d in dics)


def test_exotic_line_dicritical_is_inseparable(poly):
    F, res = _res(poly, "X^4+Y^6+Y", "fp:2")
    (d,) = pencil.dicriticals(res)
    assert (d.degree, d.separable_degree, d.purely_inseparable) == (2, 1, True)


def test_separability_of_restriction():
    from genrat.algebra.fields import finite_field
    K = finite_field(3)
    # T^3 / (T + 1)^3 is purely inseparable of degree 3; T^2 is separable.
    assert pencil.separability(K, [0, 0, 0, 1], [1, 0, 0, 1]) == (3, 1)
    assert pencil.separability(K, [0, 0, 1], [1]) == (2, 2)


@pytest.mark.parametrize("text,field,expected", [
    ("X^2", "fp:5", True),
    ("X*Y", "fp:5", False),
    ("X^4+Y^6+Y", "fp:2", False),
    ("(X+Y)^3+(X+Y)", "fp:5", True),
    ("X*Y*(X*Y+1)", "fp:3", True),
    ("X^2+Y^2", "q", False),
])
def test_is_composite(poly, text, field, expected):
    assert pencil.is_composite(poly(text, field)) is expected


def test_hyperbola_fibers_are_irreducible_off_zero(poly):
    # XY - lambda for lambda != 0 over F_25: exhaustive irreducibility check.
    from genrat.algebra.fields import parse_field
    from genrat.algebra.bipoly import BiPoly
    K = parse_field("fp:5^2")
    F = BiPoly(K, {(1, 1): K.one})
    for lam in K.nonzero_elements():
        assert not pencil.fiber_is_reducible(F, lam)
    assert pencil.fiber_is_reducible(F, K.zero)


def test_composite_pencil_rejected(poly):
    with pytest.raises(PreconditionError):
        pencil.base_point_resolution(poly("(X+Y)^2", "fp:5"))


@pytest.mark.parametrize("text,field,entries", [
    ("X*Y", "fp:5", [{"lambda": "0", "minimalField": "fp:5", "n": 2}]),
    ("X", "fp:5", []),
    ("X^2*Y", "fp:3", [{"lambda": "0", "minimalField": "fp:3", "n": 2}]),
    ("(X^2+Y^3)*Y", "fp:2", [{"lambda": "0", "minimalField": "fp:2", "n": 2}]),
    ("X*Y", "q", [{"lambda": "0", "minimalField": "q", "n": 2}]),
    ("X^2+Y^3", "fp:2", []),
])
def test_spectrum(poly, text, field, entries):
    spectrum = pencil.reducible_fiber_spectrum(poly(text, field))
    assert spectrum.conclusive
    assert [e.to_json() for e in spectrum.entries] == entries


def test_spectrum_with_conjugate_values(poly):
    # X (Y^2 + Y + 1) + Y - lambda contains the line Y = lambda exactly when
    # lambda is a root of T^2 + T + 1, so the values are the two elements of
    # F_4 outside F_2, each with two components.
    F = poly("X*(Y^2+Y+1)+Y", "fp:2")
    spectrum = pencil.reducible_fiber_spectrum(F)
    assert spectrum.conclusive
    assert [e.to_json() for e in spectrum.entries] == [
        {"lambda": "a", "minimalField": "fp:2^2", "n": 2},
        {"lambda": "a+1", "minimalField": "fp:2^2", "n": 2}]


def test_spectrum_counts_geometric_components(poly):
    # Y^2 + Y + 1 splits into two lines over F_4, so X (Y^2 + Y + 1) has n = 3.
    spectrum = pencil.reducible_fiber_spectrum(poly("X*(Y^2+Y+1)", "fp:2"))
    assert [(e.lam, e.n, e.minimal_field) for e in spectrum.entries] == [("0", 3, "fp:2")]


@pytest.mark.parametrize("text,field,genus", [
    ("X", "fp:5", 0),
    ("X^2+Y^3", "fp:2", 0),
    ("Y^2-X^3-X", "fp:5", 1),
    ("X^4+Y^4", "fp:5", 3),
])
def test_generic_fiber_genus(poly, text, field, genus):
    sample = pencil.generic_fiber_genus(poly(text, field))
    assert not sample.ambiguous
    assert sample.genus == genus


def test_generic_fiber_genus_records_seed(poly):
    a = pencil.generic_fiber_genus(poly("X^2+Y^3", "fp:2"), seed=7).to_json()
    b = pencil.generic_fiber_genus(poly("X^2+Y^3", "fp:2"), seed=7).to_json()
    assert a == b and a["seed"] == 7


def test_too_few_samples(poly):
    with pytest.raises(PreconditionError):
        pencil.generic_fiber_genus(poly("X^2+Y^3", "fp:2"), samples=3)


@pytest.mark.parametrize("text,field,expected", [
    ("X^2+Y^3", "fp:2", True),
    ("X^3+Y^4", "fp:3", True),
    ("X^4+Y^6+Y", "fp:2", False),
    ("X", "fp:5", False),
    ("X^2*Y", "fp:3", False),
])
def test_moving_singularities_at_finite_distance(poly, text, field, expected):
    assert pencil.moving_singularities_at_finite_distance(poly(text, field)) is expected


def test_has_moving_singularities():
    assert pencil.has_moving_singularities(0, 0) is False
    assert pencil.has_moving_singularities(0, 1) is True


def test_critical_locus_rejects_pth_power(poly):
    with pytest.raises(PreconditionError):
        pencil.critical_locus(poly("X^2+Y^2", "fp:2"))
