import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from genrat import resolution as R
from genrat.algebra import bivariate
from genrat.algebra.bipoly import BiPoly
from genrat.algebra.fields import finite_field, parse_field
from genrat.errors import BudgetExceeded, ReducibleInputError


def _points(h):
    return [(pt.projective(), m) for pt, m in R.singular_points(h)]


def test_smooth_conic_has_no_singular_points(form):
    assert R.singular_points(form("X^2+Y^2-Z^2", "fp:5")) == []


def test_nodal_cubic(form):
    assert _points(form("Y^2*Z-X^2*(X+Z)", "fp:7")) == [("[0:0:1]", 2)]


def test_char2_cuspidal_cubic_is_smooth_at_infinity(form):
    # Y^3 - X^2 Z at p = 2: the Z-partial is X^2, nonzero at [1:0:0].
    h = form("Y^3-X^2*Z", "fp:2")
    assert _points(h) == [("[0:0:1]", 2)]
    assert h.partial("Z").evaluate(1, 0, 0) != 0


def _single_root(f):
    """The tree of the projective closure and its unique root at the origin."""
    tree = R.curve_resolution(f)
    roots = [r for r in tree.roots if tree.nodes[r].center == "[0:0:1]"]
    assert len(roots) == 1
    return tree, roots[0]


@pytest.mark.parametrize("field", ["fp:2", "fp:3", "fp:5", "q"])
def test_cusp_blowup(poly, field):
    tree, r = _single_root(poly("Y^2-X^3", field))
    assert tree.multiplicity_sequence(r) == [2, 1, 1]
    assert R.delta_invariant(tree, r) == 1


def test_node_blowup_separates_branches(poly):
    tree, r = _single_root(poly("X*Y+X^3+Y^3", "fp:5"))
    kids = tree.nodes[r].children
    assert [tree.nodes[c].multiplicity for c in kids] == [1, 1]
    assert R.delta_invariant(tree, r) == 1


def test_tacnode_delta(poly):
    # Y^2 = X^4: two smooth branches with contact 2, delta 2.
    tree, r = _single_root(poly("Y^2-X^4-X^5", "fp:5"))
    assert tree.multiplicity_sequence(r)[:2] == [2, 2]
    assert R.delta_invariant(tree, r) == 2


def test_smooth_germ_delta_is_zero(poly):
    tree = R.curve_resolution(poly("Y-X^2", "fp:5"), include_infinity_smooth=True)
    smooth = [r for r in tree.roots if tree.nodes[r].multiplicity == 1]
    assert smooth and all(R.delta_invariant(tree, r) == 0 for r in smooth)


def test_singular_point_over_extension(poly):
    # Tacnodes at the two conjugate points X = +-i, Y = 0 form one orbit of
    # residue degree 2; Y / (X^2 + 1) parametrizes the curve, so the genus is 0.
    f = poly("Y^2-(X^2+1)^2*(X+1)", "fp:3")
    tree = R.curve_resolution(f)
    affine = [r for r in tree.roots if tree.nodes[r].center.endswith(":1]")]
    assert [tree.nodes[r].residue_degree for r in affine] == [2]
    assert R.geometric_genus(f) == 0


@pytest.mark.parametrize("text,field,genus", [
    ("X^4+Y^4+Z^4", "fp:5", 3),
    ("Y^2*Z-X^2*(X+Z)", "fp:7", 0),
    ("Y^2*Z-X^3-X*Z^2-Z^3", "fp:5", 1),
    ("X^2+Y^2-Z^2", "fp:5", 0),
    ("X^2*Z+Y^3+Z^3", "fp:2", 0),
])
def test_geometric_genus(form, text, field, genus):
    assert R.geometric_genus(form(text, field)) == genus


def test_exotic_fiber_genus_over_f8():
    K = parse_field("fp:2^3")
    for k in range(1, 8):
        lam = K.from_key(k)
        f = BiPoly(K, {(2, 0): K.one, (0, 3): K.one, (0, 0): K.neg(lam)})
        assert R.geometric_genus(f) == 0


def test_genus_rejects_reducible(poly):
    with pytest.raises(ReducibleInputError):
        R.geometric_genus(poly("X^2+Y^2", "fp:3"))


@pytest.mark.parametrize("text,field,places", [
    ("X", "fp:5", 1),
    ("X^2+Y^3+1", "fp:2", 1),
    ("(X^2+Y^3)*Y+1", "fp:2", 2),
    ("X*Y-1", "fp:5", 2),
    ("X^2+Y^2-1", "fp:3", 2),   # conjugate points at infinity over F_9
    ("Y^2-X^3-X", "fp:5", 1),
])
def test_places_at_infinity(poly, text, field, places):
    assert R.count_places_at_infinity(poly(text, field)) == places


def test_irrational_places_are_grouped(poly):
    br = R.places_at_infinity(poly("X^2+Y^2-1", "fp:3"))
    assert [b.residue_degree for b in br] == [2]


def test_node_budget(poly):
    with pytest.raises(BudgetExceeded):
        R.curve_resolution(poly("Y^2-X^9", "fp:5"), node_budget=2)


def test_dot_and_json(poly):
    tree = R.curve_resolution(poly("Y^2-X^3", "fp:5"))
    dot = tree.to_dot("cusp")
    assert dot.startswith("digraph cusp {")
    assert 'n0 [label="m=2 deg=1"];' in dot and "n0 -> n1;" in dot
    js = tree.to_json()
    assert js["roots"][0]["m"] == 2 and js["roots"][0]["children"][0]["m"] == 1


def _random_curve(K, d, rng):
    while True:
        terms = {(i, j): K.random(rng) for i in range(d + 1) for j in range(d + 1 - i)}
        f = BiPoly(K, terms)
        if f.total_degree == d and bivariate.is_absolutely_irreducible(f):
            return f


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 3, 5]), st.integers(2, 4))
def test_genus_is_invariant_under_affine_changes(seed, p, d):
    K = finite_field(p)
    rng = random.Random(seed)
    f = _random_curve(K, d, rng)
    g = R.geometric_genus(f)
    assert 0 <= g <= R.arithmetic_genus(d)
    a, b = K.random(rng), K.random(rng)
    assert R.geometric_genus(f.shift(a, b)) == g
    assert R.geometric_genus(f.swap()) == g
