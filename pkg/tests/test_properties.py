"""Property tests for the invariants that tie the engines together."""

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from genrat import classify, oracle, pencil
from genrat.algebra import bivariate
from genrat.algebra.bipoly import BiPoly
from genrat.algebra.fields import QQ, finite_embedding, finite_field

PROPERTY = settings(max_examples=30, deadline=None,
                    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
CONFIG = classify.Config()


@st.composite
def polynomials(draw, primes=(2, 3), max_degree=4, rationals=False):
    K = QQ if rationals else finite_field(draw(st.sampled_from(primes)))
    d = draw(st.integers(1, max_degree))
    monomials = [(i, j) for i in range(d + 1) for j in range(d + 1 - i)]
    support = draw(st.lists(st.sampled_from(monomials), min_size=1, max_size=6, unique=True))
    if rationals:
        coeffs = draw(st.lists(st.integers(-3, 3), min_size=len(support), max_size=len(support)))
        terms = {m: QQ.from_int(c) for m, c in zip(support, coeffs)}
    else:
        p = K.characteristic
        coeffs = draw(st.lists(st.integers(1, p - 1), min_size=len(support),
                               max_size=len(support)))
        terms = {m: K.from_int(c) for m, c in zip(support, coeffs)}
    F = BiPoly(K, terms)
    assume(not F.is_constant())
    return F


def _generally_rational(F):
    r = classify.classify(F, CONFIG)
    assume(r.generally_rational is True and not r.inconclusive)
    return r


@PROPERTY
@given(polynomials(max_degree=4))
def test_separable_degrees_count_general_fiber_places(F):
    r = classify.classify(F, CONFIG)
    assume(not r.composite and r.general_fiber_places is not None)
    assert r.diagnostics["separableDegreeSum"] == r.general_fiber_places


@PROPERTY
@given(polynomials(max_degree=4))
def test_theorem_identity_on_generally_rational(F):
    r = _generally_rational(F)
    assert r.theorem111["holds"] is True


@PROPERTY
@given(polynomials(max_degree=4))
def test_reducible_fibers_respect_stein_bound(F):
    assume(not pencil.is_composite(F))
    spectrum = pencil.reducible_fiber_spectrum(F)
    assume(spectrum.conclusive)
    assert spectrum.total <= F.total_degree - 1


@PROPERTY
@given(polynomials(primes=(2, 3), max_degree=3))
def test_frobenius_invariance(F):
    p = F.K.characteristic
    a = classify.classify(F, CONFIG)
    b = classify.classify(F ** p, CONFIG)
    assert (a.pfg, a.good_pfg) == (b.pfg, b.good_pfg)
    assert [d.to_json() for d in a.dicriticals] == [d.to_json() for d in b.dicriticals]
    assert b.in_ap and b.generally_rational in (False, None)


@PROPERTY
@given(polynomials(primes=(2, 3, 5), max_degree=5))
def test_implication_lattice(F):
    r = classify.classify(F, classify.Config(spectrum=False))
    implies = [
        (r.field_generator, r.generally_rational),
        (r.line_fibers, r.polynomial_curve_fibers),
        (r.polynomial_curve_fibers, r.generally_rational),
        (r.variable, r.field_generator),
        (r.variable, r.line_fibers),
        (r.generally_rational, r.pfg),
    ]
    for a, b in implies:
        assert not (a is True and b is False)
    if r.field_generator and r.polynomial_curve_fibers:
        assert r.variable is True


@PROPERTY
@given(polynomials(primes=(5,), max_degree=5))
def test_field_generator_routes_agree(F):
    r = classify.classify(F, classify.Config(spectrum=False))
    assume(not r.inconclusive)
    # Route 1: sampled fiber genus (curve resolutions of single fibers).
    moving = r.moving_singularities
    route_sampled = classify._and(r.generally_rational, None if moving is None else not moving)
    # Route 2: the base point resolution of the pencil and fiber factoring.
    H, e = bivariate.strip_pth_powers(F)
    if e > 0 or pencil.is_composite(H):
        route_pencil = False
    else:
        res = pencil.base_point_resolution(H)
        route_pencil = pencil.pencil_genus(res, H.total_degree) == 0
    assert route_sampled is route_pencil


@settings(max_examples=15, deadline=None,
          suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
@given(polynomials(max_degree=3, rationals=True))
def test_characteristic_zero_pfg_is_field_generator(F):
    r = classify.classify(F, CONFIG)
    assume(not r.inconclusive)
    assert classify.characteristic_zero_consistent(r)
    assert r.moving_singularities in (False, None)


@PROPERTY
@given(polynomials(primes=(2, 3), max_degree=3))
def test_brute_spectrum_matches_engine_over_small_extensions(F):
    assume(not pencil.is_composite(F))
    spectrum = pencil.reducible_fiber_spectrum(F)
    assume(spectrum.conclusive)
    ext = 2
    brute = {(e.lam, e.minimal_field, e.n) for e in oracle.brute_spectrum(F, ext)}
    visible = set()
    for e in spectrum.entries:
        k = int(e.minimal_field.split("^")[1]) if "^" in e.minimal_field else 1
        if ext % k == 0:
            visible.add((e.lam, e.minimal_field, e.n))
    assert brute == visible


@PROPERTY
@given(polynomials(primes=(2, 3), max_degree=3), st.sampled_from([2, 3]))
def test_booleans_stable_under_base_change(F, k):
    p = F.K.characteristic
    L = finite_field(p, k)
    FL = F.map_coeffs(finite_embedding(F.K, L))
    a = classify.classify(F, CONFIG).to_json()
    b = classify.classify(FL, CONFIG).to_json()
    for key, value in a.items():
        if isinstance(value, bool):
            assert b[key] == value, key
