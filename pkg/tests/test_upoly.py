import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from genrat.algebra import upoly
from genrat.algebra.fields import QQ, finite_field

F5 = finite_field(5)
F4 = finite_field(2, 2)

coeffs5 = st.lists(st.integers(0, 4), min_size=0, max_size=8).map(lambda c: upoly.trim(F5, c))
nonzero5 = coeffs5.filter(lambda c: len(c) > 0)


def _expand(K, factors):
    out = [K.one]
    for g, e in factors:
        out = upoly.mul(K, out, upoly.power(K, g, e))
    return out


@settings(max_examples=100, deadline=None)
@given(coeffs5, nonzero5)
def test_division_identity(a, b):
    q, r = upoly.divmod_(F5, a, b)
    assert upoly.add(F5, upoly.mul(F5, q, b), r) == a
    assert upoly.deg(r) < upoly.deg(b)


@settings(max_examples=100, deadline=None)
@given(nonzero5, nonzero5)
def test_gcd_divides_and_bezout(a, b):
    g, s, t = upoly.xgcd(F5, a, b)
    assert upoly.rem(F5, a, g) == [] and upoly.rem(F5, b, g) == []
    assert upoly.add(F5, upoly.mul(F5, s, a), upoly.mul(F5, t, b)) == g


@settings(max_examples=80, deadline=None)
@given(nonzero5)
def test_factor_reassembles(f):
    unit, factors = upoly.factor(F5, f)
    assert upoly.scale(F5, _expand(F5, factors), unit) == f
    for g, _ in factors:
        assert upoly.is_irreducible(F5, g)
        assert upoly.lc(F5, g) == F5.one


def test_factor_over_extension_of_two():
    # T^4 + T splits over F_4 as T (T + 1) (T + a) (T + a + 1).
    f = [F4.zero, F4.one, F4.zero, F4.zero, F4.one]
    _, factors = upoly.factor(F4, f)
    assert sorted(upoly.deg(g) for g, _ in factors) == [1, 1, 1, 1]
    assert len(upoly.roots(F4, f)) == 4


def test_inseparable_squarefree_decomposition():
    # (T^2 + 1)^2 = T^4 + 1 over F_2: squarefree part T + 1.
    F2 = finite_field(2)
    assert upoly.squarefree_part(F2, [1, 0, 0, 0, 1]) == [1, 1]


def test_irreducible_count_degree_three_over_f5():
    # Gauss: (5^3 - 5) / 3 = 40 monic irreducible cubics.
    count = 0
    for c0 in range(5):
        for c1 in range(5):
            for c2 in range(5):
                if upoly.is_irreducible(F5, [c0, c1, c2, 1]):
                    count += 1
    assert count == 40


def test_rational_factoring():
    from fractions import Fraction
    f = [Fraction(-2), Fraction(0), Fraction(1)]  # T^2 - 2
    assert upoly.is_irreducible(QQ, f)
    g = upoly.mul(QQ, [Fraction(-1), Fraction(1)], [Fraction(1), Fraction(1)])
    assert len(upoly.factor(QQ, g)[1]) == 2


@pytest.mark.parametrize("seed", range(5))
def test_roots_are_roots(seed):
    K = finite_field(3, 3)
    rng = random.Random(seed)
    f = upoly.trim(K, [K.random(rng) for _ in range(7)])
    if not f:
        return
    for r in upoly.roots(K, f):
        assert upoly.evaluate(K, f, r) == K.zero
