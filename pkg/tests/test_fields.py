import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from genrat.algebra.fields import (QQ, extend_field, finite_embedding, finite_field,
                                   minimal_polynomial, parse_field)
from genrat.algebra import upoly
from genrat.errors import ParseError

# Exercise every representation: Zech tables, carry-less (p = 2) and packed slots.
REPRESENTATIVE = [(2, 1), (5, 1), (3, 2), (2, 6), (3, 6), (2, 21), (3, 13)]


def _mult_order(K, a):
    n, x = 1, a
    while x != K.one:
        x = K.mul(x, a)
        n += 1
    return n


@pytest.mark.parametrize("text,q", [("fp:2", 2), ("fp:5", 5), ("fp:3^2", 9), ("fp:2^6", 64)])
def test_parse_field(text, q):
    K = parse_field(text)
    assert K.q == q
    assert K.descriptor == text


def test_parse_rationals():
    assert parse_field("q") is QQ


@pytest.mark.parametrize("text", ["fp:4", "fp:9", "fp:2^0", "fp:x", "r", "fp:"])
def test_parse_field_rejects(text):
    with pytest.raises(ParseError):
        parse_field(text)


def test_extend_prime_field_by_three():
    L, emb = extend_field(parse_field("fp:2"), 3)
    assert L.q == 8
    assert emb(0) == L.zero and emb(1) == L.one


def test_extend_by_one_is_identity():
    K = parse_field("fp:5")
    L, emb = extend_field(K, 1)
    assert L is K and emb.is_identity


def test_extend_f9_to_f81_preserves_orders():
    # Brute force: the image of every element has the same multiplicative order.
    K = parse_field("fp:3^2")
    L, emb = extend_field(K, 2)
    assert L.q == 81
    orders = {}
    for a in K.nonzero_elements():
        o = _mult_order(K, a)
        assert _mult_order(L, emb(a)) == o
        assert 80 % o == 0
        orders[o] = orders.get(o, 0) + 1
    assert orders[8] == 4  # phi(8) generators of the cyclic group of order 8


@pytest.mark.parametrize("p,n", REPRESENTATIVE)
def test_field_axioms_sample(p, n):
    import random
    K = finite_field(p, n)
    rng = random.Random(p * 100 + n)
    for _ in range(30):
        a, b, c = K.random(rng), K.random(rng), K.random(rng)
        assert K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c))
        assert K.add(K.sub(a, b), b) == a
        if a != K.zero:
            assert K.mul(a, K.inv(a)) == K.one
        assert K.pow(a, K.q) == a
        assert K.pth_root(K.pow(a, p)) == a


@pytest.mark.parametrize("p,n", [(2, 4), (3, 3), (5, 2)])
def test_vector_round_trip(p, n):
    K = finite_field(p, n)
    for a in K.elements():
        assert K.from_vec(K.to_vec(a)) == a
        assert K.from_key(K.key(a)) == a


@pytest.mark.parametrize("src,dst", [((2, 2), (2, 6)), ((3, 1), (3, 4)), ((2, 3), (2, 6))])
def test_finite_embedding_is_a_homomorphism(src, dst):
    K, L = finite_field(*src), finite_field(*dst)
    emb = finite_embedding(K, L)
    for a in K.elements():
        for b in K.elements():
            assert emb(K.mul(a, b)) == L.mul(emb(a), emb(b))
            assert emb(K.add(a, b)) == L.add(emb(a), emb(b))
        assert emb.preimage(emb(a)) == a


def test_minimal_polynomial_annihilates():
    L = finite_field(2, 6)
    F = L.prime_field
    e = finite_embedding(F, L)
    for a in list(L.elements())[:20]:
        m = minimal_polynomial(L, a)
        assert upoly.evaluate(L, [e(c) for c in m], a) == L.zero
        assert upoly.is_irreducible(F, m)
        assert 6 % upoly.deg(m) == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**21 - 1), st.integers(0, 2**21 - 1))
def test_large_binary_field_frobenius_is_additive(i, j):
    K = finite_field(2, 21)
    a, b = K.from_key(i), K.from_key(j)
    assert K.frobenius(K.add(a, b)) == K.add(K.frobenius(a), K.frobenius(b))
    assert K.frobenius(K.mul(a, b)) == K.mul(K.frobenius(a), K.frobenius(b))


def test_rationals_arithmetic():
    from fractions import Fraction
    assert QQ.div(QQ.from_int(1), QQ.from_int(3)) == Fraction(1, 3)
    assert QQ.characteristic == 0
