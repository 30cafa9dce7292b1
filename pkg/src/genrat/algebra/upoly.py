"""Dense univariate polynomials over an arbitrary exact field.

A polynomial is a list of coefficients, lowest degree first, with no
trailing zeros; ``[]`` is the zero polynomial.  Every function takes the
coefficient field ``K`` as first argument; ``K`` provides ``zero``, ``one``
and the arithmetic methods ``add``, ``sub``, ``neg``, ``mul``, ``inv``.
"""

import random


def trim(K, a):
    z = K.zero
    n = len(a)
    while n and a[n - 1] == z:
        n -= 1
    if n != len(a):
        a = a[:n]
    return a


def deg(a):
    return len(a) - 1


def lc(K, a):
    return a[-1] if a else K.zero


def const(K, c):
    return [] if c == K.zero else [c]


def x_pow(K, n):
    return [K.zero] * n + [K.one]


def add(K, a, b):
    if len(a) < len(b):
        a, b = b, a
    kadd = K.add
    out = list(a)
    for i, c in enumerate(b):
        out[i] = kadd(out[i], c)
    return trim(K, out)


def neg(K, a):
    kneg = K.neg
    return [kneg(c) for c in a]


def sub(K, a, b):
    ksub = K.sub
    kneg = K.neg
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        if i < len(a):
            out.append(ksub(a[i], b[i]) if i < len(b) else a[i])
        else:
            out.append(kneg(b[i]))
    return trim(K, out)


def scale(K, a, c):
    if c == K.zero:
        return []
    kmul = K.mul
    return trim(K, [kmul(x, c) for x in a])


def shift_up(K, a, n):
    """Multiply by x**n."""
    if not a:
        return []
    return [K.zero] * n + list(a)


def mul(K, a, b):
    if not a or not b:
        return []
    kadd, kmul, z = K.add, K.mul, K.zero
    out = [z] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == z:
            continue
        for j, y in enumerate(b):
            if y != z:
                out[i + j] = kadd(out[i + j], kmul(x, y))
    return trim(K, out)


def divmod_(K, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], list(a)
    ksub, kmul, z = K.sub, K.mul, K.zero
    inv_lc = K.inv(b[-1])
    r = list(a)
    db = len(b) - 1
    q = [z] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i]
        if c == z:
            continue
        c = kmul(c, inv_lc)
        q[i - db] = c
        for j in range(db + 1):
            if b[j] != z:
                r[i - db + j] = ksub(r[i - db + j], kmul(c, b[j]))
    return trim(K, q), trim(K, r[:db])


def rem(K, a, b):
    return divmod_(K, a, b)[1]


def quo(K, a, b):
    return divmod_(K, a, b)[0]


def exact_quo(K, a, b):
    q, r = divmod_(K, a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def monic(K, a):
    if not a or a[-1] == K.one:
        return list(a)
    return scale(K, a, K.inv(a[-1]))


def gcd(K, a, b):
    """Monic gcd; gcd(0, 0) = 0."""
    while b:
        a, b = b, rem(K, a, b)
    return monic(K, a)


def xgcd(K, a, b):
    """Return (g, s, t) with g = s*a + t*b monic."""
    r0, r1 = list(a), list(b)
    s0, s1 = [K.one], []
    t0, t1 = [], [K.one]
    while r1:
        q, r = divmod_(K, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(K, s0, mul(K, q, s1))
        t0, t1 = t1, sub(K, t0, mul(K, q, t1))
    if not r0:
        return [], [], []
    c = K.inv(r0[-1])
    return scale(K, r0, c), scale(K, s0, c), scale(K, t0, c)


def invmod(K, a, m):
    g, s, _ = xgcd(K, a, m)
    if g != [K.one]:
        raise ZeroDivisionError("not invertible modulo")
    return rem(K, s, m)


def deriv(K, a):
    fi = K.from_int
    kmul = K.mul
    return trim(K, [kmul(fi(i), a[i]) for i in range(1, len(a))])


def evaluate(K, a, x):
    kadd, kmul = K.add, K.mul
    acc = K.zero
    for c in reversed(a):
        acc = kadd(kmul(acc, x), c)
    return acc


def taylor_shift(K, a, c):
    """Return a(x + c)."""
    if c == K.zero or len(a) <= 1:
        return list(a)
    out = list(a)
    kadd, kmul = K.add, K.mul
    n = len(out)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            out[j] = kadd(out[j], kmul(c, out[j + 1]))
    return trim(K, out)


def compose(K, a, b):
    """Return a(b(x))."""
    out = []
    for c in reversed(a):
        out = add(K, mul(K, out, b), const(K, c))
    return out


def powmod(K, a, e, m):
    result = [K.one]
    base = rem(K, a, m)
    while e:
        if e & 1:
            result = rem(K, mul(K, result, base), m)
        e >>= 1
        if e:
            base = rem(K, mul(K, base, base), m)
    return result


def power(K, a, e):
    result = [K.one]
    base = list(a)
    while e:
        if e & 1:
            result = mul(K, result, base)
        e >>= 1
        if e:
            base = mul(K, base, base)
    return result


def map_coeffs(K2, a, fn):
    return trim(K2, [fn(c) for c in a])


def key(K, a):
    """Deterministic sort key: degree, then coefficients from the top."""
    return (len(a), tuple(K.key(c) for c in reversed(a)))


# ---------------------------------------------------------------- char p helpers

def pth_root(K, a):
    """p-th root of a polynomial all of whose exponents are divisible by p."""
    p = K.characteristic
    out = []
    for i, c in enumerate(a):
        if c != K.zero:
            if i % p:
                raise ValueError("not a p-th power")
        if i % p == 0:
            out.append(K.pth_root(c))
    return trim(K, out)


def squarefree_decomposition(K, f):
    """Return [(g, e), ...] with f = lc * prod g**e, g monic squarefree, coprime."""
    f = monic(K, f)
    if len(f) <= 1:
        return []
    res = {}

    def put(g, e):
        if len(g) > 1:
            k = tuple(g)
            res[k] = res.get(k, 0) + e

    c = gcd(K, f, deriv(K, f))
    w = exact_quo(K, f, c)
    i = 1
    while len(w) > 1:
        y = gcd(K, w, c)
        put(exact_quo(K, w, y), i)
        w = y
        c = exact_quo(K, c, y)
        i += 1
    if len(c) > 1:
        p = K.characteristic
        for g, e in squarefree_decomposition(K, pth_root(K, c)):
            put(g, e * p)
    return [(list(g), e) for g, e in res.items()]


def squarefree_part(K, f):
    out = [K.one]
    for g, _ in squarefree_decomposition(K, f):
        out = mul(K, out, g)
    return out


def is_squarefree(K, f):
    if len(f) <= 1:
        return True
    return len(gcd(K, f, deriv(K, f))) == 1


# ---------------------------------------------------------------- finite fields

def _random_poly(K, n, rng):
    return trim(K, [K.random(rng) for _ in range(n)])


def distinct_degree(K, f):
    """f monic squarefree over F_q; return [(g_i, i)] with g_i product of degree-i factors."""
    q = K.q
    res = []
    fstar = list(f)
    x = [K.zero, K.one]
    h = rem(K, x, fstar)
    i = 1
    while len(fstar) - 1 >= 2 * i:
        h = powmod(K, h, q, fstar)
        g = gcd(K, fstar, sub(K, h, x))
        if len(g) > 1:
            res.append((g, i))
            fstar = exact_quo(K, fstar, g)
            h = rem(K, h, fstar)
        i += 1
    if len(fstar) > 1:
        res.append((fstar, len(fstar) - 1))
    return res


def equal_degree(K, f, d, rng):
    """Split monic squarefree f, all of whose irreducible factors have degree d."""
    n = len(f) - 1
    if n == d:
        return [f]
    r = n // d
    q = K.q
    factors = [f]
    while len(factors) < r:
        a = _random_poly(K, n, rng)
        if len(a) <= 1:
            continue
        if K.characteristic == 2:
            # trace map from F_{q^d} down to F_2
            m = K.degree * d
            t = rem(K, a, f)
            acc = list(t)
            for _ in range(m - 1):
                t = rem(K, mul(K, t, t), f)
                acc = add(K, acc, t)
            g = acc
        else:
            g = sub(K, powmod(K, a, (q ** d - 1) // 2, f), [K.one])
        new = []
        for u in factors:
            if len(u) - 1 == d:
                new.append(u)
                continue
            h = gcd(K, u, g)
            if 1 < len(h) < len(u):
                new.append(h)
                new.append(exact_quo(K, u, h))
            else:
                new.append(u)
        factors = new
    return [monic(K, u) for u in factors]


def _rng_for(f):
    # seeded per call; outputs are canonically sorted so the seed only affects speed
    return random.Random(len(f) * 7919 + 17)


def factor_squarefree_finite(K, f):
    f = monic(K, f)
    rng = _rng_for(f)
    out = []
    for g, d in distinct_degree(K, f):
        out.extend(equal_degree(K, g, d, rng))
    return out


def roots_finite(K, f):
    """Distinct roots in K of f (nonzero) over a finite field."""
    f = monic(K, f)
    if len(f) <= 1:
        return []
    x = [K.zero, K.one]
    h = powmod(K, x, K.q, f)
    g = gcd(K, f, sub(K, h, x))
    if len(g) <= 1:
        return []
    lin = equal_degree(K, g, 1, _rng_for(g))
    return sorted((K.neg(u[0]) for u in lin), key=K.key)


# ---------------------------------------------------------------- dispatch

def factor(K, f):
    """Return (lc, [(g, e)]) with g monic irreducible over K, sorted canonically."""
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    lead = f[-1]
    out = []
    for g, e in squarefree_decomposition(K, f):
        if len(g) == 2:
            out.append((g, e))
            continue
        for h in K.factor_squarefree(g):
            out.append((h, e))
    out.sort(key=lambda t: (key(K, t[0]), t[1]))
    return lead, out


def irreducible_factors(K, f):
    return [g for g, _ in factor(K, f)[1]]


def is_irreducible(K, f):
    if len(f) <= 2:
        return len(f) == 2
    if not is_squarefree(K, f):
        return False
    return len(K.factor_squarefree(monic(K, f))) == 1


def roots(K, f):
    """Distinct roots of f lying in K, sorted by K.key."""
    if getattr(K, "is_finite", False):
        return roots_finite(K, f)
    out = []
    for g in irreducible_factors(K, f):
        if len(g) == 2:
            out.append(K.neg(g[0]))
    return sorted(out, key=K.key)


def to_str(K, a, var="T"):
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if c == K.zero:
            continue
        cs = K.fmt(c)
        if i == 0:
            parts.append(cs)
            continue
        mon = var if i == 1 else f"{var}^{i}"
        if c == K.one:
            parts.append(mon)
        else:
            if any(ch in cs for ch in "+- ") and not cs.startswith("-"):
                cs = f"({cs})"
            parts.append(f"{cs}*{mon}")
    return " + ".join(parts)
