"""Bivariate algorithms: gcd, resultant, p-th roots and factorization.

Internally a polynomial in K[x][y] is a "ylist": a list over powers of y of
univariate coefficient lists in x (see ``upoly``).  Public functions accept
and return ``BiPoly`` objects; ``main_var`` selects which variable plays
the role of y.
"""

import math
import itertools

from genrat.algebra import upoly
from genrat.algebra.bipoly import BiPoly
from genrat.algebra.fields import adjoin_root, extend_field
from genrat.errors import PreconditionError

# ---------------------------------------------------------------- ylist helpers


def _yl_trim(A):
    n = len(A)
    while n and not A[n - 1]:
        n -= 1
    return A[:n]


def _yl_scale(K, A, c):
    """Multiply every coefficient by the polynomial c in x."""
    return _yl_trim([upoly.mul(K, a, c) for a in A])


def _yl_exact_div_coeffs(K, A, c):
    return [upoly.exact_quo(K, a, c) for a in A]


def _yl_sub(K, A, B):
    n = max(len(A), len(B))
    out = []
    for i in range(n):
        a = A[i] if i < len(A) else []
        b = B[i] if i < len(B) else []
        out.append(upoly.sub(K, a, b))
    return _yl_trim(out)


def _yl_mul(K, A, B):
    if not A or not B:
        return []
    out = [[] for _ in range(len(A) + len(B) - 1)]
    for i, a in enumerate(A):
        if not a:
            continue
        for j, b in enumerate(B):
            if b:
                out[i + j] = upoly.add(K, out[i + j], upoly.mul(K, a, b))
    return _yl_trim(out)


def _yl_prem(K, A, B):
    """Pseudo-remainder of A by B in K[x][y]."""
    dB = len(B) - 1
    lcB = B[-1]
    R = list(A)
    e = len(A) - len(B) + 1
    while R and len(R) - 1 >= dB:
        dR = len(R) - 1
        lcR = R[-1]
        # R = lcB * R - lcR * y^(dR-dB) * B
        shift = dR - dB
        newR = [upoly.mul(K, r, lcB) for r in R]
        for j, b in enumerate(B):
            if b:
                newR[j + shift] = upoly.sub(K, newR[j + shift], upoly.mul(K, lcR, b))
        R = _yl_trim(newR)
        e -= 1
    if e > 0 and R:
        R = _yl_scale(K, R, upoly.power(K, lcB, e))
    return R


def _yl_content(K, A):
    g = []
    for a in A:
        if a:
            g = upoly.gcd(K, g, a)
            if len(g) == 1:
                return g
    return g


def _yl_primitive(K, A):
    if not A:
        return [], []
    c = _yl_content(K, A)
    if len(c) == 1 and c == [K.one]:
        return c, A
    return c, _yl_exact_div_coeffs(K, A, c)


def _yl_divexact(K, A, B):
    """Exact quotient A / B in K[x][y], or None if B does not divide A."""
    if not B:
        raise ZeroDivisionError("division by zero polynomial")
    dB = len(B) - 1
    lcB = B[-1]
    R = list(A)
    Q = [[] for _ in range(max(len(A) - dB, 0))]
    while R and len(R) - 1 >= dB:
        dR = len(R) - 1
        q, r = upoly.divmod_(K, R[-1], lcB)
        if r:
            return None
        shift = dR - dB
        Q[shift] = q
        for j, b in enumerate(B):
            if b:
                R[j + shift] = upoly.sub(K, R[j + shift], upoly.mul(K, q, b))
        R = _yl_trim(R)
        if R and len(R) - 1 == dR:
            return None
    if R:
        return None
    return _yl_trim(Q)


def _to_yl(f, main_var):
    return f.to_ylist() if main_var == "Y" else f.to_xlist()


def _from_yl(K, A, main_var):
    if main_var == "Y":
        return BiPoly.from_ylist(K, A)
    return BiPoly.from_xlist(K, A)


def normalize(f):
    """Scale f so the coefficient of its leading term is 1.

    The leading term maximises (total degree, X exponent).
    """
    if f.is_zero():
        return f
    e = max(f.terms, key=lambda t: (t[0] + t[1], t[0]))
    c = f.terms[e]
    if c == f.K.one:
        return f
    return f.scale(f.K.inv(c))


def leading_coefficient(f):
    e = max(f.terms, key=lambda t: (t[0] + t[1], t[0]))
    return f.terms[e]


# ---------------------------------------------------------------- gcd

def _yl_gcd(K, A, B):
    if not A:
        return B
    if not B:
        return A
    if len(A) < len(B):
        A, B = B, A
    a, A = _yl_primitive(K, A)
    b, B = _yl_primitive(K, B)
    d = upoly.gcd(K, a, b)
    g = [K.one]
    h = [K.one]
    while True:
        delta = len(A) - len(B)
        R = _yl_prem(K, A, B)
        if not R:
            break
        if len(R) == 1:
            B = [[K.one]]
            break
        A = B
        denom = upoly.mul(K, g, upoly.power(K, h, delta))
        B = _yl_exact_div_coeffs(K, R, denom)
        g = A[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = upoly.exact_quo(K, upoly.power(K, g, delta), upoly.power(K, h, delta - 1))
    _, B = _yl_primitive(K, B)
    return _yl_scale(K, B, d)


def gcd(a, b, main_var="Y"):
    """Greatest common divisor, primitive in main_var and normalized; gcd(0,0)=0."""
    K = a.K
    if a.is_zero() and b.is_zero():
        return BiPoly(K)
    G = _yl_gcd(K, _to_yl(a, main_var), _to_yl(b, main_var))
    return normalize(_from_yl(K, G, main_var))


def gcd_many(polys):
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return None
    g = polys[0]
    for p in polys[1:]:
        g = gcd(g, p)
        if g.is_constant():
            return normalize(g)
    return normalize(g)


# ---------------------------------------------------------------- resultant

def _yl_resultant(K, A, B):
    if not A or not B:
        return []
    dA, dB = len(A) - 1, len(B) - 1
    if dA == 0:
        return upoly.power(K, A[0], dB)
    if dB == 0:
        return upoly.power(K, B[0], dA)
    s = 1
    if dA < dB:
        A, B = B, A
        dA, dB = dB, dA
        if dA % 2 and dB % 2:
            s = -s
    a, A = _yl_primitive(K, A)
    b, B = _yl_primitive(K, B)
    t = upoly.mul(K, upoly.power(K, a, dB), upoly.power(K, b, dA))
    g = [K.one]
    h = [K.one]
    while True:
        dA, dB = len(A) - 1, len(B) - 1
        delta = dA - dB
        if dA % 2 and dB % 2:
            s = -s
        R = _yl_prem(K, A, B)
        A = B
        if not R:
            return []
        denom = upoly.mul(K, g, upoly.power(K, h, delta))
        B = _yl_exact_div_coeffs(K, R, denom)
        g = A[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = upoly.exact_quo(K, upoly.power(K, g, delta), upoly.power(K, h, delta - 1))
        if len(B) - 1 <= 0:
            break
    dA = len(A) - 1
    lB = B[0]
    # h = h^(1 - dA) * lB^dA
    if dA == 0:
        h = [K.one]
    elif dA == 1:
        h = lB
    else:
        h = upoly.exact_quo(K, upoly.power(K, lB, dA), upoly.power(K, h, dA - 1))
    res = upoly.mul(K, t, h)
    if s < 0:
        res = upoly.neg(K, res)
    return res


def resultant(a, b, eliminated_var="Y"):
    """Resultant eliminating the given variable; a univariate coefficient list."""
    K = a.K
    return _yl_resultant(K, _to_yl(a, eliminated_var), _to_yl(b, eliminated_var))


def resultant_poly(a, b, eliminated_var="Y"):
    """Same as ``resultant`` but returned as a BiPoly in the remaining variable."""
    r = resultant(a, b, eliminated_var)
    K = a.K
    if eliminated_var == "Y":
        return BiPoly.from_ylist(K, [r])
    return BiPoly.from_xlist(K, [r])


def discriminant_y(f):
    return resultant(f, f.deriv_y(), "Y")


# ---------------------------------------------------------------- division, roots

def divexact(a, b):
    """Exact quotient a / b, or None when b does not divide a."""
    K = a.K
    if a.is_zero():
        return BiPoly(K)
    Q = _yl_divexact(K, a.to_ylist(), b.to_ylist())
    return None if Q is None else BiPoly.from_ylist(K, Q)


def divides(b, a):
    return divexact(a, b) is not None


def pth_root(f):
    """H with H^p = f when f is a p-th power in K[X, Y], else None."""
    K = f.K
    p = K.characteristic
    if p == 0:
        raise PreconditionError("p-th roots need positive characteristic")
    if not f.is_pth_power_shape(p):
        return None
    return BiPoly(K, {(i // p, j // p): K.pth_root(c) for (i, j), c in f.terms.items()}, True)


def strip_pth_powers(f):
    """Return (H, e) with f = H^(p^e) and H not a p-th power (e = 0 in char 0)."""
    if f.K.characteristic == 0 or f.is_constant():
        return f, 0
    e = 0
    while True:
        h = pth_root(f)
        if h is None or h.is_constant():
            return f, e
        f, e = h, e + 1


# ---------------------------------------------------------------- factorization

def factor(f):
    """Factor over the coefficient field: (unit, [(g, e), ...]).

    Every g is irreducible over K and normalized; the list is sorted by
    ``BiPoly.sort_key`` so the output is deterministic.
    """
    if f.is_zero():
        raise PreconditionError("cannot factor the zero polynomial")
    if f.is_constant():
        return f.constant_term(), []
    irreds = _irreducibles(f)
    irreds = _dedupe(irreds)
    out = []
    rest = f
    for g in irreds:
        e = 0
        while True:
            q = divexact(rest, g)
            if q is None:
                break
            rest = q
            e += 1
        if e == 0:
            raise AssertionError("factor does not divide its input")
        out.append((g, e))
    if not rest.is_constant():
        raise AssertionError("incomplete factorization")
    out.sort(key=lambda t: t[0].sort_key())
    return rest.constant_term(), out


def irreducible_factors(f):
    return [g for g, _ in factor(f)[1]]


def squarefree_part(f):
    """Product of the distinct irreducible factors (normalized)."""
    K = f.K
    out = BiPoly.const(K, K.one)
    for g in irreducible_factors(f):
        out = out * g
    return out


def is_irreducible(f):
    if f.is_constant():
        return False
    _, facs = factor(f)
    return len(facs) == 1 and facs[0][1] == 1


def _dedupe(polys):
    seen = {}
    for g in polys:
        g = normalize(g)
        seen[g] = g
    return sorted(seen.values(), key=lambda g: g.sort_key())


def _irreducibles(f):
    """Distinct irreducible factors of f (possibly with repeats)."""
    K = f.K
    if f.is_constant():
        return []
    # univariate contents first
    if f.deg_y == 0:
        return [BiPoly.from_ylist(K, [g]) for g in upoly.irreducible_factors(K, f.univariate_x())]
    if f.deg_x == 0:
        return [BiPoly.from_xlist(K, [g]) for g in upoly.irreducible_factors(K, f.univariate_y())]
    A = f.to_ylist()
    c, A = _yl_primitive(K, A)
    out = []
    if len(c) > 1:
        out.extend(BiPoly.from_ylist(K, [g]) for g in upoly.irreducible_factors(K, c))
        f = BiPoly.from_ylist(K, A)
    B = f.to_xlist()
    c2, B = _yl_primitive(K, B)
    if len(c2) > 1:
        out.extend(BiPoly.from_xlist(K, [g]) for g in upoly.irreducible_factors(K, c2))
        f = BiPoly.from_xlist(K, B)
    if f.is_constant():
        return out
    for var in ("Y", "X"):
        df = f.deriv_y() if var == "Y" else f.deriv_x()
        if df.is_zero():
            continue
        g = gcd(f, df)
        u = divexact(f, g)
        if u is None:
            raise AssertionError("gcd does not divide")
        if not u.is_constant():
            out.extend(_factor_separable(u, var))
            out.extend(_irreducibles(g))
            return out
    h = pth_root(f.monic_scale(leading_coefficient(f)))
    if h is None:
        raise AssertionError("polynomial with vanishing partials is not a p-th power")
    out.extend(_irreducibles(h))
    return out


def _factor_separable(u, var):
    """Irreducible factors of a squarefree u that is separable in var."""
    if var == "X":
        return [g.swap() for g in _factor_separable(u.swap(), "Y")]
    K = u.K
    A = u.to_ylist()
    c, A = _yl_primitive(K, A)
    out = []
    if len(c) > 1:
        out.extend(BiPoly.from_ylist(K, [g]) for g in upoly.irreducible_factors(K, c))
    u = BiPoly.from_ylist(K, A)
    if u.deg_y <= 0:
        return out
    if u.deg_y == 1 or u.deg_x == 0:
        if u.deg_x == 0:
            out.extend(BiPoly.from_xlist(K, [g]) for g in
                       upoly.irreducible_factors(K, u.univariate_y()))
        else:
            out.append(normalize(u))
        return out
    a = _good_point(K, A)
    if a is not None:
        out.extend(_hensel_factor(K, A, a))
        return out
    # the field is too small: factor over an extension, then regroup orbits
    out.extend(_factor_via_extension(u))
    return out


def _good_point(K, A, limit=None):
    """An element a with lc(a) != 0 and A(a, y) squarefree, or None."""
    lc = A[-1]
    if K.is_finite:
        candidates = K.elements() if K.q <= 4096 else \
            [K.from_key(k) for k in range(min(K.q, 4096))]
    else:
        candidates = [K.from_int(k) for k in _int_sequence(4 * len(A) * len(lc) + 20)]
    for a in candidates:
        if upoly.evaluate(K, lc, a) == K.zero:
            continue
        special = [upoly.evaluate(K, r, a) for r in A]
        if upoly.is_squarefree(K, special):
            return a
    return None


def _int_sequence(n):
    out = [0]
    k = 1
    while len(out) < n:
        out.extend([k, -k])
        k += 1
    return out


def _factor_via_extension(u):
    K = u.K
    need = 2 * u.deg_x * u.deg_y + u.deg_x + 2
    k = 2
    while K.q ** k <= need:
        k += 1
    while True:
        L, emb = extend_field(K, k)
        uL = u.map_coeffs(emb)
        A = uL.to_ylist()
        a = _good_point(L, A)
        if a is not None:
            break
        k += 1
    facs = [normalize(g) for g in _hensel_factor(L, A, a)]
    # group Frobenius orbits relative to K
    qK = K.q
    remaining = {g: None for g in facs}
    out = []
    while remaining:
        g = next(iter(remaining))
        orbit = [g]
        cur = g
        while True:
            cur = BiPoly(L, {e: L.pow(c, qK) for e, c in cur.terms.items()}, True)
            if cur == g:
                break
            orbit.append(cur)
        prod = BiPoly.const(L, L.one)
        for h in orbit:
            remaining.pop(h, None)
            prod = prod * h
        down = BiPoly(K, {e: emb.preimage(c) for e, c in prod.terms.items()})
        out.append(normalize(down))
    return out


def _shift_x(K, A, a):
    return [upoly.taylor_shift(K, r, a) for r in A]


def _trunc(K, a, n):
    return upoly.trim(K, a[:n])


def _ser_mul(K, a, b, n):
    """Product of truncated power series in x mod x^n."""
    if not a or not b:
        return []
    out = [K.zero] * min(len(a) + len(b) - 1, n)
    for i, x in enumerate(a):
        if i >= n:
            break
        if x == K.zero:
            continue
        for j, y in enumerate(b):
            if i + j >= n:
                break
            if y != K.zero:
                out[i + j] = K.add(out[i + j], K.mul(x, y))
    return upoly.trim(K, out)


def _ser_inv(K, a, n):
    """Inverse of a power series with nonzero constant term mod x^n."""
    inv0 = K.inv(a[0])
    out = [inv0]
    for k in range(1, n):
        s = K.zero
        for i in range(1, min(k, len(a) - 1) + 1):
            s = K.add(s, K.mul(a[i], out[k - i]))
        out.append(K.neg(K.mul(s, inv0)))
    return upoly.trim(K, out)


def _sy_mul(K, A, B, n):
    """Product in (K[x]/x^n)[y]."""
    if not A or not B:
        return []
    out = [[] for _ in range(len(A) + len(B) - 1)]
    for i, a in enumerate(A):
        if not a:
            continue
        for j, b in enumerate(B):
            if b:
                out[i + j] = upoly.add(K, out[i + j], _ser_mul(K, a, b, n))
    return _yl_trim(out)


def _hensel_factor(K, A, a):
    """Factor the primitive squarefree A (main variable y) using the good point a."""
    A = _shift_x(K, A, a)
    u0 = upoly.trim(K, [r[0] if r else K.zero for r in A])
    lead, facs = upoly.factor(K, u0)
    gs = [g for g, _ in facs]
    if len(gs) == 1:
        return [_unshift(K, A, a)]
    N = max(len(r) for r in A)  # deg_x + 1
    n = len(A) - 1
    lc_inv = _ser_inv(K, A[-1], N)
    U = [_ser_mul(K, r, lc_inv, N) for r in A]  # monic in y mod x^N
    # Bezout-type cofactors for the modular factors
    r = len(gs)
    cof = []
    for i in range(r):
        others = [K.one]
        for j in range(r):
            if j != i:
                others = upoly.mul(K, others, gs[j])
        cof.append((others, upoly.invmod(K, upoly.rem(K, others, gs[i]), gs[i])))
    G = [[[c] if c != K.zero else [] for c in g] for g in gs]
    for k in range(1, N):
        prod = [[K.one]]
        for Gi in G:
            prod = _sy_mul(K, prod, Gi, k + 1)
        # coefficient of x^k of U - prod
        err = []
        for j in range(n + 1):
            u = U[j] if j < len(U) else []
            pj = prod[j] if j < len(prod) else []
            uc = u[k] if k < len(u) else K.zero
            pc = pj[k] if k < len(pj) else K.zero
            err.append(K.sub(uc, pc))
        err = upoly.trim(K, err)
        if not err:
            continue
        for i in range(r):
            delta = upoly.rem(K, upoly.mul(K, err, cof[i][1]), gs[i])
            Gi = G[i]
            for j, c in enumerate(delta):
                if c == K.zero:
                    continue
                row = list(Gi[j])
                row += [K.zero] * (k + 1 - len(row))
                row[k] = K.add(row[k], c)
                Gi[j] = upoly.trim(K, row)
    return [_unshift(K, f, a) for f in _recombine(K, A, G, N)]


def _unshift(K, A, a):
    B = _shift_x(K, A, K.neg(a))
    return normalize(BiPoly.from_ylist(K, B))


def _recombine(K, A, G, N):
    """Zassenhaus recombination of lifted factors into true factors."""
    rest = A
    pool = list(range(len(G)))
    found = []
    size = 1
    while 2 * size <= len(pool):
        hit = False
        for S in itertools.combinations(pool, size):
            v = [_trunc(K, rest[-1], N)]
            for i in S:
                v = _sy_mul(K, v, G[i], N)
            _, v = _yl_primitive(K, v)
            q = _yl_divexact(K, rest, v)
            if q is not None:
                found.append(v)
                rest = q
                pool = [i for i in pool if i not in S]
                hit = True
                break
        if not hit:
            size += 1
    _, rest = _yl_primitive(K, rest)
    found.append(rest)
    return found


# ---------------------------------------------------------------- absolute irreducibility

def absolute_component_count(f):
    """Number of components over the algebraic closure of an irreducible f.

    The components of an irreducible f are Galois conjugate, so their number
    s divides gcd(deg_x, deg_y, deg).  A smooth point of f rational over K
    lies on exactly one component, which is then defined over K, so s = 1.
    Otherwise finite fields are handled by factoring over the degree-s candidate
    extension; characteristic 0 by factoring over the field of a smooth point.
    """
    if f.deg_y <= 0 or f.deg_x <= 0:
        # an irreducible univariate polynomial splits into parallel lines
        return f.total_degree
    g = math.gcd(math.gcd(f.deg_x, f.deg_y), f.total_degree)
    if g == 1:
        return 1
    K = f.K
    if _has_rational_smooth_point(f):
        return 1
    if K.is_finite:
        L, emb = extend_field(K, g)
        return len(irreducible_factors(f.map_coeffs(emb)))
    return _absolute_count_char0(f)


def _has_rational_smooth_point(f, tries=64):
    K = f.K
    if f.deriv_y().is_zero():
        f = f.swap()
    A = f.to_ylist()
    lc = A[-1]
    if K.is_finite:
        cands = [K.from_key(k) for k in range(min(K.q, tries))]
    else:
        cands = [K.from_int(k) for k in _int_sequence(tries)]
    for a in cands:
        if upoly.evaluate(K, lc, a) == K.zero:
            continue
        special = [upoly.evaluate(K, r, a) for r in A]
        special_d = upoly.deriv(K, special)
        for b in upoly.roots(K, special):
            if upoly.evaluate(K, special_d, b) != K.zero:
                return True
    return False


def _absolute_count_char0(f):
    K = f.K
    A = f.to_ylist()
    a = _good_point(K, A)
    if a is None:
        raise AssertionError("no squarefree specialisation found")
    special = [upoly.evaluate(K, r, a) for r in A]
    facs = upoly.irreducible_factors(K, special)
    phi = min(facs, key=lambda g: (len(g), upoly.key(K, g)))
    L, emb, roots = adjoin_root(K, phi)
    beta = roots[0]
    aL = emb(a)
    fL = f.map_coeffs(emb)
    for h in irreducible_factors(fL):
        if h.evaluate(aL, beta) == L.zero:
            return f.total_degree // h.total_degree
    raise AssertionError("smooth point lies on no factor")


def absolute_irreducible_count(f):
    """Number of distinct irreducible components of V(f) over the closure."""
    return sum(absolute_component_count(g) for g in irreducible_factors(f))


def is_absolutely_irreducible(f):
    facs = factor(f)[1]
    return len(facs) == 1 and facs[0][1] == 1 and absolute_component_count(facs[0][0]) == 1
