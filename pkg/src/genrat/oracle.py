"""Brute-force verifiers that check the main engine by independent routes.

* ``parametrization_search`` decides rationality of an irreducible curve
  F = 0 by searching for a parametrization (x(T), y(T), z(T)) of degree at
  most deg_X F + deg_Y F.
* ``point_count_genus`` recovers the genus of a smooth projective curve from
  its point counts over F_{q^i}.
* ``brute_spectrum`` factors every fiber F - lambda over one finite field.
"""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import sympy

from genrat import resolution
from genrat.algebra import bivariate, upoly
from genrat.algebra.fields import canonical_conjugates, extend_field, finite_embedding
from genrat.errors import BudgetExceeded, PreconditionError, UnsupportedError
from genrat.pencil import SpectrumEntry

DEFAULT_SEARCH_BUDGET = 2_000_000
DEFAULT_COUNT_BUDGET = 2_000_000


# ---------------------------------------------------------------- rationality

@dataclass
class Parametrization:
    x: list
    y: list
    z: list
    bound: int

    def to_json(self, K):
        return {"x": upoly.to_str(K, self.x), "y": upoly.to_str(K, self.y),
                "z": upoly.to_str(K, self.z), "degreeBound": self.bound}


def _monic_polys(K, degree):
    """All monic polynomials of exactly the given degree."""
    for low in itertools.product(K.elements(), repeat=degree):
        yield list(low) + [K.one]


def _polys_up_to(K, degree):
    """All polynomials of degree at most ``degree`` (including zero)."""
    for coeffs in itertools.product(K.elements(), repeat=degree + 1):
        yield upoly.trim(K, list(coeffs))


def _rational_functions(K, degree):
    """Reduced fractions v / w with w monic and max(deg v, deg w) = degree."""
    for dw in range(degree + 1):
        for w in _monic_polys(K, dw):
            for v in _polys_up_to(K, degree):
                if not v:
                    continue
                if max(len(v), len(w)) - 1 != degree:
                    continue
                if len(upoly.gcd(K, v, w)) > 1:
                    continue
                yield v, w


def _affine_orbit_min(K, v, w):
    """True when (v, w) is the least member of its orbit under T -> aT + b.

    Substituting T -> aT + b maps a reduced fraction to another one of the
    same degree, and maps parametrizations to parametrizations, so the
    search may visit only orbit minima in key order.
    """
    own = (upoly.key(K, w), upoly.key(K, v))
    for a in K.nonzero_elements():
        for b in K.elements():
            if a == K.one and b == K.zero:
                continue
            sub = [b, a]
            v2 = upoly.compose(K, v, sub)
            w2 = upoly.compose(K, w, sub)
            c = K.inv(upoly.lc(K, w2))
            v2, w2 = upoly.scale(K, v2, c), upoly.scale(K, w2, c)
            if (upoly.key(K, w2), upoly.key(K, v2)) < own:
                return False
    return True


def _monic_divisors(K, f):
    """Every monic divisor of the nonzero polynomial f."""
    _, facs = upoly.factor(K, f)
    choices = [[upoly.power(K, g, k) for k in range(e + 1)] for g, e in facs]
    for combo in itertools.product(*choices):
        out = [K.one]
        for part in combo:
            out = upoly.mul(K, out, part)
        yield out


def _substitute(F, u, w, var):
    """Coefficients in k[T] of w^deg * F with the variable ``var`` replaced by u / w.

    Returns the list, indexed by the power of the other variable, of
    polynomials in T.
    """
    K = F.K
    if var == "Y":
        F = F.swap()
    # now substitute for X
    n = F.deg_x
    upow = [[K.one]]
    wpow = [[K.one]]
    for _ in range(n):
        upow.append(upoly.mul(K, upow[-1], u))
        wpow.append(upoly.mul(K, wpow[-1], w))
    out = {}
    for (i, j), c in F.terms.items():
        term = upoly.scale(K, upoly.mul(K, upow[i], wpow[n - i]), c)
        out[j] = upoly.add(K, out.get(j, []), term)
    top = max(out) if out else 0
    return [out.get(j, []) for j in range(top + 1)]


def _rational_roots(K, coeffs, bound):
    """Roots u / w in k(T) of sum coeffs[j] X^j with max(deg u, deg w) <= bound."""
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    if len(coeffs) < 2:
        return
    if not coeffs[0]:
        yield [], [K.one]
        return
    lead, const = coeffs[-1], coeffs[0]
    for w in _monic_divisors(K, lead):
        if len(w) - 1 > bound:
            continue
        for u0 in _monic_divisors(K, const):
            if len(u0) - 1 > bound:
                continue
            for c in K.nonzero_elements():
                u = upoly.scale(K, u0, c)
                # sum_j coeffs[j] u^j w^(n - j) == 0
                n = len(coeffs) - 1
                acc = []
                upows, wpows = [[K.one]], [[K.one]]
                for _ in range(n):
                    upows.append(upoly.mul(K, upows[-1], u))
                    wpows.append(upoly.mul(K, wpows[-1], w))
                for j, cj in enumerate(coeffs):
                    if cj:
                        acc = upoly.add(K, acc, upoly.mul(K, cj,
                                                          upoly.mul(K, upows[j], wpows[n - j])))
                if not acc:
                    yield u, w


def parametrization_search(F, lam=None, budget=DEFAULT_SEARCH_BUDGET):
    """Parametrization of the irreducible curve F - lam = 0 over its finite field, or None.

    A curve with a rational function field has a parametrization
    X = u / w1, Y = v / w2 with max(deg u, deg w1) = deg_Y F and
    max(deg v, deg w2) = deg_X F, and then (u w2, v w1, w1 w2) has degree at
    most deg_X F + deg_Y F.  The search enumerates the coordinate of smaller
    degree (up to T -> aT + b) and solves for the other one by the rational
    root theorem over k[T], so a None answer is a proof of non-rationality.
    """
    K = F.K
    if not K.is_finite:
        raise UnsupportedError("parametrization search needs a finite field")
    f = F if lam is None else F.add_const(K.neg(lam))
    if f.is_constant():
        raise PreconditionError("constant curve")
    if not bivariate.is_irreducible(f):
        raise PreconditionError(f"{f.to_str()} is reducible")
    a, b = f.deg_x, f.deg_y
    bound = a + b
    if b <= 0 or a <= 0:
        # f is univariate; rational exactly when it is linear
        if f.total_degree != 1:
            return None
        if b <= 0:
            root = K.neg(K.div(f.coeff(0, 0), f.coeff(1, 0)))
            return Parametrization([root] if root else [], [K.zero, K.one], [K.one], bound)
        root = K.neg(K.div(f.coeff(0, 0), f.coeff(0, 1)))
        return Parametrization([K.zero, K.one], [root] if root else [], [K.one], bound)
    # enumerate the coordinate whose rational function has the smaller degree
    if a <= b:
        enum_var, enum_deg, solve_deg = "Y", a, b
    else:
        enum_var, enum_deg, solve_deg = "X", b, a
    work = 0
    for v, w in _rational_functions(K, enum_deg):
        work += 1
        if work > budget:
            raise BudgetExceeded(f"parametrization search exceeded {budget} candidates")
        if not _affine_orbit_min(K, v, w):
            continue
        coeffs = _substitute(f, v, w, enum_var)
        for u, w1 in _rational_roots(K, coeffs, solve_deg):
            if enum_var == "Y":
                x, y, z = upoly.mul(K, u, w), upoly.mul(K, v, w1), upoly.mul(K, w1, w)
            else:
                x, y, z = upoly.mul(K, v, w1), upoly.mul(K, u, w), upoly.mul(K, w1, w)
            if _verify(f, x, y, z):
                return Parametrization(x, y, z, bound)
    return None


def _verify(f, x, y, z):
    """Check the conditions of a parametrization directly."""
    K = f.K
    if not z:
        return False
    if max(len(x), len(y), len(z)) - 1 > f.deg_x + f.deg_y:
        return False
    if _constant_ratio(K, x, z) and _constant_ratio(K, y, z):
        return False
    d = f.total_degree
    acc = []
    xp, yp, zp = [[K.one]], [[K.one]], [[K.one]]
    for _ in range(d):
        xp.append(upoly.mul(K, xp[-1], x))
        yp.append(upoly.mul(K, yp[-1], y))
        zp.append(upoly.mul(K, zp[-1], z))
    for (i, j), c in f.terms.items():
        term = upoly.mul(K, upoly.mul(K, xp[i], yp[j]), zp[d - i - j])
        acc = upoly.add(K, acc, upoly.scale(K, term, c))
    return not acc


def _constant_ratio(K, p, z):
    """p / z lies in K (checked by cross multiplication with leading coefficients)."""
    if not p:
        return True
    return not upoly.sub(K, upoly.scale(K, p, upoly.lc(K, z)), upoly.scale(K, z, upoly.lc(K, p)))


# ---------------------------------------------------------------- point counting

def count_points(h, L, budget=DEFAULT_COUNT_BUDGET):
    """Number of points of the projective curve h = 0 over the field L (by enumeration)."""
    K = h.K
    if L.q * L.q > budget:
        raise BudgetExceeded(f"point count over {L.descriptor} exceeds the enumeration budget")
    emb = finite_embedding(K, L)
    terms = [(i, j, l, emb(c)) for (i, j, l), c in h.terms.items()]
    elems = L.elements()
    pows = {}
    deg = h.d

    def table(x):
        if x not in pows:
            t = [L.one]
            for _ in range(deg):
                t.append(L.mul(t[-1], x))
            pows[x] = t
        return pows[x]

    def value(x, y, z):
        tx, ty, tz = table(x), table(y), table(z)
        acc = L.zero
        for i, j, l, c in terms:
            acc = L.add(acc, L.mul(c, L.mul(tx[i], L.mul(ty[j], tz[l]))))
        return acc

    n = 0
    for x in elems:
        for y in elems:
            if value(x, y, L.one) == L.zero:
                n += 1
    for x in elems:
        if value(x, L.one, L.zero) == L.zero:
            n += 1
    if value(L.one, L.zero, L.zero) == L.zero:
        n += 1
    return n


def _l_polynomial(q, counts, g):
    """Numerator of the zeta function from N_1..N_g (exact integers)."""
    p = [q ** i + 1 - counts[i - 1] for i in range(1, g + 1)]  # power sums of Frobenius roots
    e = [Fraction(1)]
    for j in range(1, g + 1):
        s = sum((-1) ** (i - 1) * e[j - i] * p[i - 1] for i in range(1, j + 1))
        e.append(s / j)
    a = [(-1) ** j * e[j] for j in range(g + 1)]
    if any(c.denominator != 1 for c in a):
        return None
    a = [int(c) for c in a]
    full = a + [0] * g
    for j in range(g + 1, 2 * g + 1):
        full[j] = q ** (j - g) * a[2 * g - j]
    return full


def _satisfies_riemann_hypothesis(q, L, g):
    """All reciprocal roots of L have absolute value sqrt(q)."""
    if g == 0:
        return True
    # L(t) = t^g h(q t + 1/t) with h monic of degree g; RH <=> roots of h real in [-2 sqrt q, 2 sqrt q]
    R = {k: Fraction(c) for k, c in enumerate(L)}
    h = [Fraction(0)] * (g + 1)
    for j in range(g, -1, -1):
        c = R.get(g + j, Fraction(0)) / Fraction(q) ** j
        h[j] = c
        # subtract c t^g (q t + 1/t)^j
        for i in range(j + 1):
            k = g + i - (j - i)
            R[k] = R.get(k, Fraction(0)) - c * math.comb(j, i) * q ** i
    if any(v != 0 for v in R.values()):
        return False
    x = sympy.Symbol("x")
    hp = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(h)], x)
    if _count_with_multiplicity(hp) != g:
        return False
    sq = sympy.Poly(sympy.expand(hp.as_expr() * hp.as_expr().subs(x, -x)), x)
    y = sympy.Symbol("y")
    even = sympy.Poly(sum(c * y ** (m // 2) for (m,), c in sq.terms()), y)
    return _count_with_multiplicity(even, 0, 4 * q) == g


def _count_with_multiplicity(poly, lo=None, hi=None):
    """Real roots of poly in [lo, hi] counted with multiplicity."""
    total = 0
    for factor, mult in poly.sqf_list()[1]:
        n = factor.count_roots() if lo is None else factor.count_roots(lo, hi)
        total += mult * n
    return total


def point_count_genus(h, max_ext, budget=DEFAULT_COUNT_BUDGET):
    """Genus of the smooth absolutely irreducible curve h = 0 from point counts.

    Counts N_i over F_{q^i} for i = 1..max_ext; a genus candidate g is
    consistent when the numerator of the zeta function built from
    N_1..N_g predicts the remaining counts and satisfies the Riemann
    hypothesis.  Returns g when exactly one candidate up to the arithmetic
    genus is consistent, otherwise None.
    """
    K = h.K
    if not K.is_finite:
        raise UnsupportedError("point counting needs a finite field")
    if resolution.singular_points(h):
        raise PreconditionError("point counting requires a smooth curve")
    q = K.q
    counts = []
    for i in range(1, max_ext + 1):
        L, _ = extend_field(K, i)
        counts.append(count_points(h, L, budget))
    g_max = resolution.arithmetic_genus(h.d)
    ok = []
    for g in range(0, min(g_max, max_ext) + 1):
        L = _l_polynomial(q, counts, g)
        if L is None:
            continue
        predicted = _predict_counts(q, L, g, max_ext)
        if predicted != counts:
            continue
        if _satisfies_riemann_hypothesis(q, L, g):
            ok.append(g)
    return ok[0] if len(ok) == 1 else None


def _predict_counts(q, L, g, n):
    """N_i = q^i + 1 - sum of i-th powers of the reciprocal roots of L."""
    # power sums from L = prod (1 - w t): Newton identities on e_j = (-1)^j L_j
    e = [(-1) ** j * c for j, c in enumerate(L)]
    p = []
    for k in range(1, n + 1):
        s = (-1) ** (k - 1) * k * (e[k] if k <= 2 * g else 0)
        for i in range(1, k):
            ei = e[k - i] if k - i <= 2 * g else 0
            s += (-1) ** (k - 1 + i) * ei * p[i - 1]
        p.append(s)
    return [q ** k + 1 - p[k - 1] for k in range(1, n + 1)]


# ---------------------------------------------------------------- spectrum

def _absolute_components(f):
    """Distinct components of V(f) over the closure, by factoring over large enough fields."""
    total = 0
    for g in bivariate.irreducible_factors(f):
        if g.deg_x <= 0 or g.deg_y <= 0:
            total += g.total_degree
            continue
        s = math.gcd(math.gcd(g.deg_x, g.deg_y), g.total_degree)
        if s == 1:
            total += 1
            continue
        L, emb = extend_field(g.K, s)
        total += len(bivariate.irreducible_factors(g.map_coeffs(emb)))
    return total


def brute_spectrum(F, ext_degree, budget=100_000):
    """Every reducible fiber F - lambda with lambda in the degree-ext_degree extension of K."""
    K = F.K
    if not K.is_finite:
        raise UnsupportedError("brute spectrum needs a finite field")
    L, emb = extend_field(K, ext_degree)
    if L.q > budget:
        raise BudgetExceeded(f"{L.q} fibers exceed the enumeration budget")
    FL = F.map_coeffs(emb) if not emb.is_identity else F
    P = L.prime_field
    out = []
    for lam in L.elements():
        n = _absolute_components(FL.add_const(L.neg(lam)))
        if n >= 2:
            M, roots = canonical_conjugates(L, lam)
            e = finite_embedding(M, L)
            r = next(r for r in roots if e(r) == lam)
            out.append(SpectrumEntry(M.fmt(r), M.descriptor if M is not P else P.descriptor,
                                     n, (M.degree, M.key(r))))
    out.sort(key=lambda x: x.sort_key)
    return out
