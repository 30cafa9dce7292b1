"""The pencil a F* + b Z^d of a bivariate polynomial F and its invariants.

Base points of the pencil lie on the line Z = 0.  At a base point the pencil
is represented by a local pair (f, g) of the two generators; blowing up the
point divides both strict transforms by the same power u^mu, where mu is
the multiplicity of the general member.  On the exceptional line the pencil
parameter restricts to the rational function f_mu / g_mu, which is either
constant (the line lies in one fiber) or not (the line is horizontal and
gives a dicritical).
"""

from dataclasses import dataclass, field
from typing import Optional

from genrat import resolution
from genrat.algebra import bivariate, upoly
from genrat.algebra.bipoly import BiPoly, HomPoly, homogenize
from genrat.algebra.fields import (Embedding, adjoin_root, canonical_conjugates,
                                   descend_to_prime_field, field_with_at_least,
                                   finite_embedding, finite_field, make_rng,
                                   minimal_polynomial, QQ)
from genrat.errors import InternalInconsistency, PreconditionError, UnsupportedError
from genrat.resolution import (DEFAULT_NODE_BUDGET, ResolutionTree,
                               chart_a, chart_b, tangent_polynomial)

DEFAULT_EXT_BUDGET = 8


# ---------------------------------------------------------------- data types

@dataclass
class Pencil:
    F: BiPoly
    d: int
    Fstar: HomPoly
    second: HomPoly


def make_pencil(F):
    if F.is_constant():
        raise PreconditionError("F must be nonconstant")
    d = F.total_degree
    K = F.K
    return Pencil(F, d, homogenize(F), HomPoly(K, d, {(0, 0, d): K.one}))


@dataclass
class BasePointRecord:
    node_id: int
    mu: int
    weight: int


@dataclass
class Dicritical:
    node_id: int
    degree: int
    separable_degree: int
    purely_inseparable: bool
    restriction: str
    conjugates: int

    def to_json(self):
        return {"degree": self.degree, "separableDegree": self.separable_degree,
                "purelyInseparable": self.purely_inseparable}


@dataclass
class SpectrumEntry:
    lam: str
    minimal_field: str
    n: int
    sort_key: tuple = field(default=(), repr=False)

    def to_json(self):
        return {"lambda": self.lam, "minimalField": self.minimal_field, "n": self.n}


@dataclass
class PencilResolution:
    tree: ResolutionTree
    base_points: list
    horizontal: list
    dicriticals: list
    vertical_values: list  # (field, value) of every vertical exceptional line with finite value
    maps: dict             # node id -> (field, P, Q) for horizontal lines
    base_field: object

    @property
    def t(self):
        return sum(dc.conjugates for dc in self.dicriticals)


# ---------------------------------------------------------------- resolution

def _restriction(K, tf, tg):
    """Reduced restriction P/Q of the pencil parameter to an exceptional line."""
    if not tg:
        return None, None, "infinity"
    if not tf:
        return [], [K.one], "constant"
    h = upoly.gcd(K, tf, tg)
    P = upoly.exact_quo(K, tf, h)
    Q = upoly.exact_quo(K, tg, h)
    c = upoly.lc(K, Q)
    P = upoly.scale(K, P, K.inv(c))
    Q = upoly.scale(K, Q, K.inv(c))
    if len(P) <= 1 and len(Q) <= 1:
        return P, Q, "constant"
    return P, Q, "horizontal"


def separability(K, P, Q):
    """(degree, separable degree) of the rational map v -> P(v)/Q(v)."""
    deg = max(len(P), len(Q)) - 1
    p = K.characteristic
    if p == 0:
        return deg, deg
    e = 0
    while True:
        step = p ** (e + 1)
        if all((i % step == 0) or c == K.zero for poly in (P, Q) for i, c in enumerate(poly)):
            e += 1
        else:
            break
    return deg, deg // (p ** e)


def _fmt_rational(K, P, Q):
    num = upoly.to_str(K, P, "v")
    den = upoly.to_str(K, Q, "v")
    return num if den == "1" else f"({num})/({den})"


def base_point_resolution(F, node_budget=DEFAULT_NODE_BUDGET, check=True):
    """Blow up every base point of the pencil of F until none remain.

    With ``check`` the input is first tested for compositeness, which the
    multiplicity bookkeeping does not support.
    """
    pencil = make_pencil(F)
    if check and is_composite(F):
        raise PreconditionError(f"{F.to_str()} is composite")
    K = F.K
    d = pencil.d
    if F.leading_form().is_zero():
        raise InternalInconsistency("pencil has infinitely many base points")
    tree = ResolutionTree(f"pencil of {F.to_str()} over {K.descriptor}", node_budget)
    out = ([], [], [], [], {})
    for pt, f_local in resolution._points_at_infinity(F):
        # the second generator Z^d is z^d in both charts at infinity
        L = pt.field
        g = BiPoly(L, {(0, d): L.one}, True)
        _resolve_pencil_point(tree, None, f_local, g, pt.residue_degree, pt.projective(), out)
    records, horizontal, dicriticals, vertical, maps = out
    total = sum(r.weight * r.mu * r.mu for r in records)
    if total != d * d:
        raise InternalInconsistency(
            f"base point multiplicities give sum mu^2 = {total}, expected {d * d}")
    if not dicriticals:
        raise InternalInconsistency("pencil has no dicritical")
    return PencilResolution(tree, records, horizontal, dicriticals, vertical, maps, K)


def _resolve_pencil_point(tree, parent, f, g, weight, center, out):
    records, horizontal, dicriticals, vertical, maps = out
    K = f.K
    of, og = f.order(), g.order()
    mu = min(of, og)
    if mu < 1:
        raise InternalInconsistency("resolving a point that is not a base point")
    node = tree.add(parent, mu, weight, center, K)
    records.append(BasePointRecord(node.id, mu, node.residue_degree))
    tf = tangent_polynomial(f, mu) if of == mu else []
    tg = tangent_polynomial(g, mu) if og == mu else []
    P, Q, kind = _restriction(K, tf, tg)
    node.info["horizontal"] = kind == "horizontal"
    if kind == "horizontal":
        deg, sep = separability(K, P, Q)
        text = _fmt_rational(K, P, Q)
        node.info["restriction"] = text
        dicriticals.append(Dicritical(node.id, deg, sep, sep == 1, text, node.residue_degree))
        horizontal.append(node.id)
        maps[node.id] = (K, P, Q)
    elif kind == "constant":
        value = upoly.lc(K, P) if P else K.zero
        node.info["value"] = K.fmt(value)
        vertical.append((K, value))
    else:
        node.info["value"] = "infinity"
    fa, ga = chart_a(f, mu), chart_a(g, mu)
    common = upoly.gcd(K, tf, tg)
    children = 0
    if len(common) > 1:
        for phi in upoly.irreducible_factors(K, common):
            L, emb, roots = adjoin_root(K, phi)
            c = roots[0]
            fl = fa if emb.is_identity else fa.map_coeffs(emb)
            gl = ga if emb.is_identity else ga.map_coeffs(emb)
            _resolve_pencil_point(tree, node.id, fl.shift(L.zero, c), gl.shift(L.zero, c),
                                  len(phi) - 1, f"E:A:{L.fmt(c)}", out)
            children += 1
    if len(tf) - 1 < mu and len(tg) - 1 < mu:
        _resolve_pencil_point(tree, node.id, chart_b(f, mu), chart_b(g, mu), 1, "E:B:0", out)
        children += 1
    if not children:
        node.witness = "pencil separated"
    return node


def pencil_genus(res, d):
    delta = sum(r.weight * r.mu * (r.mu - 1) // 2 for r in res.base_points)
    g = resolution.arithmetic_genus(d) - delta
    if g < 0:
        raise InternalInconsistency(f"negative pencil genus {g}")
    return g


def dicriticals(res):
    """Dicritical table with one entry per dicritical over the algebraic closure."""
    out = []
    for dc in res.dicriticals:
        out.extend([dc] * dc.conjugates)
    out.sort(key=lambda dc: (dc.degree, dc.separable_degree, not dc.purely_inseparable))
    return out


# ---------------------------------------------------------------- compositeness

def _distinct_values(K, count, rng=None):
    """(L, emb, values): count distinct elements of an extension of K."""
    if K.is_finite:
        L, emb = field_with_at_least(K, count)
        vals = [L.from_key(k) for k in range(L.q)]
        if rng is not None:
            vals = rng.sample(vals, count)
        else:
            vals = vals[:count]
        return L, emb, vals
    if rng is not None:
        ints = rng.sample(range(-10 * count - 50, 10 * count + 50), count)
    else:
        ints = list(range(count))
    return K, Embedding(K, K), [K.from_int(k) for k in ints]


def fiber(F, lam):
    return F.add_const(F.K.neg(lam))


def fiber_is_reducible(F, lam):
    """True when F - lam is reducible or non-reduced over the algebraic closure."""
    u, facs = bivariate.factor(fiber(F, lam))
    if len(facs) != 1 or facs[0][1] != 1:
        return True
    return bivariate.absolute_component_count(facs[0][0]) > 1


def is_composite(F):
    """Decide F = P(G) with deg P >= 2 from d + 1 fibers."""
    if F.is_constant():
        raise PreconditionError("F must be nonconstant")
    d = F.total_degree
    L, emb, vals = _distinct_values(F.K, d + 1)
    FL = F.map_coeffs(emb) if not emb.is_identity else F
    for lam in vals:
        if not fiber_is_reducible(FL, lam):
            return False
    return True


# ---------------------------------------------------------------- fiber genus sampling

@dataclass
class FiberGenusSample:
    genus: Optional[int]
    frequency: int
    samples: int
    ambiguous: bool
    reducible: int
    field: str
    seed: int
    histogram: dict
    places: Optional[int]  # places at infinity of the sampled fibers of the modal genus
    places_histogram: dict

    def to_json(self):
        return {"genus": self.genus, "modeFrequency": self.frequency, "samples": self.samples,
                "ambiguous": self.ambiguous, "reducibleSamples": self.reducible,
                "sampleField": self.field, "seed": self.seed,
                "genusHistogram": self.histogram, "placesAtInfinity": self.places,
                "placesHistogram": self.places_histogram}


def _mode(hist):
    return min(hist, key=lambda g: (-hist[g], g))


def generic_fiber_genus(F, samples=None, seed=0, node_budget=DEFAULT_NODE_BUDGET):
    """Mode of the geometric genus of F - lambda over distinct sampled lambda.

    Reducible or non-reduced fibers count as samples without a genus.  The
    result is flagged ambiguous when the mode is attained fewer than
    samples - d^2 times.
    """
    d = F.total_degree
    if samples is None:
        samples = d * d + 7
    if samples < d * d + 2:
        raise PreconditionError(f"need at least d^2 + 2 = {d * d + 2} samples")
    rng = make_rng(seed)
    L, emb, vals = _distinct_values(F.K, samples, rng)
    FL = F if emb.is_identity else F.map_coeffs(emb)
    hist, places = {}, {}
    reducible = 0
    for lam in sorted(vals, key=L.key):
        if fiber_is_reducible(FL, lam):
            reducible += 1
            continue
        f = fiber(FL, lam)
        g = resolution.geometric_genus(f, node_budget, check=False)
        hist[g] = hist.get(g, 0) + 1
        n = sum(b.residue_degree for b in
                resolution.places_at_infinity(f, node_budget, check=False))
        places.setdefault(g, {})
        places[g][n] = places[g].get(n, 0) + 1
    if not hist:
        return FiberGenusSample(None, 0, samples, True, reducible, L.descriptor, seed, {},
                                None, {})
    mode = _mode(hist)
    freq = hist[mode]
    ambiguous = freq < samples - d * d
    return FiberGenusSample(mode, freq, samples, ambiguous, reducible, L.descriptor, seed,
                            {str(k): v for k, v in sorted(hist.items())},
                            _mode(places[mode]),
                            {str(k): v for k, v in sorted(places[mode].items())})


# ---------------------------------------------------------------- critical locus

@dataclass
class CriticalLocus:
    components: list       # irreducible BiPoly factors of the one-dimensional part
    constant_values: list  # (field, value) for components on which F is constant
    moving: bool           # F nonconstant on some one-dimensional component
    isolated_values: list  # (field, value) of F at isolated critical points
    field: object


def _point_on(C):
    """A point (L, emb, a, b) on the irreducible curve C."""
    K = C.K
    if C.deg_y <= 0:
        L, emb, roots = adjoin_root(K, C.univariate_x())
        return L, emb, roots[0], L.zero
    lc = C.to_ylist()[-1]
    k = 0
    while True:
        a = K.from_key(k) if K.is_finite else K.from_int(k)
        if K.is_finite and k >= K.q:
            # every element kills the leading coefficient: use an extension
            L, emb = field_with_at_least(K, K.q * K.q)
            P = _point_on(C.map_coeffs(emb))
            return P[0], emb.then(P[1]), P[2], P[3]
        if upoly.evaluate(K, lc, a) != K.zero:
            special = C.eval_x(a)
            if len(special) > 1:
                phi = upoly.irreducible_factors(K, special)[0]
                L, emb, roots = adjoin_root(K, phi)
                return L, emb, emb(a), roots[0]
        k += 1


def critical_locus(F):
    """One-dimensional and isolated parts of V(F_X, F_Y); F must not be a p-th power."""
    K = F.K
    fx, fy = F.deriv_x(), F.deriv_y()
    if fx.is_zero() and fy.is_zero():
        raise PreconditionError("both partial derivatives vanish: F is a p-th power")
    if fx.is_zero():
        G = fy
    elif fy.is_zero():
        G = fx
    else:
        G = bivariate.gcd(fx, fy)
    comps = [] if G.is_constant() else bivariate.irreducible_factors(G)
    consts = []
    moving = False
    for C in comps:
        L, emb, a, b = _point_on(C)
        FL = F.map_coeffs(emb) if not emb.is_identity else F
        CL = C.map_coeffs(emb) if not emb.is_identity else C
        c = FL.evaluate(a, b)
        if bivariate.gcd(CL, fiber(FL, c)).is_constant():
            moving = True
        else:
            consts.append((L, c))
    isolated = []
    if not fx.is_zero() and not fy.is_zero():
        A = bivariate.divexact(fx, G) if not G.is_constant() else fx
        B = bivariate.divexact(fy, G) if not G.is_constant() else fy
        if not A.is_constant() and not B.is_constant():
            pieces = [[h, B] for h in bivariate.irreducible_factors(A)]
            for L, emb, a, b, w in resolution.common_zero_orbits(K, pieces):
                FL = F.map_coeffs(emb) if not emb.is_identity else F
                isolated.append((L, FL.evaluate(a, b)))
    return CriticalLocus(comps, consts, moving, isolated, K)


def moving_singularities_at_finite_distance(F):
    return critical_locus(F).moving


def has_moving_singularities(generic_genus, pencil_g):
    return generic_genus < pencil_g


# ---------------------------------------------------------------- spectrum

@dataclass
class SpectrumResult:
    entries: list
    conclusive: bool
    method: str
    levels: list
    certificate: str

    @property
    def total(self):
        return sum(e.n - 1 for e in self.entries)


def _lambda_orbit(L, value):
    """Canonical description of the Galois orbit of an algebraic value over the prime field.

    Returns (key, M, representative, labels) where labels name every
    conjugate.
    """
    if L.is_finite:
        M, roots = canonical_conjugates(L, value)
        key = (M.degree, tuple(M.key(r) for r in roots))
        return key, M, roots[0], [(M.key(r), M.fmt(r)) for r in roots]
    m = minimal_polynomial(L, value)
    k = len(m) - 1
    if k == 1:
        v = -m[0]
        return (1, (QQ.key(v),)), QQ, v, [(QQ.key(v), QQ.fmt(v))]
    if k > 8:
        raise UnsupportedError("spectrum value of excessive degree")
    text = upoly.to_str(QQ, m, "T")
    M, emb, roots = adjoin_root(QQ, m)
    labels = [((k, text, i), f"RootOf({text}, {i})") for i in range(k)]
    return (k, tuple(QQ.key(c) for c in m)), M, roots[0], labels


def _minimal_field_name(M):
    if M.is_finite:
        return M.descriptor
    return "q" if M is QQ else f"q(deg {M.degree})"


def _fiber_count(F0, M, lam):
    """Number of distinct absolutely irreducible components of F0 - lam over M."""
    if M is F0.K:
        FM = F0
    elif M.is_finite:
        FM = F0.map_coeffs(finite_embedding(F0.K, M))
    else:
        FM = F0.map_coeffs(Embedding(QQ, M))
    return bivariate.absolute_irreducible_count(fiber(FM, lam))


def _entries_for(F0, orbit):
    key, M, rep, labels = orbit
    n = _fiber_count(F0, M, rep)
    if n < 2:
        return []
    name = _minimal_field_name(M)
    return [SpectrumEntry(text, name, n, (key[0], k)) for k, text in labels]


def spectrum_candidates(F, res, locus):
    """Algebraic values containing every reducible fiber (exact candidate method)."""
    vals = []
    vals.extend(locus.constant_values)
    vals.extend(locus.isolated_values)
    vals.extend(res.vertical_values)
    for K, P, Q in res.maps.values():
        # value at the point v = infinity of the exceptional line
        if len(P) == len(Q):
            vals.append((K, K.div(P[-1], Q[-1])))
        elif len(P) < len(Q):
            vals.append((K, K.zero))
        # ramification points: zeros of the Wronskian P'Q - PQ'
        W = upoly.sub(K, upoly.mul(K, upoly.deriv(K, P), Q), upoly.mul(K, P, upoly.deriv(K, Q)))
        if W:
            for phi in upoly.irreducible_factors(K, W):
                L, emb, roots = adjoin_root(K, phi)
                r = roots[0]
                qv = upoly.evaluate(L, emb.poly(Q), r)
                if qv != L.zero:
                    vals.append((L, L.div(upoly.evaluate(L, emb.poly(P), r), qv)))
    return vals


def reducible_fiber_spectrum(F, res=None, locus=None, ext_budget=DEFAULT_EXT_BUDGET,
                             node_budget=DEFAULT_NODE_BUDGET, orbit_cap=4000):
    """All lambda over the algebraic closure with F - lambda reducible.

    F is first rewritten over its prime field (coefficients are integers).
    Exact candidate method when critical values are finite in number and
    every dicritical restriction is separable; otherwise enumeration over
    F_{p^(2^i)} with stabilization and the d - 1 completeness certificate.
    """
    F0 = descend_to_prime_field(F)
    d = F0.total_degree
    K0 = F0.K
    if res is None or res.base_field is not K0:
        res = base_point_resolution(F0, node_budget, check=False)
    if locus is None or locus.field is not K0:
        locus = critical_locus(F0)
    separable = all(dc.separable_degree == dc.degree for dc in res.dicriticals)
    if K0.characteristic == 0 or (separable and not locus.moving):
        entries = {}
        for L, v in spectrum_candidates(F0, res, locus):
            orbit = _lambda_orbit(L, v)
            if orbit[0] in entries:
                continue
            entries[orbit[0]] = _entries_for(F0, orbit)
        flat = sorted((e for es in entries.values() for e in es), key=lambda e: e.sort_key)
        result = SpectrumResult(flat, True, "critical-values", [], "exact candidate set")
    else:
        result = _enumerate_spectrum(F0, d, ext_budget, orbit_cap)
    if result.total > d - 1:
        raise InternalInconsistency(
            f"reducible fibers give sum (n-1) = {result.total} > d - 1 = {d - 1}")
    return result


def _enumerate_spectrum(F0, d, ext_budget, orbit_cap):
    K0 = F0.K
    p = K0.characteristic
    entries = []
    counts = []
    levels = []
    D = 1
    orbits_done = 0
    while D <= ext_budget:
        M = finite_field(p, D)
        new = []
        seen = set()
        for k in range(M.q):
            lam = M.from_key(k)
            if lam in seen:
                continue
            if D > 1 and M.frobenius(lam, D // 2) == lam:
                continue
            orbit = [lam]
            c = M.frobenius(lam)
            while c != lam:
                orbit.append(c)
                c = M.frobenius(c)
            seen.update(orbit)
            if len(orbit) != D:
                continue
            orbits_done += 1
            if orbits_done > orbit_cap:
                return SpectrumResult(sorted(entries, key=lambda e: e.sort_key), False,
                                      "enumeration", levels, "orbit budget exhausted")
            n = _fiber_count(F0, M, lam)
            if n >= 2:
                for r in sorted(orbit, key=M.key):
                    new.append(SpectrumEntry(M.fmt(r), M.descriptor, n, (D, M.key(r))))
        entries.extend(new)
        counts.append(len(entries))
        levels.append({"extensionDegree": D, "reducibleCount": len(entries)})
        total = sum(e.n - 1 for e in entries)
        ordered = sorted(entries, key=lambda e: e.sort_key)
        if total == d - 1:
            return SpectrumResult(ordered, True, "enumeration", levels,
                                  "sum (n-1) reached the bound d - 1")
        if len(counts) >= 3 and counts[-1] == counts[-2] == counts[-3]:
            return SpectrumResult(ordered, True, "enumeration", levels,
                                  "count stable across two doublings")
        D *= 2
    return SpectrumResult(sorted(entries, key=lambda e: e.sort_key), False, "enumeration",
                          levels, "extension budget exhausted before stabilization")
