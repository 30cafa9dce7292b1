"""Point blowups of the projective plane for single curves.

Points whose coordinates are not rational over the coefficient field are
handled through Galois orbits: each orbit is processed once, over an
explicit extension field holding one representative, and carries its orbit
size as a weight.  Sums over infinitely near points are weighted sums over
these orbit representatives, which equals the sum over all points of the
algebraic closure.
"""

import json
from dataclasses import dataclass, field
from typing import Optional

from genrat.algebra import bivariate, upoly
from genrat.algebra.bipoly import BiPoly, HomPoly, dehomogenize, homogenize
from genrat.algebra.fields import Embedding, adjoin_root
from genrat.errors import (BudgetExceeded, InternalInconsistency,
                           PreconditionError, ReducibleInputError)

DEFAULT_NODE_BUDGET = 5000


# ---------------------------------------------------------------- data types

@dataclass
class PlanePoint:
    """Representative of a Galois orbit of points of the projective plane.

    ``chart`` is "Z" for affine points (x, y), "X" for points [1 : y : z]
    and "Y" for points [x : 1 : z]; ``coords`` lie in ``field``.
    """

    chart: str
    coords: tuple
    field: object
    residue_degree: int

    def projective(self):
        K = self.field
        a, b = (K.fmt(c) for c in self.coords)
        if self.chart == "Z":
            return f"[{a}:{b}:1]"
        if self.chart == "X":
            return f"[1:{a}:{b}]"
        return f"[{a}:1:{b}]"

    def at_infinity(self):
        return self.chart != "Z" and self.coords[1] == self.field.zero

    def to_json(self):
        return {"point": self.projective(), "field": self.field.descriptor,
                "residueDegree": self.residue_degree}


@dataclass
class InfNearPoint:
    id: int
    parent: Optional[int]
    multiplicity: int
    weight: int
    residue_degree: int
    center: str
    field_descriptor: str
    contact: Optional[int] = None
    witness: Optional[str] = None
    children: list = field(default_factory=list)
    info: dict = field(default_factory=dict)


@dataclass
class Branch:
    """Galois orbit of branches of a curve centered on the line Z = 0.

    ``local_degree`` is the multiplicity of the branch at the first
    infinitely near point where it is separated from the other branches;
    ``residue_degree`` is the size of the orbit.
    """

    center: PlanePoint
    local_degree: int
    residue_degree: int


class ResolutionTree:
    def __init__(self, subject, node_budget=DEFAULT_NODE_BUDGET):
        self.subject = subject
        self.nodes = []
        self.roots = []
        self.node_budget = node_budget

    def add(self, parent, multiplicity, weight, center, K, contact=None):
        if len(self.nodes) >= self.node_budget:
            raise BudgetExceeded(
                f"resolution exceeded the node budget of {self.node_budget}")
        res_deg = weight if parent is None else self.nodes[parent].residue_degree * weight
        node = InfNearPoint(len(self.nodes), parent, multiplicity, weight, res_deg,
                            center, K.descriptor, contact)
        self.nodes.append(node)
        if parent is None:
            self.roots.append(node.id)
        else:
            self.nodes[parent].children.append(node.id)
        return node

    def subtree(self, root):
        stack = [root]
        while stack:
            n = self.nodes[stack.pop()]
            yield n
            stack.extend(reversed(n.children))

    def delta(self, root):
        """Weighted sum of m(m-1)/2 over the subtree (relative to the root's orbit)."""
        base = self.nodes[root].residue_degree
        total = 0
        for n in self.subtree(root):
            m = n.multiplicity
            total += (n.residue_degree // base) * m * (m - 1) // 2
        return total

    def multiplicity_sequence(self, root):
        """Multiplicities along the first-child chain from root."""
        seq = []
        n = self.nodes[root]
        while True:
            seq.append(n.multiplicity)
            if not n.children:
                return seq
            n = self.nodes[n.children[0]]

    def to_json(self):
        def rec(i):
            n = self.nodes[i]
            out = {"id": n.id, "m": n.multiplicity, "deg": n.residue_degree,
                   "weight": n.weight, "center": n.center, "field": n.field_descriptor}
            if n.contact is not None:
                out["contact"] = n.contact
            if n.witness:
                out["witness"] = n.witness
            for k in sorted(n.info):
                out[k] = n.info[k]
            out["children"] = [rec(c) for c in n.children]
            return out
        return {"subject": self.subject, "roots": [rec(r) for r in self.roots]}

    def to_dot(self, name="resolution"):
        lines = [f"digraph {name} {{"]
        for n in self.nodes:
            lines.append(f'  n{n.id} [label="m={n.multiplicity} deg={n.residue_degree}"];')
        for n in self.nodes:
            for c in n.children:
                lines.append(f"  n{n.id} -> n{c};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json_text(self):
        return json.dumps(self.to_json(), sort_keys=True)


# ---------------------------------------------------------------- point finding

def _lift(f, emb):
    return f if emb.is_identity else f.map_coeffs(emb)


def _x_candidates(piece):
    """Univariate polynomial in x vanishing at every common zero of the piece."""
    g1 = piece[0]
    K = g1.K
    if g1.deg_y <= 0:
        return g1.univariate_x()
    G = []
    for p in piece[1:]:
        if p.is_zero():
            continue
        G = upoly.gcd(K, G, bivariate.resultant(g1, p, "Y"))
        if len(G) == 1:
            return G
    if not G:
        raise PreconditionError("intersection is not finite")
    return G


def common_zero_orbits(K, pieces):
    """Galois orbits of points lying in the common zero set of some piece.

    Each piece is a list of polynomials whose first member is irreducible
    and coprime to the others.  Returns (L, emb, a, b, weight) with emb the
    embedding K -> L, (a, b) in L a representative and weight the orbit
    size over K.  Orbits are deduplicated exactly: x-coordinates by their
    minimal polynomial over K, y-coordinates by their minimal polynomial
    over K(a) with a fixed representative a.
    """
    by_phi = {}
    for piece in pieces:
        piece = [p for p in piece if not p.is_zero()]
        G = _x_candidates(piece)
        if len(G) <= 1:
            continue
        for phi in upoly.irreducible_factors(K, G):
            by_phi.setdefault(tuple(phi), []).append(piece)
    out = []
    for phi_t in sorted(by_phi, key=lambda t: upoly.key(K, list(t))):
        phi = list(phi_t)
        L, emb, roots = adjoin_root(K, phi)
        a = roots[0]
        psis = {}
        for piece in by_phi[phi_t]:
            H = []
            for p in piece:
                H = upoly.gcd(L, H, _lift(p, emb).eval_x(a))
                if len(H) == 1:
                    break
            if len(H) <= 1:
                continue
            for psi in upoly.irreducible_factors(L, H):
                psis[tuple(psi)] = psi
        for psi_t in sorted(psis, key=lambda t: upoly.key(L, list(t))):
            psi = psis[psi_t]
            M, emb2, roots2 = adjoin_root(L, psi)
            out.append((M, emb.then(emb2), emb2(a), roots2[0],
                        (len(phi) - 1) * (len(psi) - 1)))
    return out


def _singular_pieces(g, extra=()):
    """Pieces whose common zeros cover the singular locus of the squarefree g."""
    comps = bivariate.irreducible_factors(g)
    pieces = []
    for i, h in enumerate(comps):
        partials = [d for d in (h.deriv_x(), h.deriv_y()) if not d.is_zero()]
        pieces.append([h] + partials + list(extra))
        for h2 in comps[i + 1:]:
            pieces.append([h, h2] + list(extra))
    return pieces


def local_equation(g, L, emb, a, b):
    """g translated so that the point (a, b) in L becomes the origin."""
    return _lift(g, emb).shift(a, b)


def singular_points(h, node_budget=None):
    """Singular points of the squarefree form h, as (PlanePoint, multiplicity)."""
    K = h.K
    if h.is_zero():
        raise PreconditionError("zero form")
    _check_squarefree_form(h)
    out = []
    for chart, extra in (("Z", ()), ("X", "z"), ("Y", "xz")):
        g = dehomogenize(h, chart)
        if g.is_constant():
            continue
        extra_polys = []
        if "z" in extra:
            extra_polys.append(BiPoly(K, {(0, 1): K.one}))
        if "x" in extra:
            extra_polys.append(BiPoly(K, {(1, 0): K.one}))
        pieces = _singular_pieces(g, extra_polys)
        for L, emb, a, b, w in common_zero_orbits(K, pieces):
            m = local_equation(g, L, emb, a, b).order()
            if m >= 2:
                out.append((PlanePoint(chart, (a, b), L, w), m))
    return out


def _check_squarefree_form(h):
    g = dehomogenize(h, "Z")
    _, facs = bivariate.factor(g)
    if any(e > 1 for _, e in facs) or (h.d - g.total_degree) > 1:
        raise PreconditionError("form is not squarefree")


# ---------------------------------------------------------------- blowups

def chart_a(f, m):
    """Strict transform in the chart (u, v) -> (u, u v)."""
    return BiPoly(f.K, {(i + j - m, j): c for (i, j), c in f.terms.items()}, True)


def chart_b(f, m):
    """Strict transform in the chart (u, v) -> (u v, v)."""
    return BiPoly(f.K, {(i, i + j - m): c for (i, j), c in f.terms.items()}, True)


def tangent_polynomial(f, m):
    """The degree-m form of f restricted to the exceptional line: sum c_{m-j,j} v^j."""
    K = f.K
    t = [K.zero] * (m + 1)
    for (i, j), c in f.terms.items():
        if i + j == m:
            t[j] = c
    return upoly.trim(K, t)


def exceptional_points(f, m):
    """Points of the strict transform of f on the exceptional line.

    Yields (label, L, coordinate_or_None, weight, contact, local_equation,
    embedding) for every Galois orbit; the chart-B origin appears with
    coordinate None.
    """
    K = f.K
    t = tangent_polynomial(f, m)
    fa = chart_a(f, m)
    out = []
    _, facs = upoly.factor(K, t)
    for phi, e in facs:
        L, emb, roots = adjoin_root(K, phi)
        c = roots[0]
        local = _lift(fa, emb).shift(L.zero, c)
        out.append(("A", L, c, len(phi) - 1, e, local, emb))
    if len(t) - 1 < m:
        out.append(("B", K, None, 1, m - (len(t) - 1), chart_b(f, m), Embedding(K, K)))
    return out


def resolve_germ(tree, parent, f, weight, center, contact=None):
    """Blow up the germ of f at the origin until it is smooth and transverse."""
    K = f.K
    m = f.order()
    if m < 1:
        raise PreconditionError("germ does not pass through the origin")
    node = tree.add(parent, m, weight, center, K, contact)
    needs = m >= 2 or (contact is not None and contact > 1)
    if not needs:
        node.witness = "smooth" if contact is None else "transverse"
        return node
    for label, L, c, w, e, local, emb in exceptional_points(f, m):
        desc = f"E:{label}:{L.fmt(c)}" if c is not None else "E:B:0"
        resolve_germ(tree, node.id, local, w, desc, e)
    return node


# ---------------------------------------------------------------- curve invariants

def _points_at_infinity(f):
    """Orbits of points of the projective closure of V(f) on Z = 0, with local equations."""
    K = f.K
    h = homogenize(f)
    lead = f.leading_form()
    out = []
    # points [1 : c : 0]
    t = upoly.trim(K, [lead.coeff(f.total_degree - j, j) for j in range(f.total_degree + 1)])
    gx = dehomogenize(h, "X")  # variables (y, z)
    for phi in upoly.irreducible_factors(K, t):
        L, emb, roots = adjoin_root(K, phi)
        c = roots[0]
        local = _lift(gx, emb).shift(c, L.zero)
        out.append((PlanePoint("X", (c, L.zero), L, len(phi) - 1), local))
    if lead.coeff(0, f.total_degree) == K.zero:
        gy = dehomogenize(h, "Y")  # variables (x, z)
        out.append((PlanePoint("Y", (K.zero, K.zero), K, 1), gy))
    return out


def _affine_singular_points(f):
    K = f.K
    out = []
    for L, emb, a, b, w in common_zero_orbits(K, _singular_pieces(f)):
        local = local_equation(f, L, emb, a, b)
        if local.order() >= 2:
            out.append((PlanePoint("Z", (a, b), L, w), local))
    return out


def curve_resolution(f, node_budget=DEFAULT_NODE_BUDGET, include_infinity_smooth=False):
    """Resolution tree of the projective closure of V(f) (f squarefree BiPoly).

    Roots are the singular points (and, with ``include_infinity_smooth``,
    every point at infinity).
    """
    tree = ResolutionTree(f"curve {f.to_str()} over {f.K.descriptor}", node_budget)
    for pt, local in _affine_singular_points(f):
        resolve_germ(tree, None, local, pt.residue_degree, pt.projective())
    for pt, local in _points_at_infinity(f):
        if include_infinity_smooth or local.order() >= 2:
            resolve_germ(tree, None, local, pt.residue_degree, pt.projective())
    return tree


def arithmetic_genus(d):
    return (d - 1) * (d - 2) // 2


def geometric_genus(f, node_budget=DEFAULT_NODE_BUDGET, check=True):
    """Geometric genus of the projective closure of the curve f = 0.

    ``f`` may be a BiPoly or a HomPoly; it must be absolutely irreducible.
    """
    if isinstance(f, HomPoly):
        f = _affine_of_form(f)
    if check:
        require_absolutely_irreducible(f)
    tree = curve_resolution(f, node_budget)
    delta = sum(tree.nodes[r].residue_degree * tree.delta(r) for r in tree.roots)
    g = arithmetic_genus(f.total_degree) - delta
    if g < 0:
        raise InternalInconsistency(f"negative genus {g} for {f.to_str()}")
    return g


def _affine_of_form(h):
    f = dehomogenize(h, "Z")
    if f.total_degree != h.d:
        raise ReducibleInputError("form contains the line at infinity")
    return f


def require_absolutely_irreducible(f):
    if f.is_constant():
        raise PreconditionError("constant polynomial")
    if not bivariate.is_absolutely_irreducible(f):
        raise ReducibleInputError(f"{f.to_str()} is reducible over the algebraic closure")


def delta_invariant(tree, root):
    for m in tree.subtree(root):
        if not m.children and m.multiplicity >= 2:
            raise PreconditionError("incomplete tree")
    return tree.delta(root)


def places_at_infinity(f, node_budget=DEFAULT_NODE_BUDGET, check=True):
    """Galois orbits of branches of the closure of V(f) on the line at infinity."""
    if check:
        if not bivariate.is_irreducible(f):
            raise ReducibleInputError(f"{f.to_str()} is reducible")
    tree = ResolutionTree(f"branches at infinity of {f.to_str()}", node_budget)
    out = []
    for pt, local in _points_at_infinity(f):
        root = resolve_germ(tree, None, local, pt.residue_degree, pt.projective())
        out.extend(_branch_records(tree, root.id, pt))
    return out


def _branch_records(tree, root, pt):
    """One record per leaf of the subtree: each leaf is an orbit of branches."""
    out = []
    for leaf in tree.subtree(root):
        if leaf.children:
            continue
        node = leaf
        while node.parent is not None and node.weight == 1:
            parent = tree.nodes[node.parent]
            if sum(1 for x in tree.subtree(parent.id) if not x.children) != 1:
                break
            node = parent
        out.append(Branch(pt, node.multiplicity, leaf.residue_degree))
    return out


def count_places_at_infinity(f, node_budget=DEFAULT_NODE_BUDGET):
    return sum(b.residue_degree for b in places_at_infinity(f, node_budget))
