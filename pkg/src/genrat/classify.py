"""Classification report: field generator, pseudo field generator and fiber predicates.

Every predicate is computed for the core H of F, where F = H^(p^e) with H
not a p-th power.  The pencil data (genus, dicriticals, spectrum) reported
for F are those of H; F itself is generally rational only when e = 0.
"""

import json
from dataclasses import dataclass, field
from typing import Optional

from genrat import pencil, resolution
from genrat.algebra import bivariate
from genrat.errors import InternalInconsistency, PreconditionError

SCHEMA_VERSION = "1.0"


@dataclass
class Config:
    samples: Optional[int] = None
    seed: int = 0
    ext_budget: int = pencil.DEFAULT_EXT_BUDGET
    node_budget: int = resolution.DEFAULT_NODE_BUDGET
    spectrum: bool = True

    def __post_init__(self):
        if self.ext_budget < 1 or self.node_budget < 1:
            raise PreconditionError("budgets must be positive")
        if self.samples is not None and self.samples < 1:
            raise PreconditionError("sample count must be positive")


@dataclass
class ClassificationReport:
    polynomial: str
    field: str
    degree: int
    composite: bool
    in_ap: bool
    core: str
    exponent: int
    generally_rational: Optional[bool] = None
    pencil_genus: Optional[int] = None
    generic_fiber_genus: Optional[int] = None
    field_generator: Optional[bool] = None
    good_field_generator: Optional[bool] = None
    pfg: Optional[bool] = None
    good_pfg: Optional[bool] = None
    moving_singularities: Optional[bool] = None
    moving_singularities_finite_distance: Optional[bool] = None
    dicriticals: list = field(default_factory=list)
    t: Optional[int] = None
    spectrum: Optional[list] = None
    theorem111: Optional[dict] = None
    polynomial_curve_fibers: Optional[bool] = None
    line_fibers: Optional[bool] = None
    variable: Optional[bool] = None
    general_fiber_places: Optional[int] = None
    tree: Optional[resolution.ResolutionTree] = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def inconclusive(self):
        return list(self.diagnostics.get("inconclusive", []))

    def to_json(self):
        return {
            "version": SCHEMA_VERSION,
            "input": {"polynomial": self.polynomial, "field": self.field, "degree": self.degree},
            "field": self.field,
            "composite": self.composite,
            "inAp": self.in_ap,
            "generallyRational": self.generally_rational,
            "pencilGenus": self.pencil_genus,
            "genericFiberGenus": self.generic_fiber_genus,
            "fieldGenerator": self.field_generator,
            "goodFieldGenerator": self.good_field_generator,
            "pfg": self.pfg,
            "goodPfg": self.good_pfg,
            "movingSingularities": self.moving_singularities,
            "movingSingularitiesFiniteDistance": self.moving_singularities_finite_distance,
            "dicriticals": [dc.to_json() for dc in self.dicriticals],
            "t": self.t,
            "spectrum": None if self.spectrum is None else [e.to_json() for e in self.spectrum],
            "theorem111": self.theorem111,
            "polynomialCurveFibers": self.polynomial_curve_fibers,
            "lineFibers": self.line_fibers,
            "variable": self.variable,
            "diagnostics": self.diagnostics,
        }

    def to_json_text(self):
        return json.dumps(self.to_json(), indent=2, sort_keys=False) + "\n"


def _and(*vals):
    """Three-valued conjunction: False wins, then None (unknown)."""
    if any(v is False for v in vals):
        return False
    if any(v is None for v in vals):
        return None
    return True


def zero_fiber_places(F, node_budget):
    """Places at infinity of F = 0 over the closure (summed over components)."""
    H = bivariate.squarefree_part(F)
    return sum(b.residue_degree for b in
               resolution.places_at_infinity(H, node_budget, check=False))


def classify(F, config=None, text=None):
    """Build the classification report of the nonconstant polynomial F."""
    config = config or Config()
    if F.is_constant():
        raise PreconditionError("F must be nonconstant")
    K = F.K
    H, e = bivariate.strip_pth_powers(F)
    report = ClassificationReport(text if text is not None else F.to_str(), K.descriptor,
                                  F.total_degree, False, e > 0, H.to_str(), e)
    diag = report.diagnostics
    diag["core"] = {"polynomial": H.to_str(), "exponent": e, "degree": H.total_degree}
    diag["inconclusive"] = []
    if pencil.is_composite(H):
        # A composite core has reducible general fibers, so every predicate
        # built on general rationality is false; pencil data is not computed.
        report.composite = True
        diag["shortReport"] = "core is composite"
        report.generally_rational = report.pfg = report.field_generator = False
        report.polynomial_curve_fibers = report.line_fibers = report.variable = False
        _check_lattice(report)
        return report
    report.composite = e > 0

    res = pencil.base_point_resolution(H, config.node_budget, check=False)
    report.tree = res.tree
    d = H.total_degree
    g = pencil.pencil_genus(res, d)
    report.pencil_genus = g
    dics = pencil.dicriticals(res)
    report.dicriticals = dics
    report.t = len(dics)
    diag["basePoints"] = len(res.base_points)
    diag["separableDegreeSum"] = sum(dc.separable_degree for dc in dics)

    sample = pencil.generic_fiber_genus(H, config.samples, config.seed, config.node_budget)
    diag["genericFiber"] = sample.to_json()
    if sample.ambiguous:
        diag["inconclusive"].append("generic fiber genus sampling is ambiguous")
        gen = None
    else:
        gen = sample.genus
        report.general_fiber_places = sample.places
    report.generic_fiber_genus = gen

    report.moving_singularities_finite_distance = \
        pencil.moving_singularities_at_finite_distance(H)
    moving = None if gen is None else pencil.has_moving_singularities(gen, g)
    report.moving_singularities = moving

    gr_core = None if gen is None else gen == 0
    gr = _and(gr_core, e == 0)
    report.generally_rational = gr
    report.pfg = gr_core
    fg = _and(gr, None if moving is None else not moving)
    report.field_generator = fg
    if fg is not None and fg != (not report.composite and g == 0):
        raise InternalInconsistency(
            f"field generator routes disagree: sampled {fg}, pencil genus {g}")
    if fg:
        report.good_field_generator = any(dc.degree == 1 for dc in dics)
    if gr_core:
        report.good_pfg = any(dc.purely_inseparable for dc in dics)
    pure_single = len(dics) == 1 and dics[0].purely_inseparable
    report.polynomial_curve_fibers = _and(gr, pure_single)
    report.line_fibers = _and(report.polynomial_curve_fibers,
                              not report.moving_singularities_finite_distance)
    if fg:
        report.variable = zero_fiber_places(F, config.node_budget) == 1
    else:
        report.variable = fg  # False, or None when undecided

    if config.spectrum:
        spectrum = pencil.reducible_fiber_spectrum(H, res if H.K.prime_field is H.K else None,
                                               ext_budget=config.ext_budget,
                                               node_budget=config.node_budget)
        diag["spectrum"] = {"method": spectrum.method, "conclusive": spectrum.conclusive,
                            "certificate": spectrum.certificate, "levels": spectrum.levels}
        report.spectrum = spectrum.entries
        if not spectrum.conclusive:
            diag["inconclusive"].append("reducible fiber spectrum did not stabilize")
        if gr:
            rhs = sum(x.n - 1 for x in spectrum.entries)
            report.theorem111 = {"lhs": report.t - 1, "rhs": rhs,
                                 "holds": (report.t - 1 == rhs) if spectrum.conclusive else None}
    _check_lattice(report)
    return report


def _check_lattice(r):
    """Implications between the predicates; a violation is an internal error."""
    def implies(a, b):
        return not (a is True and b is False)

    rules = [
        (r.field_generator, r.generally_rational, "field generator is generally rational"),
        (r.field_generator, None if r.moving_singularities is None else not r.moving_singularities,
         "field generator has no moving singularities"),
        (r.line_fibers, r.polynomial_curve_fibers, "line fibers are polynomial curves"),
        (r.polynomial_curve_fibers, r.generally_rational, "polynomial curves are rational"),
        (r.variable, r.field_generator, "variable is a field generator"),
        (r.variable, r.line_fibers, "variable has line fibers"),
        (_and(r.field_generator, r.polynomial_curve_fibers), r.variable,
         "field generator with polynomial curve fibers is a variable"),
        (r.generally_rational, r.pfg, "generally rational implies pseudo field generator"),
    ]
    for a, b, what in rules:
        if not implies(a, b):
            raise InternalInconsistency(f"implication violated: {what}")


def check_theorem111(F, config=None):
    """(t, sum over reducible fibers of n - 1, holds) for a generally rational F."""
    config = config or Config()
    r = classify(F, config)
    if r.generally_rational is not True:
        raise PreconditionError("the identity needs a generally rational polynomial")
    if r.theorem111 is None or r.theorem111["holds"] is None:
        raise PreconditionError("spectrum is inconclusive")
    return r.t, r.theorem111["rhs"], r.theorem111["holds"]


def characteristic_zero_consistent(r):
    """Over the rationals pseudo field generators are field generators."""
    return r.pfg == r.field_generator and r.good_pfg == r.good_field_generator
