"""Command-line interface: ``grp analyze | spectrum | curve | corpus | oracle``."""

import argparse
import json
import sys

from genrat import classify, oracle, pencil, resolution
from genrat.algebra.bipoly import parse_element, parse_homogeneous, parse_polynomial
from genrat.algebra.fields import parse_field
from genrat.errors import GenratError

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INCONCLUSIVE = 2


def _positive(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _dump(obj):
    return json.dumps(obj, indent=2) + "\n"


def _config(args):
    return classify.Config(samples=args.samples, seed=args.seed, ext_budget=args.ext_budget,
                           node_budget=args.node_budget)


def cmd_analyze(args):
    K = parse_field(args.field)
    F = parse_polynomial(args.poly, K)
    report = classify.classify(F, _config(args), text=args.poly)
    data = report.to_json()
    data["diagnostics"]["config"] = {"samples": args.samples, "seed": args.seed,
                                     "extBudget": args.ext_budget,
                                     "nodeBudget": args.node_budget}
    _write(args.json, _dump(data))
    if args.dot and report.tree is not None:
        _write(args.dot, report.tree.to_dot("pencil"))
    if report.inconclusive:
        for flag in report.inconclusive:
            print(f"inconclusive: {flag}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_spectrum(args):
    K = parse_field(args.field)
    F = parse_polynomial(args.poly, K)
    if pencil.is_composite(F):
        raise GenratError(f"{F.to_str()} is composite: every fiber is reducible")
    spectrum = pencil.reducible_fiber_spectrum(F, ext_budget=args.ext_budget,
                                           node_budget=args.node_budget)
    _write(args.json, _dump([e.to_json() for e in spectrum.entries]))
    if not spectrum.conclusive:
        print(f"inconclusive: {spectrum.certificate}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_curve(args):
    K = parse_field(args.field)
    if args.poly_hom:
        h = parse_homogeneous(args.poly_hom, K)
        f = resolution._affine_of_form(h)
    else:
        f = parse_polynomial(args.poly, K)
    tree = resolution.curve_resolution(f, args.node_budget)
    out = {"curve": f.to_str(), "field": K.descriptor,
           "degree": f.total_degree,
           "arithmeticGenus": resolution.arithmetic_genus(f.total_degree),
           "geometricGenus": resolution.geometric_genus(f, args.node_budget),
           "singularPoints": [{"point": tree.nodes[r].center,
                               "multiplicitySequence": tree.multiplicity_sequence(r),
                               "delta": tree.delta(r),
                               "residueDegree": tree.nodes[r].residue_degree}
                              for r in tree.roots],
           "placesAtInfinity": resolution.count_places_at_infinity(f, args.node_budget)}
    _write(args.json, _dump(out))
    if args.dot:
        _write(args.dot, tree.to_dot("curve"))
    return EXIT_OK


def cmd_corpus(args):
    from genrat.corpus import check_entry, load_corpus
    entries = load_corpus()
    if args.only:
        unknown = sorted(set(args.only) - {e.name for e in entries})
        if unknown:
            raise GenratError(f"unknown corpus entries: {', '.join(unknown)}")
        entries = [e for e in entries if e.name in args.only]
    failed = 0
    rows = []
    for entry in entries:
        try:
            report, bad = check_entry(entry, _config(args))
        except GenratError as exc:
            bad = [("error", None, str(exc))]
        status = "PASS" if not bad else "FAIL"
        failed += bool(bad)
        print(f"{status}  {entry.name:24s} {entry.field:6s} {entry.poly}")
        for key, want, got in bad:
            print(f"      {key}: expected {json.dumps(want)}, got {json.dumps(got)}")
        rows.append({"name": entry.name, "status": status,
                     "mismatches": [{"key": k, "expected": w, "actual": g} for k, w, g in bad]})
    print(f"{len(entries) - failed}/{len(entries)} corpus entries pass")
    if args.json:
        _write(args.json, _dump(rows))
    return EXIT_OK if not failed else EXIT_ERROR


def cmd_param_search(args):
    K = parse_field(args.field)
    F = parse_polynomial(args.poly, K)
    lam = parse_element(args.lam, K)
    par = oracle.parametrization_search(F, lam, args.budget)
    out = {"polynomial": F.to_str(), "field": K.descriptor, "lambda": K.fmt(lam),
           "rational": par is not None,
           "parametrization": None if par is None else par.to_json(K)}
    _write(args.json, _dump(out))
    return EXIT_OK


def cmd_point_count(args):
    K = parse_field(args.field)
    h = parse_homogeneous(args.poly_hom, K)
    g = oracle.point_count_genus(h, args.max_ext)
    _write(args.json, _dump({"curve": args.poly_hom, "field": K.descriptor, "genus": g,
                             "maxExtension": args.max_ext}))
    return EXIT_OK if g is not None else EXIT_INCONCLUSIVE


def cmd_brute_spectrum(args):
    K = parse_field(args.field)
    F = parse_polynomial(args.poly, K)
    entries = oracle.brute_spectrum(F, args.ext)
    _write(args.json, _dump([e.to_json() for e in entries]))
    return EXIT_OK


def _common(p, poly=True):
    p.add_argument("--field", required=True, help="q, fp:<p> or fp:<p>^<k>")
    if poly:
        p.add_argument("--poly", required=True, help="polynomial in X and Y")
    p.add_argument("--json", help="output path (default: standard output)")


def _budgets(p):
    p.add_argument("--samples", type=_positive, default=None,
                   help="fibers sampled for the generic genus (default d^2 + 7)")
    p.add_argument("--seed", type=int, default=0, help="seed for fiber sampling")
    p.add_argument("--ext-budget", type=_positive, default=pencil.DEFAULT_EXT_BUDGET,
                   help="largest extension degree searched for reducible fibers")
    p.add_argument("--node-budget", type=_positive, default=resolution.DEFAULT_NODE_BUDGET,
                   help="largest number of infinitely near points in a resolution")


class _Parser(argparse.ArgumentParser):
    """Usage errors exit 1 so that exit 2 always means an inconclusive run."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(prog="grp", description=(
        "Decide whether a plane polynomial is a field generator, a pseudo field "
        "generator or generally rational, with its dicriticals and reducible fibers."))
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="classification report of one polynomial")
    _common(p)
    _budgets(p)
    p.add_argument("--dot", help="write the base point resolution of the pencil as DOT")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("spectrum", help="reducible fibers of one polynomial")
    _common(p)
    _budgets(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("curve", help="singularities and genus of one plane curve")
    _common(p, poly=False)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--poly", help="affine equation in X and Y")
    group.add_argument("--poly-hom", help="ternary form in X, Y and Z")
    p.add_argument("--node-budget", type=_positive, default=resolution.DEFAULT_NODE_BUDGET)
    p.add_argument("--dot", help="write the resolution tree as DOT")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("corpus", help="run the built-in corpus against its expected table")
    _budgets(p)
    p.add_argument("--only", nargs="*", help="names of corpus entries to run")
    p.add_argument("--json", help="write the pass/fail matrix as JSON")
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("oracle", help="brute-force verifiers")
    osub = p.add_subparsers(dest="oracle", required=True, parser_class=_Parser)
    q = osub.add_parser("param-search", help="search a rational parametrization of F = lambda")
    _common(q)
    q.add_argument("--lambda", dest="lam", default="0", help="fiber value (polynomial in a)")
    q.add_argument("--budget", type=_positive, default=oracle.DEFAULT_SEARCH_BUDGET)
    q.set_defaults(func=cmd_param_search)
    q = osub.add_parser("point-count", help="genus of a smooth curve from point counts")
    _common(q, poly=False)
    q.add_argument("--poly-hom", required=True, help="ternary form in X, Y and Z")
    q.add_argument("--max-ext", type=_positive, default=3)
    q.set_defaults(func=cmd_point_count)
    q = osub.add_parser("brute-spectrum", help="factor every fiber over one extension")
    _common(q)
    q.add_argument("--ext", type=_positive, default=1, help="extension degree")
    q.set_defaults(func=cmd_brute_spectrum)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code
    try:
        return args.func(args)
    except GenratError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
