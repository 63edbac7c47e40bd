"""Command-line interface.

Exit codes: 0 success, 1 validation/check failure, 2 numerical
non-convergence, 3 malformed input.
"""

import argparse
import json
import sys

from . import __version__, checks, document as doc_mod, extremal
from . import polygon as pg, reduced, render
from .errors import (ConvergenceFailure, HypredError, InvalidN,
                     MalformedDocument, ValidationFailure)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_NO_CONVERGENCE = 2
EXIT_MALFORMED = 3


def _parser():
    p = argparse.ArgumentParser(
        prog="hypred",
        description="Ordinary reduced polygons in the hyperbolic plane: "
                    "construct, validate, measure, verify.")
    p.add_argument("--version", action="version", version=f"hypred {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("regular", help="write a regular reduced n-gon document")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--w", type=float, required=True)
    sp.add_argument("--out", required=True)

    sp = sub.add_parser("construct", help="write a sampled non-regular instance")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--w", type=float, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--amplitude", type=float, default=0.1)
    sp.add_argument("--out", required=True)

    sp = sub.add_parser("validate", help="validate a polygon document")
    sp.add_argument("file")
    sp.add_argument("--tol", type=float, default=reduced.DIST_TOL,
                    help="tolerance on |distance - w| (default %(default)g)")
    sp.add_argument("--covering-samples", type=int, default=2048)

    sp = sub.add_parser("area", help="three area computations for a document")
    sp.add_argument("file")

    sp = sub.add_parser("thickness", help="thickness with its witness line")
    sp.add_argument("file")

    sp = sub.add_parser("optimize", help="maximize the area formula over angles")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--w", type=float, required=True)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--starts", type=int, default=20)

    sp = sub.add_parser("table", help="regular-area monotonicity table as CSV")
    sp.add_argument("--w", type=float, required=True)
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--out", required=True)

    sp = sub.add_parser("check", help="run the full property suite")
    sp.add_argument("--w", type=float, default=1.0)
    sp.add_argument("--n", type=int, default=7)
    sp.add_argument("--seed", type=int, default=1)
    sp.add_argument("--cases", type=int, default=100,
                    help="sampled instances in the pool (default %(default)s)")
    sp.add_argument("--covering-samples", type=int, default=10_000)

    sp = sub.add_parser("render", help="render a document to SVG")
    sp.add_argument("file")
    sp.add_argument("--out", required=True)
    sp.add_argument("--samples", type=int, default=64)
    sp.add_argument("--butterflies", action="store_true")
    return p


def _load_polygon(path):
    try:
        doc = doc_mod.load(path)
        return doc, doc_mod.as_polygon(doc)
    except FileNotFoundError as exc:
        raise MalformedDocument(str(exc)) from exc
    except HypredError:
        raise
    except ValueError as exc:
        raise MalformedDocument(str(exc)) from exc


def _emit(payload):
    print(json.dumps(payload, indent=2, sort_keys=False))


def cmd_regular(args):
    orp = reduced.regular_reduced_ngon(args.n, args.w)
    doc_mod.save(doc_mod.document_from_reduced(orp, metadata={"construction": "regular"}),
                 args.out)
    return EXIT_OK


def cmd_construct(args):
    orp = reduced.sample_ordinary_reduced(args.n, args.w, seed=args.seed,
                                          amplitude=args.amplitude)
    doc_mod.save(doc_mod.document_from_reduced(
        orp, metadata={"construction": "sampled", "seed": str(args.seed),
                       "amplitude": repr(args.amplitude)}), args.out)
    return EXIT_OK


def cmd_validate(args):
    doc, poly = _load_polygon(args.file)
    report = reduced.validate(poly, doc.w, covering_samples=args.covering_samples,
                              dist_tol=args.tol)
    _emit(report.as_dict())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_area(args):
    doc, poly = _load_polygon(args.file)
    a_gb = pg.gauss_bonnet_area(poly)
    a_tri = pg.triangulation_area(poly)
    values = {"angle_defect": a_gb, "triangulation": a_tri}
    if doc.phis is not None:
        values["angle_formula"] = reduced.area_from_crossing_angles(doc.w, doc.phis)
    else:
        bfs = reduced.extract_butterflies(poly, doc.w)
        values["angle_formula"] = reduced.area_from_crossing_angles(
            doc.w, [bf.phi for bf in bfs])
    vs = list(values.values())
    values["max_pairwise_deviation"] = max(
        abs(a - b) for i, a in enumerate(vs) for b in vs[i + 1:])
    _emit(values)
    return EXIT_OK


def cmd_thickness(args):
    _, poly = _load_polygon(args.file)
    value, witness = pg.thickness(poly)
    _emit({"thickness": value,
           "witness": {"kind": witness.kind, "index": witness.index,
                       "theta": witness.theta,
                       "normal": [float(c) for c in witness.line.normal]}})
    return EXIT_OK


def cmd_optimize(args):
    results = [extremal.maximize_area(args.w, args.n, tol=args.tol, seed=s)
               for s in range(args.starts)]
    best = max(results, key=lambda r: r.max_value)
    _emit({"max_value": best.max_value,
           "argmax": [float(v) for v in best.argmax.values],
           "iterations": best.iterations,
           "first_order_residual": best.first_order_residual,
           "distance_to_uniform": best.distance_to_uniform,
           "starts": args.starts,
           "all_converged_to_uniform":
               all(r.distance_to_uniform <= 1e-6 for r in results)})
    return EXIT_OK


def cmd_table(args):
    table = extremal.monotonicity_table(args.w, args.n_max)
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write(table.to_csv())
    return EXIT_OK


def cmd_check(args):
    report = checks.run_full_check(w=args.w, n=args.n, seed=args.seed,
                                   cases=args.cases,
                                   covering_samples=args.covering_samples)
    for line in report.lines():
        print(line)
    print(f"overall: {'pass' if report.passed else 'FAIL'}")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_render(args):
    doc, _ = _load_polygon(args.file)
    svg = render.render_svg(doc, samples_per_edge=args.samples,
                            show_butterflies=args.butterflies)
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write(svg)
    return EXIT_OK


HANDLERS = {
    "regular": cmd_regular,
    "construct": cmd_construct,
    "validate": cmd_validate,
    "area": cmd_area,
    "thickness": cmd_thickness,
    "optimize": cmd_optimize,
    "table": cmd_table,
    "check": cmd_check,
    "render": cmd_render,
}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return HANDLERS[args.command](args)
    except MalformedDocument as exc:
        print(f"error: malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except ConvergenceFailure as exc:
        print(f"error: did not converge: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except (ValidationFailure, InvalidN, HypredError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
