"""Command-line front end.

Commands: decompose, check, verify-bounds, sample, table.  All reports are
deterministic given (input, flags, seed): identical invocations produce
byte-identical output, independent of thread count.

Exit codes: 0 success / assertion passed; 1 assertion or verification failed;
2 parse error; 3 non-Einstein input; 4 optimizer found no feasible point.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import __version__
from . import berger, documents, predicates, problems
from ._kernels import BACKEND
from .berger import BergerForm
from .hamilton import stationarity_margin_min_sectional
from .report import Report
from .tensor import (
    duality_blocks, is_einstein, ricci_contract, standard_decompose, to_operator,
)

EXIT_OK = 0
EXIT_ASSERT_FAIL = 1
EXIT_PARSE_ERROR = 2
EXIT_NON_EINSTEIN = 3
EXIT_INFEASIBLE = 4

#: verification tolerances, fixed by the acceptance contract
TOL_DIRECT = 1e-3       # grid optimum vs target constant
TOL_CURVE = 1e-9        # analytic curve minimum
TOL_POSITIVITY = 1e-4   # nonnegativity tolerance for the three-eigenvalue sum
                        # (its closed-problem infimum is exactly 0, attained
                        # only where the strict pinching bounds touch)
TOL_WEYL = 1e-6         # numeric vs closed-form smallest-eigenvalue bound

BOUND_CHOICES = ("all", "three-positive", "four-positive", "upper-bound", "weyl-min")


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _load(path: str, tol: float):
    try:
        return documents.load_document(path, default_tol=tol)
    except OSError as exc:
        raise documents.DocumentError(str(exc)) from exc


def _doc_berger(doc: documents.InputDocument, tol: float) -> BergerForm:
    """Berger form of a document, raising NonEinsteinError for bad riemann input."""
    if doc.berger is not None:
        return doc.berger
    return berger.extract_from_tensor(doc.riemann, tol=tol)


def _float_list(values) -> list[float]:
    return [float(v) for v in values]


# ---------------------------------------------------------------------------
# decompose


def cmd_decompose(args) -> int:
    try:
        doc = _load(args.input, args.tol)
    except documents.DocumentError as exc:
        return _fail(EXIT_PARSE_ERROR, str(exc))

    rep = Report("decompose")
    rep.add("input", args.input)
    rep.add("kind", doc.kind)
    rep.add("tol", doc.tol)

    rm = doc.riemann if doc.riemann is not None else berger.berger_to_tensor(doc.berger)
    dec = standard_decompose(rm)
    sec = rep.section("standard-decomposition")
    sec.add("scalar-curvature", dec.scalar)
    sec.add("weyl-max-entry", float(np.max(np.abs(dec.weyl.components))))
    sec.add("traceless-ricci-max-entry",
            float(np.max(np.abs(ricci_contract(rm).traceless_part().matrix))))

    op = to_operator(rm)
    rep.add("operator-eigenvalues", _float_list(op.eigenvalues()))

    blocks = duality_blocks(op)
    sec = rep.section("duality-blocks")
    sec.add("scalar", blocks.scalar)
    sec.add("w-plus-eigenvalues", _float_list(np.linalg.eigvalsh(blocks.w_plus)))
    sec.add("w-minus-eigenvalues", _float_list(np.linalg.eigvalsh(blocks.w_minus)))
    sec.add("einstein-residual", blocks.einstein_residual)

    lam = is_einstein(rm, tol=doc.tol)
    if lam is None:
        rep.add("einstein", False)
        rep.add("berger", "not available: input is not Einstein "
                          f"(residual {blocks.einstein_residual!r})")
        print(rep.render(args.machine))
        return EXIT_NON_EINSTEIN

    rep.add("einstein", True)
    rep.add("einstein-constant", float(lam))
    bf = _doc_berger(doc, doc.tol)
    hs = berger.half_spectra(bf)
    sec = rep.section("berger-form")
    sec.add("a", _float_list(bf.a))
    sec.add("b", _float_list(bf.b))
    sec.add("lambda", bf.lam)
    sec = rep.section("half-spectra")
    sec.add("self-dual", _float_list(hs.lam))
    sec.add("anti-self-dual", _float_list(hs.mu))
    sec.add("stationarity-margin-min-sectional", stationarity_margin_min_sectional(bf))
    print(rep.render(args.machine))
    return EXIT_OK


# ---------------------------------------------------------------------------
# check


def cmd_check(args) -> int:
    try:
        doc = _load(args.input, args.tol)
    except documents.DocumentError as exc:
        return _fail(EXIT_PARSE_ERROR, str(exc))
    try:
        bf = _doc_berger(doc, doc.tol)
    except Exception as exc:
        return _fail(EXIT_NON_EINSTEIN, str(exc))

    table = predicates.table1_report(bf)
    rep = Report("check")
    rep.add("input", args.input)
    rep.add("einstein-constant", table.einstein_constant)
    rep.add("normalization", "margins at Einstein constant 1"
            + ("" if bf.lam == 1.0 else f" (input rescaled by {1.0 / bf.lam!r})"))
    sec = rep.section("margins")
    for name, cm in table.margins.items():
        sec.add(name, [cm.margin, cm.witness])
    sec = rep.section("pointwise-implications")
    for imp in table.verdicts:
        sec.add(f"{imp.antecedent} => {imp.consequent}", imp.satisfied)
    rep.add("not-evaluated", list(table.not_evaluated))

    exit_code = EXIT_OK
    if args.assert_condition is not None:
        try:
            cm = predicates.condition_margin(bf.normalized(), args.assert_condition)
        except KeyError as exc:
            return _fail(EXIT_PARSE_ERROR, f"unknown condition: {exc}")
        passed = cm.margin > args.tol
        sec = rep.section("assertion")
        sec.add("condition", cm.name)
        sec.add("margin", cm.margin)
        sec.add("strictness-threshold", args.tol)
        sec.add("passed", passed)
        if not passed:
            exit_code = EXIT_ASSERT_FAIL
    print(rep.render(args.machine))
    return exit_code


# ---------------------------------------------------------------------------
# verify-bounds


def _result_section(sec: Report, res) -> None:
    sec.add("feasible", res.feasible)
    if res.feasible:
        sec.add("best-value", res.best_value)
        for name, value in res.minimizer.items():
            sec.add(f"minimizer.{name}", value)
    sec.add("grid-resolution", res.grid_resolution)
    sec.add("refinement-depth", res.refinement_depth)
    sec.add("feasible-points", res.feasible_points_evaluated)
    sec.add("points-evaluated", res.points_evaluated)


def _verdict(sec: Report, passed: bool) -> bool:
    sec.add("status", "PASS" if passed else "FAIL")
    return passed


def cmd_verify_bounds(args) -> int:
    which = args.which
    # thread count is deliberately not reported: results are identical for
    # any sharding and reports must be byte-identical across thread counts
    rep = Report("verify-bounds")
    rep.add("kernel-backend", BACKEND)
    rep.add("grid", args.grid)
    rep.add("depth", args.depth)
    all_pass = True
    infeasible = False
    kw = dict(grid=args.grid, depth=args.depth, threads=args.threads)

    if which in ("all", "three-positive"):
        out = problems.three_positive_bound(**kw)
        sec = rep.section("three-positive-sectional-bound")
        sec.add("target", problems.THREE_POS_BOUND)
        body = sec.section("direct-minimization")
        _result_section(body, out.direct)
        ok = out.direct.feasible and out.direct.best_value >= problems.THREE_POS_BOUND - TOL_DIRECT
        all_pass &= _verdict(body, ok)
        infeasible |= not out.direct.feasible
        body = sec.section("curve-minimum")
        body.add("best-value", out.curve_min.best_value)
        body.add("minimizer.k", out.curve_min.minimizer["k"])
        body.add("abs-gap", abs(out.curve_min.best_value - problems.THREE_POS_BOUND))
        all_pass &= _verdict(
            body, abs(out.curve_min.best_value - problems.THREE_POS_BOUND) < TOL_CURVE)
        sec.add("band-window", list(out.band_window))
        sec.add("band-window-inside-[1,4]",
                1.0 <= out.band_window[0] and out.band_window[1] <= 4.0)
        sec.add("discarded-branch-empty", out.discarded_branch_empty)

    if which in ("all", "four-positive"):
        out = problems.four_positive_bound(**kw)
        sec = rep.section("four-positive-sectional-bound")
        sec.add("target", problems.FOUR_POS_BOUND)
        body = sec.section("direct-minimization")
        _result_section(body, out.direct)
        gap = (abs(out.direct.best_value - problems.FOUR_POS_BOUND)
               if out.direct.feasible else math.inf)
        body.add("abs-gap", gap)
        all_pass &= _verdict(body, gap < TOL_DIRECT)
        infeasible |= not out.direct.feasible
        body = sec.section("relaxed-no-stationarity")
        _result_section(body, out.relaxed)
        all_pass &= _verdict(
            body, out.relaxed.feasible and out.relaxed.best_value <= -1.0 / 3.0 + TOL_DIRECT)
        sec.add("scalar-root", out.scalar_root)
        sec.add("scalar-root-matches-target",
                bool(abs(out.scalar_root - problems.FOUR_POS_BOUND) < 1e-9))

    if which in ("all", "upper-bound"):
        res1 = problems.upper_bound_step1(**kw)
        sec = rep.section("upper-bound-step1")
        sec.add("sectional-upper-bound", problems.UPPER_K_BOUND)
        sec.add("target", problems.LOWER_K_BOUND)
        body = sec.section("direct-minimization")
        _result_section(body, res1)
        gap = (abs(res1.best_value - problems.LOWER_K_BOUND)
               if res1.feasible else math.inf)
        body.add("abs-gap", gap)
        all_pass &= _verdict(body, gap < TOL_DIRECT)
        infeasible |= not res1.feasible

        out2 = problems.upper_bound_step2(**kw)
        sec = rep.section("upper-bound-step2")
        for label, res in (("primary", out2.result), ("mirror", out2.mirror)):
            body = sec.section(label)
            _result_section(body, res)
            ok = res.feasible and res.best_value > -TOL_POSITIVITY
            all_pass &= _verdict(body, ok)
            infeasible |= not res.feasible

    if which in ("all", "weyl-min"):
        out = problems.weyl_min_bound(args.lam3, grid=args.grid, threads=args.threads)
        sec = rep.section("weyl-min-eigenvalue")
        sec.add("w3", out.w3)
        sec.add("analytic", out.analytic)
        if out.numeric is None:
            sec.add("numeric", "infeasible")
            infeasible = True
            all_pass = False
        else:
            sec.add("numeric", out.numeric)
            sec.add("abs-gap", abs(out.numeric - out.analytic))
            ok = abs(out.numeric - out.analytic) < TOL_WEYL
            if out.w3 > 0:
                strict = out.analytic > (1.0 - math.sqrt(3.0)) * out.w3
                sec.add("exceeds-(1-sqrt(3))*w3", strict)
                ok &= strict
            all_pass &= _verdict(sec, ok)

    print(rep.render(args.machine))
    if infeasible:
        return EXIT_INFEASIBLE
    return EXIT_OK if all_pass else EXIT_ASSERT_FAIL


# ---------------------------------------------------------------------------
# sample


def cmd_sample(args) -> int:
    if args.count < 1:
        return _fail(EXIT_PARSE_ERROR, "--count must be >= 1")
    if args.condition is not None:
        try:
            predicates.condition_margin(berger.round_sphere(), args.condition)
        except KeyError:
            return _fail(EXIT_PARSE_ERROR, f"unknown condition {args.condition!r}")
    emitted = 0
    examined = 0
    for a_rows, b_rows in berger.sample_batches(args.seed, args.lam):
        for i in range(a_rows.shape[0]):
            bf = BergerForm(a_rows[i], b_rows[i], args.lam)
            examined += 1
            if args.condition is not None:
                if predicates.condition_margin(bf.normalized(), args.condition).margin <= 0.0:
                    continue
            print(documents.emit_berger_document(bf))
            emitted += 1
            if emitted >= args.count:
                break
        if emitted >= args.count:
            break
    print(f"acceptance rate: {emitted}/{examined}", file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------
# table


def cmd_table(args) -> int:
    a, b = berger.sample_admissible_arrays(args.seed, 1.0, args.samples)
    margins = predicates.batch_margins(a, b)
    conditions = predicates.TABLE_CONDITIONS + ("6-positive",)
    holds = {name: margins[name] > 0.0 for name in conditions}

    rep = Report("table")
    rep.add("samples", args.samples)
    rep.add("seed", args.seed)
    sec = rep.section("condition-frequencies")
    for name in conditions:
        sec.add(name, int(np.count_nonzero(holds[name])))

    sec = rep.section("implication-matrix")
    for ante in conditions:
        for cons in conditions:
            if ante == cons:
                continue
            violations = int(np.count_nonzero(holds[ante] & ~holds[cons]))
            sec.add(f"{ante} => {cons}", violations)

    ok = True
    sec = rep.section("tabulated-arrows")
    for ante, cons, kind in predicates.TABLE_ARROWS:
        violations = int(np.count_nonzero(holds[ante] & ~holds[cons]))
        if kind == "pointwise":
            sec.add(f"{ante} => {cons}", f"{violations} violations (pointwise)")
            ok &= violations == 0
        else:
            sec.add(f"{ante} => {cons}",
                    f"{violations} pointwise counterexamples "
                    "(global implication - see verify-bounds)")
    for name in predicates.NOT_EVALUATED:
        sec.add(name, "not evaluated")
    rep.add("pointwise-arrows-clean", ok)
    print(rep.render(args.machine))
    return EXIT_OK if ok else EXIT_ASSERT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="einstein4",
        description="Curvature algebra and bound verification for Einstein "
                    "four-manifolds.  Curvature input uses 1-based indices and "
                    "the K(e_i,e_j) = R(i,j,i,j) > 0 sign convention on spheres.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--tol", type=float, default=1e-9,
                       help="symmetry/Einstein tolerance and assertion "
                            "strictness threshold (default 1e-9)")
        p.add_argument("--machine", action="store_true",
                       help="emit the report as JSON instead of text")

    p = sub.add_parser("decompose", help="standard, duality and Berger decompositions")
    p.add_argument("input", help="input document (JSON)")
    common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("check", help="evaluate all tabulated curvature conditions")
    p.add_argument("input", help="input document (JSON)")
    p.add_argument("--assert", dest="assert_condition", metavar="CONDITION",
                   help="exit 0 iff the named condition holds strictly")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify-bounds",
                       help="reproduce the sectional-curvature bounds numerically")
    p.add_argument("--which", choices=BOUND_CHOICES, default="all")
    p.add_argument("--grid", type=int, default=64, help="grid points per axis")
    p.add_argument("--depth", type=int, default=6, help="refinement rounds")
    p.add_argument("--threads", type=int, default=1, help="scan shards run in parallel")
    p.add_argument("--lam3", type=float, default=2.0 / 3.0,
                   help="largest half-Weyl eigenvalue for the weyl-min bound")
    common(p)
    p.set_defaults(func=cmd_verify_bounds)

    p = sub.add_parser("sample", help="emit admissible Berger documents (JSON lines)")
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lambda", dest="lam", type=float, default=1.0,
                   help="Einstein constant of the sampled forms")
    p.add_argument("--condition", help="emit only forms satisfying this condition strictly")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("table", help="implication matrix over sampled forms")
    p.add_argument("--samples", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_table)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
