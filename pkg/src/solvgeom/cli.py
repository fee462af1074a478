"""Command-line front end: build the algebras, run the checks, emit reports.

Reports are plain text: two comment lines echoing the command and the seed,
then one tab-separated record per check with fields

    name  status  value  tolerance  claim

where status is "pass", "fail", or "evidence" (search and sampling outputs
that support a claim without proving it) and claim is a stable slug naming
the property being checked ("plumbing" for infrastructure records).
Identical invocations with the same --seed produce byte-identical reports.

Exit codes: 0 = every check passed, 1 = at least one check failed,
2 = usage or input error.
"""

import argparse
import itertools
import math
import sys

import numpy as np

from . import __version__
from .algebra import deserialize, iwasawa_check, validate
from .carnot import (
    DataTriple,
    _orthonormalize_family,
    build_solvmanifold,
    classify_uniform_so4,
    complex_hyperbolic_triple,
    einstein_conditions,
    is_uniform,
    real_hyperbolic_triple,
    search_uniform,
    so4_criterion,
)
from .curvature import einstein_verdict, eigenvalue_type, ricci, sectional
from .so6family import (
    angle_to_centralizer,
    bracket_angle,
    bracket_angle_closed_form,
    centralizer_in_so6,
    family_grid,
    family_report,
    induced_triple,
    negative_curvature_margin,
    W_of,
)
from .symtwist import (
    bracket_table,
    build_sl_nH,
    build_sl_nR,
    build_so_nH,
    build_so_pq,
    build_sp_pq,
    build_su_pq,
    build_type_iv_sl,
    einstein_preservation_check,
    enumerate_twists,
    paper_twist_sl_nH,
    paper_twist_so_nH,
    positive_curvature_witness,
    restricted_height_twist,
    twist,
    twist_closure_check,
    type_iv_twist,
    TwistAssignment,
    wa_twist,
)

DEFAULT_SEED = 0xE15731  # 14767921
TOL_EXACT = 1e-10
TOL_OPT = 1e-8

_SO4_EXPECTED_COUNTS = {1: 1, 2: 2, 3: 2, 4: 2, 5: 1, 6: 1}


def _fmt(v):
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


class Report:
    def __init__(self, command, seed):
        self.command = command
        self.seed = seed
        self.records = []

    def add(self, name, status, value=None, tolerance=None, claim="plumbing"):
        if status not in ("pass", "fail", "evidence"):
            raise ValueError(f"bad status {status!r}")
        self.records.append((name, status, value, tolerance, claim))

    def check(self, name, ok, value=None, tolerance=None, claim="plumbing"):
        self.add(name, "pass" if ok else "fail", value, tolerance, claim)

    @property
    def failed(self):
        return any(r[1] == "fail" for r in self.records)

    def render(self):
        lines = [f"# command: {self.command}", f"# seed: {self.seed}"]
        for name, status, value, tol, claim in self.records:
            lines.append("\t".join([name, status, _fmt(value), _fmt(tol), claim]))
        return "\n".join(lines) + "\n"

    def emit(self, out_path=None):
        text = self.render()
        sys.stdout.write(text)
        if out_path:
            with open(out_path, "w") as fh:
                fh.write(text)
        return 1 if self.failed else 0


# --- shared check batteries ---------------------------------------------------


def _algebra_records(rep, alg, tol):
    val = validate(alg)
    rep.check("antisymmetry", val.antisym_residual <= tol,
              val.antisym_residual, tol, "jacobi-identity")
    rep.check("jacobi", val.jacobi_residual <= tol,
              val.jacobi_residual, tol, "jacobi-identity")
    rep.check("metric-positive", val.gram_min_eig > 0,
              val.gram_min_eig, None, "plumbing")
    if alg.decorated:
        iwa = iwasawa_check(alg)
        rep.check("iwasawa-abelian-a", iwa.cond_i,
                  iwa.abelian_residual, tol, "iwasawa-type")
        rep.check("iwasawa-symmetric-ad", iwa.cond_ii,
                  iwa.symmetry_residual, tol, "iwasawa-type")
        rep.check("iwasawa-positive-direction", iwa.cond_iii,
                  iwa.min_positive_eig, None, "iwasawa-type")
    verdict = einstein_verdict(alg, tol=tol)
    rep.check("einstein", verdict.is_einstein,
              verdict.residual, tol, "einstein-criterion")
    rep.add("einstein-constant", "pass" if verdict.is_einstein else "evidence",
            verdict.lam, None, "einstein-constant")
    if alg.decorated:
        et = eigenvalue_type(alg)
        type_str = "(" + ",".join(str(m) for m in et.eigenvalues) + ";" + \
            ",".join(str(d) for d in et.multiplicities) + ")"
        rep.add("eigenvalue-type", "pass", type_str, None, "eigenvalue-type")
    return verdict


def _paper_twist(rda):
    fam = rda.params.get("family")
    if fam == "so_nH":
        return paper_twist_so_nH(rda)
    if fam == "sl_nH":
        return paper_twist_sl_nH(rda)
    if fam == "type_iv":
        return type_iv_twist(rda)
    if fam in ("so_pq", "su_pq", "sp_pq"):
        return wa_twist(rda, 1)
    raise ValueError(f"no standard twist for family {fam!r}")


def _resolve_twist(rda, spec):
    if spec in (None, "", "none"):
        return None
    if spec == "enumerate":
        return "enumerate"
    if spec == "paper":
        return _paper_twist(rda)
    if spec.startswith("wa:"):
        return wa_twist(rda, int(spec[3:]))
    if spec.startswith("rh:"):
        rest = spec[3:]
        subset = [int(tok) for tok in rest.split(",") if tok != ""]
        return restricted_height_twist(rda, subset)
    if spec.startswith("bits:"):
        mask = int(spec[5:], 0)
        n_idx = list(rda.base.n_indices)
        if mask < 0 or mask >= (1 << len(n_idx)):
            raise ValueError(f"bit mask {spec[5:]} out of range for {len(n_idx)} vectors")
        parities = [0] * rda.dim
        for t, v in enumerate(n_idx):
            if (mask >> t) & 1:
                parities[v] = 1
        return TwistAssignment(parities=tuple(parities), tag=f"bits:{mask:#x}")
    raise ValueError(f"unknown twist spec {spec!r}")


def _rh_parity_set(rda):
    k = len(rda.simple_roots)
    seen = set()
    for size in range(k + 1):
        for subset in itertools.combinations(range(k), size):
            seen.add(restricted_height_twist(rda, subset).parities)
    return seen


def _root_spaces_one_dimensional(rda):
    counts = {}
    for i in rda.base.n_indices:
        counts[rda.root_of(i)] = counts.get(rda.root_of(i), 0) + 1
    return all(v == 1 for v in counts.values())


def _twist_records(rep, rda, assignment, tol):
    closure = twist_closure_check(rda, assignment)
    rep.check("twist-closed", closure.ok, len(closure.violations), None,
              "twist-closure")
    rep.add("twist-monomial", "pass" if closure.monomial else "evidence",
            closure.monomial, None, "twist-closure")
    if not closure.ok:
        return None
    twisted = twist(rda, assignment)
    back = twist(twisted, assignment)
    invol = float(np.max(np.abs(back.base.c - rda.base.c)))
    rep.check("twist-involution", invol == 0.0, invol, 0.0, "twist-involution")
    pres = einstein_preservation_check(rda, assignment, tol=tol)
    rep.check("einstein-before-twist", pres.before.is_einstein,
              pres.before.lam, tol, "einstein-criterion")
    rep.check("einstein-after-twist", pres.after.is_einstein,
              pres.after.lam, tol, "einstein-preservation")
    rep.check("lambda-drift", pres.lambda_drift <= tol,
              pres.lambda_drift, tol, "einstein-preservation")
    ricci_drift = float(np.max(np.abs(ricci(twisted.base) - ricci(rda.base))))
    rep.check("ricci-drift", ricci_drift <= tol, ricci_drift, tol,
              "einstein-preservation")
    try:
        x, y = positive_curvature_witness(twisted)
    except ValueError:
        pass
    else:
        lie_xy = float(np.max(np.abs(
            np.einsum("i,j,ijk->k", x, y, twisted.base.c))))
        rep.check("witness-commutes", lie_xy <= tol, lie_xy, tol,
                  "positive-curvature-witness")
        k = sectional(twisted.base, x, y)
        rep.check("witness-positive-curvature", k > 1e-6, k, 1e-6,
                  "positive-curvature-witness")
    return twisted


def _enumerate_records(rep, rda):
    sols = enumerate_twists(rda)
    rep.add("twist-solutions", "pass", len(sols), None, "twist-closure")
    rh = _rh_parity_set(rda)
    sol_set = {s.parities for s in sols}
    extra = len(sol_set - rh)
    missing = len(rh - sol_set)
    normal = _root_spaces_one_dimensional(rda)
    status = ("pass" if extra == 0 and missing == 0 else "fail") if normal \
        else "evidence"
    rep.add("rh-span-match", status, f"{len(sol_set)}:{len(rh)}+{extra}",
            None, "rh-rigidity")


# --- builders -----------------------------------------------------------------

_GRASSMANNIAN = {"so_pq": build_so_pq, "su_pq": build_su_pq, "sp_pq": build_sp_pq}
_SINGLE_N = {
    "so_nH": build_so_nH,
    "sl_nH": build_sl_nH,
    "type4_sl": build_type_iv_sl,
    "sl_nR": build_sl_nR,
}
SPACES = tuple(_GRASSMANNIAN) + tuple(_SINGLE_N)


def _build_space(args):
    space = args.space
    if space in _GRASSMANNIAN:
        if args.p is None or args.q is None:
            raise ValueError(f"--space {space} needs --p and --q")
        return _GRASSMANNIAN[space](args.p, args.q)
    if space in _SINGLE_N:
        if args.n is None:
            raise ValueError(f"--space {space} needs --n")
        return _SINGLE_N[space](args.n)
    raise ValueError(f"unknown space {space!r}")


# --- commands -----------------------------------------------------------------


def cmd_verify(args):
    rep = Report(_echo(args), args.seed)
    tol = args.tol if args.tol is not None else TOL_EXACT
    target = args.target
    if target == "complex-hyperbolic":
        n = args.n if args.n is not None else 2
        alg = build_solvmanifold(complex_hyperbolic_triple(n))
    elif target == "real-hyperbolic":
        dim = args.dim if args.dim is not None else 4
        alg = build_solvmanifold(real_hyperbolic_triple(dim))
    elif target == "carnot":
        if args.r is None or args.s is None:
            raise ValueError("builtin carnot needs --r and --s")
        trials = args.trials if args.trials is not None else 200
        cand = search_uniform(args.r, args.s, restarts=trials, seed=args.seed)
        found = cand.residual <= TOL_OPT
        rep.add("uniform-search", "pass" if found else "evidence",
                cand.residual, TOL_OPT, "uniform-subspace")
        mats = _orthonormalize_family(cand.matrices)
        triple = DataTriple(r=args.r, s=args.s, j_mats=mats)
        cond = einstein_conditions(triple)
        rep.check("einstein-conditions", cond.max_residual <= 1e-9,
                  cond.max_residual, 1e-9, "einstein-criterion")
        alg = build_solvmanifold(triple)
    else:
        with open(target) as fh:
            alg = deserialize(fh.read())
    _algebra_records(rep, alg, tol)
    return rep.emit(args.out)


def cmd_carnot_search(args):
    rep = Report(_echo(args), args.seed)
    trials = args.trials if args.trials is not None else 200
    tol = args.tol if args.tol is not None else TOL_OPT
    cand = search_uniform(args.r, args.s, restarts=trials, seed=args.seed)
    found = cand.residual <= tol
    rep.add("best-residual", "pass" if found else "evidence",
            cand.residual, tol, "uniform-subspace" if found
            else "uniform-nonexistence-evidence")
    if found:
        rep.check("is-uniform", is_uniform(cand.matrices), None, None,
                  "uniform-subspace")
        if args.r == 4:
            crit_res, crit_ok = so4_criterion(_orthonormalize_family(cand.matrices))
            rep.check("so4-criterion", crit_ok, crit_res, None,
                      "so4-quaternion-criterion")
        cond = einstein_conditions(
            DataTriple(r=args.r, s=args.s,
                       j_mats=_orthonormalize_family(cand.matrices)))
        rep.check("einstein-conditions", cond.max_residual <= 1e-9,
                  cond.max_residual, 1e-9, "einstein-criterion")
    return rep.emit(args.out)


def cmd_classify_so4(args):
    rep = Report(_echo(args), args.seed)
    trials = args.trials if args.trials is not None else 200
    wanted = [args.s] if args.s is not None else list(range(1, 7))
    for s in wanted:
        classes = classify_uniform_so4(s, trials=trials, seed=args.seed)
        expected = _SO4_EXPECTED_COUNTS[s]
        rep.check(f"so4-classes-s{s}", len(classes) == expected,
                  len(classes), expected, "so4-class-counts")
    return rep.emit(args.out)


def cmd_family_report(args):
    rep = Report(_echo(args), args.seed)
    if args.grid is not None:
        points = family_grid(n_lat=args.grid, n_az=4 * args.grid)
    else:
        points = family_grid()
    samples = args.samples if args.samples is not None else 200
    rows = family_report(points=points, samples=samples, seed=args.seed)

    rep.add("grid-points", "pass", len(rows), None, "plumbing")
    eres = max(r.einstein_residual for r in rows)
    rep.check("einstein-residual-max", eres <= 1e-9, eres, 1e-9,
              "einstein-criterion")
    cdev = max(abs(r.cos_angle_centralizer - abs(r.t)) for r in rows)
    rep.check("centralizer-angle-dev", cdev <= 1e-9, cdev, 1e-9,
              "centralizer-angle")
    bdev = 0.0
    for r in rows:
        closed = bracket_angle_closed_form(r.r, r.s, r.t)
        if math.isnan(closed) or math.isnan(r.cos_angle_bracket):
            if math.isnan(closed) != math.isnan(r.cos_angle_bracket):
                bdev = math.inf
            continue
        bdev = max(bdev, abs(r.cos_angle_bracket - closed))
    rep.check("bracket-angle-dev", bdev <= 1e-6, bdev, 1e-6, "bracket-angle")
    cdim_max = 0
    for r in rows:
        if max(abs(r.r), abs(r.s)) <= 1e-9:
            continue
        cdim_max = max(cdim_max, centralizer_in_so6(W_of(r.r, r.s, r.t))[0])
    rep.check("centralizer-dim-generic", cdim_max == 1, cdim_max, 1,
              "centralizer-dimension")
    kmin = min(r.min_sectional for r in rows)
    kmax = max(r.max_sectional for r in rows)
    rep.add("sectional-range", "evidence", f"{kmin:.12g}:{kmax:.12g}",
            None, "sectional-sign")

    if args.out:
        header = ("r,s,t,einstein_residual,cos_angle_centralizer,"
                  "cos_angle_bracket,min_sectional,max_sectional")
        lines = [header]
        for r in rows:
            lines.append(",".join(_fmt(v) for v in (
                r.r, r.s, r.t, r.einstein_residual, r.cos_angle_centralizer,
                r.cos_angle_bracket, r.min_sectional, r.max_sectional)))
        with open(args.out, "w") as fh:
            fh.write("\n".join(lines) + "\n")
        rep.add("csv-written", "pass", args.out, None, "plumbing")
    return rep.emit(None)


def cmd_family_margin(args):
    rep = Report(_echo(args), args.seed)
    triple = induced_triple(args.r, args.s, args.t)
    samples = args.samples if args.samples is not None else 10000
    descents = args.descents if args.descents is not None else 100
    margin = negative_curvature_margin(triple, samples=samples,
                                       descents=descents, seed=args.seed)
    rep.add("min-margin", "evidence", margin, None, "curvature-margin")
    return rep.emit(args.out)


def cmd_symmetric_build(args):
    rep = Report(_echo(args), args.seed)
    tol = args.tol if args.tol is not None else TOL_EXACT
    rda = _build_space(args)
    rep.add("space", "pass", rda.tag, None, "plumbing")
    rep.add("dim", "pass", rda.dim, None, "plumbing")
    _algebra_records(rep, rda.base, tol)
    assignment = _resolve_twist(rda, args.twist)
    if assignment == "enumerate":
        _enumerate_records(rep, rda)
    elif assignment is not None:
        _twist_records(rep, rda, assignment, tol)
    if args.golden or args.out:
        # the table of the build itself; `symmetric table` renders twisted ones
        table = bracket_table(rda)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(table)
            rep.add("table-written", "pass", args.out, None, "plumbing")
        if args.golden:
            with open(args.golden) as fh:
                golden = fh.read()
            rep.check("golden-table-match", table == golden,
                      len(table), len(golden), "golden-table")
    return rep.emit(None)


def cmd_symmetric_twist(args):
    rep = Report(_echo(args), args.seed)
    tol = args.tol if args.tol is not None else TOL_EXACT
    rda = _build_space(args)
    rep.add("space", "pass", rda.tag, None, "plumbing")
    assignment = _resolve_twist(rda, args.twist or "paper")
    if assignment == "enumerate":
        _enumerate_records(rep, rda)
    elif assignment is None:
        raise ValueError("nothing to do: twist spec resolved to none")
    else:
        rep.add("twist", "pass", assignment.tag, None, "plumbing")
        _twist_records(rep, rda, assignment, tol)
    return rep.emit(args.out)


def cmd_symmetric_table(args):
    rep = Report(_echo(args), args.seed)
    rda = _build_space(args)
    assignment = _resolve_twist(rda, args.twist)
    if assignment == "enumerate":
        raise ValueError("table needs a single twist, not enumerate")
    if assignment is not None:
        rda = twist(rda, assignment)
    table = bracket_table(rda)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(table)
    if args.golden:
        with open(args.golden) as fh:
            golden = fh.read()
        rep.check("golden-table-match", table == golden,
                  len(table), len(golden), "golden-table")
    if args.golden or (args.out and not args.print_table):
        return rep.emit(None)
    sys.stdout.write(table)
    return 0


# --- argument plumbing ----------------------------------------------------------


def _echo(args):
    return " ".join(args._argv)


def _add_common(p):
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--out", default=None, help="also write the report/output here")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="solvgeom",
        description="Constructions and curvature checks for metric solvable "
                    "Lie algebras.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    pv = sub.add_parser("verify", help="validate an algebra and its Einstein "
                                       "property (builtin name or JSON path)")
    pv.add_argument("target",
                    help="complex-hyperbolic | real-hyperbolic | carnot | path")
    pv.add_argument("--n", type=int, default=None)
    pv.add_argument("--dim", type=int, default=None)
    pv.add_argument("--r", type=int, default=None)
    pv.add_argument("--s", type=int, default=None)
    pv.add_argument("--trials", type=int, default=None)
    _add_common(pv)
    pv.set_defaults(func=cmd_verify)

    pc = sub.add_parser("carnot", help="uniform subspace search and so(4) classes")
    csub = pc.add_subparsers(dest="subcommand", required=True)
    ps = csub.add_parser("search")
    ps.add_argument("--r", type=int, required=True)
    ps.add_argument("--s", type=int, required=True)
    ps.add_argument("--trials", type=int, default=None)
    _add_common(ps)
    ps.set_defaults(func=cmd_carnot_search)
    pk = csub.add_parser("classify-so4")
    pk.add_argument("--s", type=int, default=None, choices=range(1, 7))
    pk.add_argument("--trials", type=int, default=None)
    _add_common(pk)
    pk.set_defaults(func=cmd_classify_so4)
    pcv = csub.add_parser("verify")
    pcv.add_argument("--r", type=int, required=True)
    pcv.add_argument("--s", type=int, required=True)
    pcv.add_argument("--trials", type=int, default=None)
    _add_common(pcv)
    pcv.set_defaults(func=lambda a: cmd_verify(_as_verify(a)))

    pf = sub.add_parser("family", help="the so(6) two-parameter family")
    fsub = pf.add_subparsers(dest="subcommand", required=True)
    pr = fsub.add_parser("report")
    pr.add_argument("--grid", type=int, default=None)
    pr.add_argument("--samples", type=int, default=None)
    _add_common(pr)
    pr.set_defaults(func=cmd_family_report)
    pm = fsub.add_parser("margin")
    pm.add_argument("--r", type=float, default=1.0)
    pm.add_argument("--s", type=float, default=0.0)
    pm.add_argument("--t", type=float, default=0.0)
    pm.add_argument("--samples", type=int, default=None)
    pm.add_argument("--descents", type=int, default=None)
    _add_common(pm)
    pm.set_defaults(func=cmd_family_margin)

    py = sub.add_parser("symmetric", help="Iwasawa algebras and sign twists")
    ysub = py.add_subparsers(dest="subcommand", required=True)

    def _space_args(p):
        p.add_argument("--space", required=True, choices=SPACES)
        p.add_argument("--p", type=int, default=None)
        p.add_argument("--q", type=int, default=None)
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--twist", default=None,
                       help="paper | wa:A | rh:I,J | bits:MASK | enumerate")

    pb = ysub.add_parser("build")
    _space_args(pb)
    pb.add_argument("--golden", default=None)
    _add_common(pb)
    pb.set_defaults(func=cmd_symmetric_build)
    pt = ysub.add_parser("twist")
    _space_args(pt)
    _add_common(pt)
    pt.set_defaults(func=cmd_symmetric_twist)
    pg = ysub.add_parser("table")
    _space_args(pg)
    pg.add_argument("--golden", default=None)
    pg.add_argument("--print-table", action="store_true",
                    help="print the table even when --out is given")
    _add_common(pg)
    pg.set_defaults(func=cmd_symmetric_table)

    return parser


class _Shim:
    pass


def _as_verify(args):
    shim = _Shim()
    shim._argv = args._argv
    shim.target = "carnot"
    shim.n = None
    shim.dim = None
    for field in ("r", "s", "trials", "seed", "tol", "out"):
        setattr(shim, field, getattr(args, field))
    return shim


def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    args = parser.parse_args(argv)
    args._argv = list(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        return 0
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
