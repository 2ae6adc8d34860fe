"""Command-line front end (``glab``).

Every table goes to --out (default stdout) as CSV with a metadata comment
line and a header row, or as a JSON array of row objects with the metadata
line on stderr.  Exit codes: 0 ok, 2 domain error, 3 numerical failure,
4 I/O error.
"""
import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import __version__
from .errors import ConvergenceError, DomainError

EXIT_OK, EXIT_DOMAIN, EXIT_CONVERGENCE, EXIT_IO = 0, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    # usage errors are domain errors; raise so main() owns the exit code
    def error(self, message):
        raise DomainError(f"{self.prog}: {message}")


def _floats(text):
    try:
        return [float(v) for v in str(text).split(",") if v.strip()]
    except ValueError as exc:
        raise DomainError(f"expected a comma-separated list of numbers, got {text!r}") from exc


def _ints(text):
    vals = _floats(text)
    if any(v != int(v) for v in vals):
        raise DomainError(f"expected integers, got {text!r}")
    return [int(v) for v in vals]


def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isnan(v):
            return "nan"
        return repr(v)
    return "" if v is None else str(v)


def _jsonable(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else None
    return v


class Table:
    def __init__(self, columns, rows, meta=None):
        self.columns = list(columns)
        self.rows = [list(r) for r in rows]
        self.meta = dict(meta or {})


def _meta_line(args, table):
    keys = dict(n=getattr(args, "n", None), s=getattr(args, "s", None), tol=getattr(args, "tol", None))
    keys.update({k: table.meta.pop(k) for k in list(table.meta) if k in keys})
    parts = [f"{k}={'-' if v is None else _fmt(v) if not isinstance(v, list) else ';'.join(map(_fmt, v))}"
             for k, v in keys.items()]
    parts.append(f"version={__version__}")
    parts += [f"{k}={_fmt(v)}" for k, v in table.meta.items()]
    return "# " + ", ".join(parts)


def _render(args, table):
    meta = _meta_line(args, table)
    if args.format == "json":
        body = json.dumps([{c: _jsonable(v) for c, v in zip(table.columns, r)} for r in table.rows], indent=1)
        return body + "\n", meta
    buf = io.StringIO()
    buf.write(meta + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table.columns)
    for r in table.rows:
        w.writerow([_fmt(v) for v in r])
    return buf.getvalue(), None


def _emit(args, table):
    text, side = _render(args, table)
    if side is not None:
        print(side, file=sys.stderr)
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _read_table(path):
    """Rows of a CSV file with a header (``#`` lines skipped)."""
    with open(path, encoding="utf-8") as fh:
        lines = [ln for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise DomainError(f"{path}: empty table")
    reader = csv.reader(lines)
    header = [h.strip() for h in next(reader)]
    try:
        rows = [[float(v) for v in r] for r in reader if r]
    except ValueError as exc:
        raise DomainError(f"{path}: non-numeric entry ({exc})") from exc
    if any(len(r) != len(header) for r in rows):
        raise DomainError(f"{path}: ragged rows")
    return header, np.asarray(rows, dtype=float)


# --------------------------------------------------------------------------
# commands


def cmd_constants(args):
    from .constants import constant_bundle

    rows = []
    for n in _floats(args.n):
        for s in _floats(args.s):
            d = constant_bundle(n, s, args.t).as_dict()
            rows.append([n, s] + [d[k] for k in ("hardy", "coeff", "frac_lap_norm", "poisson_norm",
                                                 "neumann_norm", "b", "t")])
    return Table(["n", "s", "hardy", "coeff", "frac_lap_norm", "poisson_norm", "neumann_norm", "b", "t"], rows)


def cmd_critdim(args):
    from .critdim import critical_dimension

    rows = []
    for s in _floats(args.s):
        r = critical_dimension(s, args.tol)
        rows.append([s, f"{r.root:.12f}", r.residual, r.iterations])
    return Table(["s", "n0", "residual", "iterations"], rows)


def cmd_critdim_curve(args):
    from .critdim import critical_curve

    rows = [[s, f"{n0:.12f}", res, it] for s, n0, res, it in
            critical_curve(args.s_min, args.s_max, args.steps, args.tol)]
    return Table(["s", "n0", "residual", "iterations"], rows)


def cmd_quartic(args):
    from .critdim import fourth_order_threshold

    r = fourth_order_threshold(args.tol)
    return Table(["n0", "residual", "iterations"], [[f"{r.root:.12f}", r.residual, r.iterations]])


def cmd_exponents(args):
    from .exponents import alpha_bar, delta_gap, ladder_parameters, moser_cubic_roots

    roots = moser_cubic_roots()
    rows = [["alpha_sharp", roots.alpha_sharp], ["alpha_star", roots.alpha_star], ["alpha_neg", roots.alpha_neg]]
    if args.n is not None:
        s = None if args.flavor == "local" and args.s is None else args.s
        if s is None and args.flavor == "fractional":
            raise DomainError("--s is required for the fractional flavour")
        factor, cap, start_hi = ladder_parameters(args.n, 2.0 if s is None else s, args.flavor)
        rows += [["factor", factor], ["cap", cap], ["start_bound", start_hi],
                 ["alpha_bar", alpha_bar(args.n, s, args.flavor)]]
    for a in _floats(args.delta_at) if args.delta_at else []:
        rows.append([f"delta({a:g})", delta_gap(a)])
    return Table(["name", "value"], rows)


def cmd_ladder(args):
    from .exponents import bootstrap_ladder

    s = args.s if args.s is not None else (2.0 if args.flavor == "local" else None)
    if s is None:
        raise DomainError("--s is required for the fractional flavour")
    tr = bootstrap_ladder(args.n, s, args.target, args.flavor)
    rows = [[i, st.exponent, st.rule] for i, st in enumerate(tr.steps)]
    return Table(["step", "alpha", "rule"], rows, dict(cap=tr.cap, factor=tr.factor))


def cmd_fraclap_verify_log(args):
    from .constants import nonlinear_coefficient
    from .fraclap import log_family, radial_frac_lap

    n, t = args.n, args.t
    a = nonlinear_coefficient(n, t)
    rows = []
    for r in _floats(args.r):
        v = radial_frac_lap(log_family(t), n, t, r, rtol=args.rtol)
        ref = a * r ** (-2 * t)
        rows.append([r, v, ref, abs(v / ref - 1.0)])
    return Table(["r", "value", "reference", "rel_error"], rows, dict(t=t))


def cmd_hardy_integral(args):
    from .constants import hardy_constant
    from .fraclap import fall_hardy_integral

    v = fall_hardy_integral(args.n, args.s, rtol=args.rtol)
    ref = hardy_constant(args.n, args.s)
    return Table(["value", "reference", "rel_error"], [[v, ref, abs(v / ref - 1.0)]])


def cmd_stability_homogeneous(args):
    from .stability import homogeneous_comparison

    rep = homogeneous_comparison(args.n, args.s, args.tau_const)
    return Table(["lhs", "rhs", "stable_possible"], [[rep.lhs_coeff, rep.rhs_coeff, rep.stable_possible]])


def cmd_stability_rellich(args):
    from .stability import rellich_family_sign, rellich_gap

    rows = []
    for n in _ints(args.n):
        res = rellich_family_sign(n, _floats(args.eps), args.width)
        rows.append([n, res.coefficient, rellich_gap(n), res.slope, res.cutoff_slope, res.sign])
    return Table(["n", "coefficient", "exact_gap", "slope", "cutoff_slope", "sign"], rows)


def cmd_stability_cutoff(args):
    from .stability import cutoff_log_coefficient

    rows, slope = cutoff_log_coefficient(_floats(args.eps), args.width)
    return Table(["eps", "integral", "slope"], [[e, v, slope] for e, v in rows])


def _profile_from_args(args):
    from . import biharmonic as bh

    if args.profile:
        header, data = _read_table(args.profile)
        if header[:2] != ["r", "u"]:
            raise DomainError(f"{args.profile}: profile header must start with r,u")
        return bh.RadialProfile(data[:, 0], values=data[:, 1], n=args.n, tag=args.tag, name=args.profile)
    if args.u == "singular":
        return bh.singular_profile(args.n)
    if args.u == "zero":
        return bh.zero_profile(args.n)
    raise DomainError("give --profile FILE or --u singular|zero")


def cmd_biharmonic_shoot(args):
    from . import biharmonic as bh

    if args.bisect_b:
        lo, hi = _floats(args.bisect_b)
        res = bh.bisect_shooting(args.n, args.a, lo, hi, r_max=args.rmax)
    else:
        if args.b is None:
            raise DomainError("give --b or --bisect-b lo,hi")
        res = bh.shoot_radial(args.n, args.a, args.b, r_max=args.rmax)
    p = res.profile
    grid = np.geomspace(p.r_min, p.r_max, args.points)
    rows = [[r, float(p(r))] for r in grid]
    meta = dict(a=res.a, b=res.b, outcome=res.outcome,
                r_star=res.r_star if res.r_star is not None else float("nan"), drift=res.drift)
    return Table(["r", "u"], rows, meta)


def cmd_biharmonic_energy(args):
    from . import biharmonic as bh

    u = _profile_from_args(args)
    rows = []
    for r in _floats(args.r_list):
        e = bh.energy_local(u, args.n, r)
        rows.append([r, e.bulk_dirichlet, e.bulk_potential, e.boundary_sq, e.d_dr_sq_term, e.log_term,
                     e.radial_deriv_term, e.tangential_terms[0], e.tangential_terms[1], e.total,
                     bh.monotonicity_bound(u, args.n, r)])
    return Table(["r", "bulk_dirichlet", "bulk_potential", "boundary_sq", "d_dr_sq_term", "log_term",
                  "radial_deriv_term", "tangential_1", "tangential_2", "total", "derivative_bound"], rows)


def cmd_biharmonic_residual(args):
    from . import biharmonic as bh

    u = _profile_from_args(args)
    lo, hi = u.r_min, u.r_max
    grid = np.geomspace(lo * 1.01, hi / 1.01, args.points)
    worst, res = bh.radial_bilaplacian_residual(u, args.n, grid, profile=True)
    return Table(["r", "weighted_residual"], [[r, v] for r, v in zip(grid, res)], dict(max_residual=worst))


def _boundary_function(args):
    from . import extension as ext

    if args.u == "singular":
        return ext.singular_function(args.n, args.s)
    if args.u == "zero":
        return ext.zero_function()
    if args.u == "bump":
        return ext.bump_function()
    if args.u == "bumped-singular":
        return ext.bumped_singular_function(args.n, args.s)
    raise DomainError(f"unknown boundary function {args.u!r}")


def cmd_extension_build(args):
    from . import extension as ext

    rho, y = ext.default_energy_grids(args.extent, args.n_rho, args.n_y)
    fld = ext.poisson_extend(_boundary_function(args), args.n, args.s, rho, y)
    data = fld.to_rows(channels=not args.values_only)
    return Table(fld.column_names(channels=not args.values_only), data.tolist(), dict(u=args.u))


def cmd_extension_energy(args):
    from . import extension as ext

    header, data = _read_table(args.field)
    fld = ext.field_from_rows(header, data, args.n, args.s)
    rows = []
    for lam in _floats(args.lambda_list):
        e = ext.energy_fractional(fld, args.n, args.s, lam)
        rows.append([lam] + list(e.parts()) + [e.total])
    return Table(["lambda", "bulk", "boundary_exp", "sphere_sq", "d_dr_sq_term", "log_term", "linear_term",
                  "tangential_d_dr", "tangential", "total"], rows)


def cmd_extension_residuals(args):
    from . import extension as ext

    r = ext.yang_residuals(_boundary_function(args), args.n, args.s, grid_n=args.grid_n)
    nan = float("nan")
    row = [r.interior_residual, r.neumann_residual, nan if r.source_residual is None else r.source_residual,
           nan if r.source_constant is None else r.source_constant, r.predicted_constant, ";".join(r.flags)]
    return Table(["interior", "neumann", "source", "source_constant", "predicted_constant", "flags"], [row],
                 dict(u=args.u, grid_n=args.grid_n))


def cmd_acceptance(args):
    from .acceptance import run_all

    want = _ints(args.only) if args.only else None
    results = run_all(want, stream=sys.stdout)
    npass = sum(r.passed for r in results)
    print(f"{npass}/{len(results)} criteria passed")
    return EXIT_OK if npass == len(results) else EXIT_CONVERGENCE


# --------------------------------------------------------------------------


def _common(p, n=False, s=False, tol=None):
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    if tol is not None:
        p.add_argument("--tol", type=float, default=tol)


def build_parser():
    ap = _Parser(prog="glab", description="Numerical lab for the fractional Gelfand-Liouville equation.")
    ap.add_argument("--version", action="version", version=f"glab {__version__}")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("constants", help="Hardy constant, singular coefficient and normalisations")
    p.add_argument("--n", required=True, help="dimension(s), comma-separated")
    p.add_argument("--s", required=True, help="order(s), comma-separated")
    p.add_argument("--t", type=float, default=None, help="order of C_{n,t} (default from s)")
    _common(p)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("critdim", help="critical dimension n0(s)")
    p.add_argument("--s", required=True, help="order(s) in [1, 2], comma-separated")
    _common(p, tol=1e-10)
    p.set_defaults(func=cmd_critdim)

    p = sub.add_parser("critdim-curve", help="n0(s) on an even grid")
    p.add_argument("--s-min", type=float, default=1.0)
    p.add_argument("--s-max", type=float, default=2.0)
    p.add_argument("--steps", type=int, default=21)
    _common(p, tol=1e-10)
    p.set_defaults(func=cmd_critdim_curve)

    p = sub.add_parser("quartic", help="largest root of n^2(n-4) - 128(n-2)")
    _common(p, tol=1e-10)
    p.set_defaults(func=cmd_quartic)

    p = sub.add_parser("exponents", help="cubic roots and ladder parameters")
    p.add_argument("--n", type=float, default=None)
    p.add_argument("--s", type=float, default=None)
    p.add_argument("--flavor", choices=("fractional", "local"), default="fractional")
    p.add_argument("--delta-at", default=None, help="exponents at which to report delta, comma-separated")
    _common(p)
    p.set_defaults(func=cmd_exponents)

    p = sub.add_parser("ladder", help="bootstrap exponent ladder")
    p.add_argument("--n", type=float, required=True)
    p.add_argument("--s", type=float, default=None)
    p.add_argument("--target", type=float, required=True)
    p.add_argument("--flavor", choices=("fractional", "local"), default="fractional")
    _common(p)
    p.set_defaults(func=cmd_ladder)

    p = sub.add_parser("fraclap", help="radial fractional Laplacian checks")
    fsub = p.add_subparsers(dest="action", parser_class=_Parser)
    fsub.required = True
    q = fsub.add_parser("verify-log", help="order-t Laplacian of -2t log r against A_{n,t} r^{-2t}")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--t", type=float, required=True)
    q.add_argument("--r", default="0.5,1,2")
    q.add_argument("--rtol", type=float, default=1e-6)
    _common(q)
    q.set_defaults(func=cmd_fraclap_verify_log)

    p = sub.add_parser("hardy-integral", help="double-integral representation of the Hardy constant")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--rtol", type=float, default=1e-8)
    _common(p)
    p.set_defaults(func=cmd_hardy_integral)

    p = sub.add_parser("stability", help="stability comparisons")
    ssub = p.add_subparsers(dest="action", parser_class=_Parser)
    ssub.required = True
    q = ssub.add_parser("homogeneous", help="Lambda |S| against the integral of e^tau")
    q.add_argument("--n", type=float, required=True)
    q.add_argument("--s", type=float, required=True)
    q.add_argument("--tau-const", type=float, default=None, help="constant angular profile (default log A)")
    _common(q)
    q.set_defaults(func=cmd_stability_homogeneous)
    q = ssub.add_parser("rellich", help="log-coefficient of the Rellich form on the cutoff family")
    q.add_argument("--n", required=True, help="dimension(s), comma-separated")
    q.add_argument("--eps", default="0.1,0.01,0.001")
    q.add_argument("--width", type=float, default=1.0)
    _common(q)
    q.set_defaults(func=cmd_stability_rellich)
    q = ssub.add_parser("cutoff", help="I(eps) and its slope in log(1/eps)")
    q.add_argument("--eps", default="0.1,0.01,0.001")
    q.add_argument("--width", type=float, default=1.0)
    _common(q)
    q.set_defaults(func=cmd_stability_cutoff)

    p = sub.add_parser("biharmonic", help="fourth-order radial problem")
    bsub = p.add_subparsers(dest="action", parser_class=_Parser)
    bsub.required = True
    q = bsub.add_parser("shoot", help="shoot from the origin; emits the profile as r,u")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--a", type=float, default=0.0)
    q.add_argument("--b", type=float, default=None)
    q.add_argument("--bisect-b", default=None, help="lo,hi bracket for bisection in Delta u(0)")
    q.add_argument("--rmax", type=float, default=100.0)
    q.add_argument("--points", type=int, default=400)
    _common(q)
    q.set_defaults(func=cmd_biharmonic_shoot)
    for name, func, helptext in (("energy", cmd_biharmonic_energy, "monotonicity energy E(r)"),
                                 ("residual", cmd_biharmonic_residual, "weighted residual of Delta^2 u = e^u")):
        q = bsub.add_parser(name, help=helptext)
        q.add_argument("--n", type=int, required=True)
        q.add_argument("--profile", default=None, help="CSV with header r,u")
        q.add_argument("--u", choices=("singular", "zero"), default=None)
        q.add_argument("--tag", choices=("regular", "log"), default="regular",
                       help="near-origin model of a profile file")
        if name == "energy":
            q.add_argument("--r-list", default="1,2,4")
        else:
            q.add_argument("--points", type=int, default=200)
        _common(q)
        q.set_defaults(func=func)

    p = sub.add_parser("extension", help="order-s Poisson extension")
    esub = p.add_subparsers(dest="action", parser_class=_Parser)
    esub.required = True
    choices = ("singular", "zero", "bump", "bumped-singular")
    q = esub.add_parser("build", help="extension field as rho,y,value (+ derivative channels)")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--s", type=float, required=True)
    q.add_argument("--u", choices=choices, required=True)
    q.add_argument("--extent", type=float, default=2.31, help="largest rho and y")
    q.add_argument("--n-rho", type=int, default=96)
    q.add_argument("--n-y", type=int, default=96)
    q.add_argument("--values-only", action="store_true")
    _common(q)
    q.set_defaults(func=cmd_extension_build)
    q = esub.add_parser("energy", help="fractional monotonicity energy of a field file")
    q.add_argument("--field", required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--s", type=float, required=True)
    q.add_argument("--lambda-list", default="1,2")
    _common(q)
    q.set_defaults(func=cmd_extension_energy)
    q = esub.add_parser("residuals", help="residuals of the extension boundary system")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--s", type=float, required=True)
    q.add_argument("--u", choices=choices, default="bump")
    q.add_argument("--grid-n", type=int, default=128)
    _common(q)
    q.set_defaults(func=cmd_extension_residuals)

    p = sub.add_parser("acceptance", help="run the acceptance suite and print a pass/fail table")
    p.add_argument("--only", default=None, help="criterion numbers, comma-separated")
    p.set_defaults(func=cmd_acceptance)
    return ap


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        result = args.func(args)
        if isinstance(result, int):
            return result
        _emit(args, result)
        return EXIT_OK
    except DomainError as exc:
        print(f"glab: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ConvergenceError as exc:
        print(f"glab: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except OSError as exc:
        print(f"glab: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
