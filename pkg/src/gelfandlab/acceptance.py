"""Acceptance suite: one check per numbered criterion, each timed.

``run_all`` returns a list of :class:`CriterionResult`; ``format_table``
renders the pass/fail table printed by ``glab acceptance``.
"""
import time
from dataclasses import dataclass

import numpy as np

from . import biharmonic as bh
from . import extension as ext
from .constants import hardy_constant, nonlinear_coefficient
from .critdim import critical_curve, critical_dimension, fourth_order_threshold, g_value
from .errors import UnreachableTargetError
from .exponents import alpha_bar, bootstrap_ladder, delta_gap, moser_cubic_roots
from .fraclap import constant_function, fall_hardy_integral, log_family, radial_frac_lap
from .stability import rellich_family_sign

TOTAL_BUDGET = 600.0


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    value_ok: bool
    elapsed: float
    budget: float
    detail: str


def _timed(fn):
    t0 = time.perf_counter()
    ok, detail = fn()
    return ok, detail, time.perf_counter() - t0


def c1():
    r = critical_dimension(1.0)
    g = abs(g_value(10.0, 1.0))
    return abs(r.root - 10.0) <= 1e-8 and g <= 1e-8, f"n0(1)={r.root:.12f} |g(10)|={g:.1e}"


def c2():
    r = critical_dimension(2.0)
    q = fourth_order_threshold()
    d1, d2 = abs(r.root - 12.565), abs(r.root - q.root)
    return d1 <= 5e-3 and d2 <= 1e-6, f"n0(2)={r.root:.9f} quartic root={q.root:.9f} diff={d2:.1e}"


def c3():
    rows = critical_curve(1.0, 2.0, 21)
    n0 = np.array([r[1] for r in rows])
    mono = bool(np.all(np.diff(n0) > 0))
    inside = bool(np.all((n0 >= 10.0 - 1e-9) & (n0 <= 12.57)))
    return mono and inside, f"range [{n0.min():.6f}, {n0.max():.6f}] monotone={mono}"


def c4():
    roots = moser_cubic_roots()
    a, b = roots.alpha_sharp, roots.alpha_star
    ok = abs(a - 0.517304) <= 1e-5 and abs(b - 2.53407) <= 1e-5
    d0 = max(abs(delta_gap(a)), abs(delta_gap(b)))
    inner = np.linspace(a, b, 52)[1:-1]
    pos = all(delta_gap(x) > 0 for x in inner)
    return ok and d0 <= 1e-9 and pos, f"roots {a:.7f}, {b:.7f}; |delta| at roots {d0:.1e}; interior positive={pos}"


def c5():
    worst = 0.0
    for n in range(5, 17):
        h = hardy_constant(n, 2.0)
        a = nonlinear_coefficient(n, 2.0)
        worst = max(worst, abs(h / (n * n * (n - 4) ** 2 / 16.0) - 1.0), abs(a / (8.0 * (n - 2) * (n - 4)) - 1.0))
    return worst <= 1e-12, f"max rel dev {worst:.1e}"


def c6():
    worst = 0.0
    for n, t in ((3, 0.5), (5, 0.25), (10, 0.75)):
        u = log_family(t)
        a = nonlinear_coefficient(n, t)
        for r in (0.5, 1.0, 2.0):
            v = radial_frac_lap(u, n, t, r)
            worst = max(worst, abs(v / (a * r ** (-2 * t)) - 1.0))
    return worst <= 2e-3, f"max rel err {worst:.1e}"


def c7():
    worst = 0.0
    for n, s in ((10, 1.0), (10, 1.5), (5, 0.5)):
        worst = max(worst, abs(fall_hardy_integral(n, s) / hardy_constant(n, s) - 1.0))
    return worst <= 1e-2, f"max rel err {worst:.1e}"


def c8():
    worst = 0.0
    for n, s in ((4, 1.1), (5, 1.25), (6, 1.5), (7, 1.75), (8, 1.9),
                 (9, 1.3), (10, 1.5), (12, 1.6), (15, 1.95), (20, 1.05)):
        lhs = nonlinear_coefficient(n, s - 1.0) * 2 * s * (n - 2 * s)
        worst = max(worst, abs(lhs / nonlinear_coefficient(n, s) - 1.0))
    return worst <= 1e-12, f"max rel dev {worst:.1e}"


def c9():
    signs = {n: rellich_family_sign(n).sign for n in range(5, 17)}
    ok = all(signs[n] < 0 for n in range(5, 13)) and all(signs[n] > 0 for n in range(13, 17))
    return ok, "signs " + " ".join(f"{n}:{'+' if v > 0 else '-'}" for n, v in signs.items())


def c10():
    worst = 0.0
    for n in (5, 8, 12, 13):
        u = bh.singular_profile(n)
        e = [bh.energy_local(u, n, r).total for r in np.linspace(1.0, 4.0, 7)]
        worst = max(worst, (max(e) - min(e)) / abs(e[0]))
    return worst <= 1e-3, f"max rel variation {worst:.1e}"


def c11():
    res = bh.bisect_shooting(13)
    p = res.profile
    m13 = min(bh.energy_derivative_fd(p, 13, r) - bh.monotonicity_bound(p, 13, r)
              for r in np.geomspace(0.05, 0.9 * p.r_max, 10))
    q = bh.perturbed_singular_solution(12, 0.5)
    m12 = min(bh.energy_derivative_fd(q, 12, r) - bh.monotonicity_bound(q, 12, r)
              for r in np.geomspace(1.1, 0.9 * q.r_max, 10))
    ok = res.outcome == "entire-like" and m13 >= -1e-4 and m12 >= -1e-4
    return ok, f"n=13 b*={res.b:.10f} ({res.outcome}) min margin {m13:.1e}; n=12 perturbed min margin {m12:.1e}"


def c12():
    mass = abs(ext.kernel_mass(5, 1.5, 1.0, 1.0) - 1.0)
    rho = np.linspace(0.0, 10.0, 11)
    y = np.geomspace(1e-3, 10.0, 12)
    cf = ext.poisson_extend(constant_function(2.5), 5, 1.5, rho, y)
    cerr = float(np.abs(cf.values - 2.5).max())
    n, s = 10, 1.5
    rg, yg = ext.default_energy_grids(2.2 * 1.05)
    fld = ext.poisson_extend(ext.singular_function(n, s), n, s, rg, yg)
    e1 = ext.energy_fractional(fld, n, s, 1.0).total
    e2 = ext.energy_fractional(fld, n, s, 2.0).total
    dev = abs(e2 - e1) / abs(e1)
    ok = mass <= 1e-6 and cerr <= 1e-8 and dev <= 5e-2
    return ok, f"kernel mass err {mass:.1e}; constant err {cerr:.1e}; E(1)={e1:.6f} E(2)={e2:.6f} dev {dev:.1e}"


LADDER_GRID = ((10, 1.5, 1.0), (10, 1.5, 2.5), (10, 1.5, 3.0), (12, 1.2, 2.0), (20, 1.9, 2.9),
               (8, 1.1, 1.5), (15, 1.5, 3.0), (6, 1.25, 2.6), (30, 1.99, 3.0), (9, 1.0, 0.8))


def c13():
    reached = refused = 0
    for n, s, p in LADDER_GRID:
        ab = alpha_bar(n, s)
        if not p < ab:
            continue
        tr = bootstrap_ladder(n, s, p)
        reached += abs(tr.reached - p) <= 1e-12
        try:
            bootstrap_ladder(n, s, ab + 0.1)
        except UnreachableTargetError:
            refused += 1
    ok = reached == refused == len(LADDER_GRID)
    return ok, f"reached {reached}/{len(LADDER_GRID)}, refused above alpha_bar {refused}/{len(LADDER_GRID)}"


CRITERIA = (
    (1, "n0(1) = 10", c1, 0.01),
    (2, "n0(2) vs quartic root", c2, 0.01),
    (3, "critical curve bounds and monotonicity", c3, 1.0),
    (4, "cubic roots and delta gap", c4, 0.01),
    (5, "s=2 Hardy-Rellich cross-form", c5, 0.01),
    (6, "radial fractional Laplacian of log", c6, 30.0),
    (7, "Fall integral reproduces Lambda", c7, 60.0),
    (8, "composition identity for A", c8, 0.01),
    (9, "Rellich sign flip at n = 13", c9, 10.0),
    (10, "fourth-order E constant on singular", c10, 5.0),
    (11, "fourth-order monotonicity bound", c11, 30.0),
    (12, "extension kernel, constants and E", c12, 300.0),
    (13, "bootstrap ladder", c13, 0.01),
)


def run_criterion(number):
    for num, title, fn, budget in CRITERIA:
        if num == number:
            ok, detail, dt = _timed(fn)
            return CriterionResult(num, title, ok and dt < budget, ok, dt, budget, detail)
    raise KeyError(number)


def run_all(numbers=None, stream=None):
    """Run the requested criteria (all by default) and, when 14 is included, the total-time check."""
    want = set(range(1, 15)) if numbers is None else set(numbers)
    out = []
    t0 = time.perf_counter()
    for num, *_ in CRITERIA:
        if num in want:
            res = run_criterion(num)
            out.append(res)
            if stream is not None:
                print(format_row(res), file=stream, flush=True)
    if 14 in want:
        total = time.perf_counter() - t0
        rows_ok = len(out) == len(want) - 1
        res = CriterionResult(14, "full suite under 10 minutes", rows_ok and total < TOTAL_BUDGET, rows_ok,
                              total, TOTAL_BUDGET, f"{len(out)} rows, total {total:.1f} s")
        out.append(res)
        if stream is not None:
            print(format_row(res), file=stream, flush=True)
    return out


def format_row(r):
    status = "PASS" if r.passed else "FAIL"
    timing = f"{r.elapsed:.3f}s/{r.budget:g}s"
    if r.value_ok and not r.passed:
        timing += " (over budget)"
    return f"[{status}] {r.number:2d} {r.title:<40s} {timing:<22s} {r.detail}"


def format_table(results):
    lines = [format_row(r) for r in results]
    npass = sum(r.passed for r in results)
    lines.append(f"{npass}/{len(results)} criteria passed")
    return "\n".join(lines)
