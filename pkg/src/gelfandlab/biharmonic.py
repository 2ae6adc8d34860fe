"""Radial fourth-order problem Delta^2 u = e^u.

Profiles, the singular solution -4 log r + log(8(n-2)(n-4)), shooting from
the origin, dilations u(lam r) + 4 log lam, and the monotonicity energy E(r)
reduced to point values for radial functions.

The ODE is integrated as a first-order system in (u, u', v, v', B, P) with
v = Delta u and the bulk integrals

    B(r) = int_0^r v^2/2 rho^{n-1} d rho,   P(r) = int_0^r e^u rho^{n-1} d rho

carried along, so energies of shooting profiles need no extra quadrature.
"""
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate
from scipy.interpolate import make_interp_spline

from .errors import ConvergenceError, DomainError
from .specfun import surface_area

__all__ = [
    "RadialProfile",
    "EnergyBreakdown",
    "ShootResult",
    "singular_coefficient",
    "singular_profile",
    "zero_profile",
    "radial_bilaplacian",
    "radial_bilaplacian_residual",
    "shoot_radial",
    "bisect_shooting",
    "rescale_profile",
    "energy_local",
    "energy_derivative_fd",
    "monotonicity_bound",
    "perturbed_singular_solution",
    "bump_perturbed_singular",
    "R_START",
    "BLOWUP_GUARD",
]

R_START = 1e-3
BLOWUP_GUARD = math.log(1e290)
ENTIRE_TOL = 1.0
_ODE_OPTS = dict(method="DOP853", rtol=1e-12, atol=1e-14, dense_output=True)


def singular_coefficient(n):
    """A_{n,2} = 8 (n-2)(n-4)."""
    return 8.0 * (n - 2) * (n - 4)


class RadialProfile:
    """Radial function on a log-spaced grid with derivatives up to order 4.

    Either an exact ``evaluator(r, k)`` (k-th derivative, k <= 4) is supplied,
    or the samples are reconstructed by a quintic interpolating spline, which
    reproduces polynomials of degree <= 5 exactly.  ``bulk(r)`` optionally
    returns the pair (B(r), P(r)) in the profile's own dimension ``n``.
    """

    def __init__(self, grid, values=None, evaluator=None, bulk=None, n=None,
                 tag="regular", origin_data=None, name=""):
        grid = np.asarray(grid, dtype=float)
        if grid.ndim != 1 or grid.size < 6 or not np.all(np.diff(grid) > 0) or grid[0] <= 0:
            raise DomainError("grid must be a strictly increasing array of >= 6 positive radii")
        if tag not in ("regular", "log"):
            raise DomainError(f"tag must be 'regular' or 'log', got {tag!r}")
        self.grid = grid
        self.n = n
        self.tag = tag
        self.origin_data = origin_data
        self.name = name
        self._bulk = bulk
        if evaluator is None:
            if values is None:
                raise DomainError("need values or an evaluator")
            values = np.asarray(values, dtype=float)
            if values.shape != grid.shape or not np.all(np.isfinite(values)):
                raise DomainError("values must be finite and match the grid")
            spl = make_interp_spline(grid, values, k=5)
            self._spl = [spl] + [spl.derivative(k) for k in range(1, 5)]
            self._eval = lambda r, k: self._spl[k](r)
            self.values = values
        else:
            self._eval = evaluator
            self.values = np.asarray(evaluator(grid, 0), dtype=float) if values is None else np.asarray(values)

    @property
    def r_min(self):
        return float(self.grid[0])

    @property
    def r_max(self):
        return float(self.grid[-1])

    def derivative(self, r, k=0):
        if not 0 <= k <= 4:
            raise DomainError(f"derivative order must be 0..4, got {k!r}")
        return self._eval(np.asarray(r, dtype=float), k)

    def __call__(self, r):
        return self.derivative(r, 0)

    def laplacian(self, r, n):
        r = np.asarray(r, dtype=float)
        return self.derivative(r, 2) + (n - 1.0) * self.derivative(r, 1) / r

    def bulk_integrals(self, r, n):
        """(int_0^r |Delta u|^2/2 rho^{n-1}, int_0^r e^u rho^{n-1})."""
        if self._bulk is not None and (self.n is None or self.n == n):
            b, p = self._bulk(r)
            return float(b), float(p)
        r0 = self.r_min
        if self.tag == "log":
            # singular model -4 log rho + c below r0
            c = float(self(r0)) + 4.0 * math.log(r0)
            b0 = 8.0 * (n - 2) ** 2 * r0 ** (n - 4) / (n - 4)
            p0 = math.exp(c) * r0 ** (n - 4) / (n - 4)
        else:
            lap0 = float(self.laplacian(r0, n))
            b0 = 0.5 * lap0 * lap0 * r0 ** n / n
            p0 = math.exp(float(self(r0))) * r0 ** n / n
        # integrate in log-radius so the steep rho^{n-1} weight is resolved
        fb = lambda x: 0.5 * float(self.laplacian(math.exp(x), n)) ** 2 * math.exp(n * x)  # noqa: E731
        fp = lambda x: math.exp(float(self(math.exp(x))) + n * x)  # noqa: E731
        pts = [math.log(g) for g in self.grid if r0 < g < r]
        pts = pts[:: max(1, len(pts) // 40)]
        with warnings.catch_warnings():
            warnings.simplefilter("error", integrate.IntegrationWarning)
            try:
                b, _ = integrate.quad(fb, math.log(r0), math.log(r), points=pts or None, epsrel=1e-11, limit=400)
                p, _ = integrate.quad(fp, math.log(r0), math.log(r), points=pts or None, epsrel=1e-11, limit=400)
            except integrate.IntegrationWarning as exc:
                raise ConvergenceError(f"bulk quadrature failed: {exc}") from exc
        return b0 + b, p0 + p


# --------------------------------------------------------------------------


def _singular_eval(lna):
    def ev(r, k):
        r = np.asarray(r, dtype=float)
        if k == 0:
            return -4.0 * np.log(r) + lna
        # d^k/dr^k (-4 log r) = -4 (-1)^{k-1} (k-1)! r^{-k}
        return -4.0 * (-1.0) ** (k - 1) * math.factorial(k - 1) * r ** (-float(k))
    return ev


def singular_profile(n, grid=None):
    """u = -4 log r + log(8 (n-2)(n-4)) with exact derivatives and bulk integrals."""
    if int(n) != n or n < 5:
        raise DomainError(f"singular solution needs an integer n >= 5, got {n!r}")
    n = int(n)
    if grid is None:
        grid = np.geomspace(1e-3, 1e3, 241)
    A = singular_coefficient(n)

    def bulk(r):
        return 8.0 * (n - 2) ** 2 * r ** (n - 4) / (n - 4), A * r ** (n - 4) / (n - 4)

    return RadialProfile(grid, evaluator=_singular_eval(math.log(A)), bulk=bulk, n=n, tag="log",
                         name=f"singular n={n}")


def zero_profile(n, grid=None):
    """u = 0 (not a solution; used as an elementary oracle)."""
    if grid is None:
        grid = np.geomspace(1e-3, 1e3, 241)

    def ev(r, k):
        return np.zeros_like(np.asarray(r, dtype=float))

    return RadialProfile(grid, evaluator=ev, bulk=lambda r: (0.0, r ** n / n), n=n, name="zero")


def radial_bilaplacian(u, n, r):
    """Delta^2 u for radial u: u'''' + 2(n-1)u'''/r + (n-1)(n-3)(u''/r^2 - u'/r^3)."""
    r = np.asarray(r, dtype=float)
    d1, d2, d3, d4 = (u.derivative(r, k) for k in (1, 2, 3, 4))
    return d4 + 2.0 * (n - 1) * d3 / r + (n - 1) * (n - 3) * (d2 / r ** 2 - d1 / r ** 3)


def radial_bilaplacian_residual(u, n, grid=None, profile=False):
    """max over the grid of |Delta^2 u - e^u| r^4 (and the pointwise array if ``profile``)."""
    r = u.grid if grid is None else np.asarray(grid, dtype=float)
    res = np.abs(radial_bilaplacian(u, n, r) - np.exp(u(r))) * r ** 4
    if not np.all(np.isfinite(res)):
        raise ConvergenceError("non-finite bilaplacian residual; reconstruction failed")
    return (float(res.max()), res) if profile else float(res.max())


# --------------------------------------------------------------------------


def _rhs(r, Y, n):
    u, up, v, vp, _, _ = Y
    eu = math.exp(min(u, 700.0))
    rn = r ** (n - 1)
    return [up, v - (n - 1) * up / r, vp, eu - (n - 1) * vp / r, 0.5 * v * v * rn, eu * rn]


def _trap(r, Y, n):
    # u' > 0, v > 0, v' > 0 together force blow-up in finite radius
    return min(Y[1], Y[2], Y[3])


_trap.terminal = True
_trap.direction = 1


def _guard(r, Y, n):
    return Y[0] - BLOWUP_GUARD


_guard.terminal = True
_guard.direction = 1


def _series_state(n, a, b, r0):
    ea = math.exp(a)
    c4 = ea / (8.0 * n * (n + 2))
    return [a + b * r0 ** 2 / (2 * n) + c4 * r0 ** 4,
            b * r0 / n + 4 * c4 * r0 ** 3,
            b + ea * r0 ** 2 / (2 * n),
            ea * r0 / n,
            0.5 * b * b * r0 ** n / n,
            ea * r0 ** n / n]


def _ode_evaluator(sol, n):
    def ev(r, k):
        r = np.asarray(r, dtype=float)
        u, up, v, vp, _, _ = sol(r)
        if k == 0:
            return u
        if k == 1:
            return up
        upp = v - (n - 1) * up / r
        if k == 2:
            return upp
        uppp = vp - (n - 1) * (upp / r - up / r ** 2)
        if k == 3:
            return uppp
        vpp = np.exp(u) - (n - 1) * vp / r
        return vpp - (n - 1) * (uppp / r - 2 * upp / r ** 2 + 2 * up / r ** 3)
    return ev


@dataclass
class ShootResult:
    profile: RadialProfile
    outcome: str  # "entire-like", "blowup", "decaying" or "undecided"
    r_star: float | None  # radius where blow-up was certified
    b: float
    a: float
    drift: float  # max - min of u + 4 log r over the last decade


def _classify(sol, r_end):
    rr = np.geomspace(r_end / 10.0, r_end, 64)
    w = sol(rr)[0] + 4.0 * np.log(rr)
    drift = float(w.max() - w.min())
    if drift <= ENTIRE_TOL:
        return "entire-like", drift
    if w[-1] < w[0] - ENTIRE_TOL:
        return "decaying", drift
    return "undecided", drift


def shoot_radial(n, a, b, r_max=1e2):
    """Integrate Delta^2 u = e^u from u(0)=a, Delta u(0)=b (u'(0) = (Delta u)'(0) = 0)."""
    if int(n) != n or n < 5:
        raise DomainError(f"shooting needs an integer n >= 5, got {n!r}")
    if not (R_START * 10 < r_max <= 1e4):
        raise DomainError(f"r_max must lie in (1e-2, 1e4], got {r_max!r}")
    n = int(n)
    a, b = float(a), float(b)
    y0 = _series_state(n, a, b, R_START)
    if min(y0[1:4]) > 0.0:
        # already trapped at the start radius: certify blow-up without integrating further
        sol = integrate.solve_ivp(_rhs, (R_START, 2 * R_START), y0, args=(n,), **_ODE_OPTS)
        grid = np.geomspace(R_START, 2 * R_START, 16)
        prof = RadialProfile(grid, evaluator=_ode_evaluator(sol.sol, n), n=n, origin_data=(a, 0.0, b, 0.0))
        return ShootResult(prof, "blowup", R_START, b, a, float("nan"))
    sol = integrate.solve_ivp(_rhs, (R_START, r_max), y0, args=(n,), events=(_trap, _guard), **_ODE_OPTS)
    r_end = float(sol.t[-1])
    bulk = lambda r: tuple(sol.sol(r)[4:6])  # noqa: E731
    grid = np.geomspace(R_START, r_end, 400)
    prof = RadialProfile(grid, evaluator=_ode_evaluator(sol.sol, n), bulk=bulk, n=n,
                         origin_data=(a, 0.0, b, 0.0), name=f"shoot n={n} a={a:g} b={b:.15g}")
    if sol.status == 1:
        return ShootResult(prof, "blowup", r_end, b, a, float("nan"))
    if sol.status != 0 or r_end < r_max * (1 - 1e-12):
        return ShootResult(prof, "undecided", None, b, a, float("nan"))
    outcome, drift = _classify(sol.sol, r_end)
    return ShootResult(prof, outcome, None, b, a, drift)


def bisect_shooting(n, a=0.0, lo=-20.0, hi=0.0, r_max=1e2, width=1e-12, horizon=10.0):
    """Bisect Delta u(0) between a non-blow-up ``lo`` and a blow-up ``hi``.

    Outcomes are decided on [0, horizon * r_max] (capped at 1e4) so that the
    unavoidable departure of the final iterate from the separatrix happens
    beyond r_max; the returned shot is the non-blow-up end on [0, r_max].
    """
    lo, hi = float(lo), float(hi)
    r_dec = min(horizon * r_max, 1e4)
    if shoot_radial(n, a, hi, r_dec).outcome != "blowup":
        raise DomainError(f"upper end b={hi!r} does not blow up")
    if shoot_radial(n, a, lo, r_dec).outcome == "blowup":
        raise DomainError(f"lower end b={lo!r} blows up")
    it = 0
    while hi - lo > width and it < 200:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if shoot_radial(n, a, mid, r_dec).outcome == "blowup":
            hi = mid
        else:
            lo = mid
        it += 1
    return shoot_radial(n, a, lo, r_max)


def rescale_profile(u, lam):
    """u^lam(r) = u(lam r) + 4 log lam, on the grid divided by lam."""
    lam = float(lam)
    if not lam > 0:
        raise DomainError(f"lambda must be positive, got {lam!r}")
    base = u

    def ev(r, k):
        r = np.asarray(r, dtype=float)
        v = lam ** k * base.derivative(lam * r, k)
        return v + 4.0 * math.log(lam) if k == 0 else v

    bulk = None
    if base._bulk is not None and base.n is not None:
        n = base.n

        def bulk(r):
            b, p = base._bulk(lam * r)
            return lam ** (4 - n) * b, lam ** (4 - n) * p

    return RadialProfile(base.grid / lam, evaluator=ev, bulk=bulk, n=base.n, tag=base.tag,
                         name=f"{base.name} rescaled by {lam:g}")


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class EnergyBreakdown:
    bulk_dirichlet: float
    bulk_potential: float
    boundary_sq: float
    d_dr_sq_term: float
    log_term: float
    radial_deriv_term: float
    tangential_terms: tuple
    total: float

    def parts(self):
        return (self.bulk_dirichlet, self.bulk_potential, self.boundary_sq, self.d_dr_sq_term,
                self.log_term, self.radial_deriv_term) + tuple(self.tangential_terms)


def _check_margin(u, r, rel=2e-3):
    if not (u.r_min * (1 + rel) <= r <= u.r_max * (1 - rel)):
        raise DomainError(f"r={r!r} too close to the profile ends [{u.r_min:g}, {u.r_max:g}]")


def energy_local(u, n, r):
    """E(r, 0, u) for radial u; sphere integrals become |S^{n-1}| r^{n-1} times point values."""
    if n < 5:
        raise DomainError(f"energy needs n >= 5, got {n!r}")
    r = float(r)
    _check_margin(u, r)
    om = surface_area(n)
    u0 = float(u(r))
    u1 = float(u.derivative(r, 1))
    u2 = float(u.derivative(r, 2))
    g = u1 + 4.0 / r
    B, P = u.bulk_integrals(r, n)
    parts = dict(
        bulk_dirichlet=r ** (4 - n) * om * B,
        bulk_potential=-r ** (4 - n) * om * P,
        boundary_sq=-2.0 * r * r * om * g * g,
        # (1/2) r^3 d/dr [ |S| g^2 ] with g' = u'' - 4/r^2
        d_dr_sq_term=r ** 3 * om * g * (u2 - 4.0 / (r * r)),
        log_term=8.0 * (n - 2) * om * (u0 + 4.0 * math.log(r)),
        radial_deriv_term=4.0 * (n - 2) * r * om * g,
    )
    total = math.fsum(parts.values())
    return EnergyBreakdown(tangential_terms=(0.0, 0.0), total=total, **parts)


def monotonicity_bound(u, n, r):
    """2(n-3) r^{2-n} int_{dB_r} (u_r + 4/r)^2 = 2(n-3) |S^{n-1}| r (u_r + 4/r)^2."""
    g = float(u.derivative(r, 1)) + 4.0 / r
    return 2.0 * (n - 3) * surface_area(n) * r * g * g


def energy_derivative_fd(u, n, r, rel_step=1e-4):
    """Central difference of E(r) (independent of the analytic reduction of its d/dr term)."""
    h = rel_step * r
    return (energy_local(u, n, r + h).total - energy_local(u, n, r - h).total) / (2.0 * h)


# --------------------------------------------------------------------------


def _singular_state(n, r):
    A = singular_coefficient(n)
    return [-4.0 * math.log(r) + math.log(A), -4.0 / r, -4.0 * (n - 2) / r ** 2, 8.0 * (n - 2) / r ** 3,
            8.0 * (n - 2) ** 2 * r ** (n - 4) / (n - 4), A * r ** (n - 4) / (n - 4)]


def perturbed_singular_solution(n, jump=0.5, r1=1.0, r_max=20.0):
    """Solution equal to the singular one on (0, r1], continued by the ODE after
    kicking (Delta u)' by ``jump`` at r1.

    Solves Delta^2 u = e^u away from r1 (where Delta u has a kink), so it is
    an admissible input for the monotonicity check on (r1, r_max).
    """
    n = int(n)
    if n < 5:
        raise DomainError(f"need n >= 5, got {n!r}")
    y0 = _singular_state(n, r1)
    y0[3] += float(jump)
    sol = integrate.solve_ivp(_rhs, (r1, r_max), y0, args=(n,), events=(_trap, _guard), **_ODE_OPTS)
    r_end = float(sol.t[-1])
    sing = _singular_eval(math.log(singular_coefficient(n)))
    ode = _ode_evaluator(sol.sol, n)

    def ev(r, k):
        r = np.asarray(r, dtype=float)
        rc = np.clip(r, r1, r_end)
        return np.where(r < r1, sing(r, k), ode(rc, k))

    def bulk(r):
        if r <= r1:
            st = _singular_state(n, r)
            return st[4], st[5]
        st = sol.sol(r)
        return st[4], st[5]

    grid = np.geomspace(r1 * 1e-3, r_end, 400)
    prof = RadialProfile(grid, evaluator=ev, bulk=bulk, n=n, tag="log",
                         name=f"singular n={n} kicked at r={r1:g} by {jump:g}")
    prof.kink = r1
    prof.blowup = sol.status == 1
    return prof


def bump_perturbed_singular(n, amp=0.1, center=2.0, width=0.5, grid=None):
    """Singular profile plus amp * exp(-((r-center)/width)^2).  Not a solution."""
    n = int(n)
    lna = math.log(singular_coefficient(n))
    sing = _singular_eval(lna)
    # d^k/dr^k exp(-z^2) = (-1)^k H_k(z) exp(-z^2) / width^k, physicists' Hermite
    herm = [lambda z: 1.0, lambda z: 2 * z, lambda z: 4 * z * z - 2,
            lambda z: 8 * z ** 3 - 12 * z, lambda z: 16 * z ** 4 - 48 * z * z + 12]

    def ev(r, k):
        r = np.asarray(r, dtype=float)
        z = (r - center) / width
        bump = amp * (-1.0) ** k * herm[k](z) * np.exp(-z * z) / width ** k
        return sing(r, k) + bump

    if grid is None:
        grid = np.geomspace(1e-3, 1e3, 241)
    return RadialProfile(grid, evaluator=ev, n=n, tag="log",
                         name=f"singular n={n} + bump({amp:g}, {center:g}, {width:g})")
