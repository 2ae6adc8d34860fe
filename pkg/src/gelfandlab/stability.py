"""Stability tests built on a two-sided radial cutoff.

eta is 1 on [0, 1], 0 on [1+w, inf) and a quintic smootherstep in between
(C^2 with closed-form derivatives).  The cutoff family is

    eta_eps(r) = (1 - eta(2r/eps)) * eta(eps r),

which vanishes on [0, eps/2] and [(1+w)/eps, inf) and equals 1 on
[(1+w) eps/2, 1/eps]; for the default w = 1 that is [eps, 1/eps].
"""
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate
from scipy.special import roots_jacobi

from .constants import hardy_constant, nonlinear_coefficient
from .errors import ConvergenceError, DomainError
from .specfun import surface_area

__all__ = [
    "CutoffFamily",
    "ComparisonReport",
    "RellichResult",
    "sphere_nodes",
    "homogeneous_comparison",
    "cutoff_log_coefficient",
    "cutoff_integral",
    "f_eps",
    "rellich_family_sign",
    "rellich_gap",
]


def _smootherstep(x):
    x = np.clip(x, 0.0, 1.0)
    return x * x * x * (x * (6.0 * x - 15.0) + 10.0)


def _smootherstep_d(x, k):
    inside = (x > 0.0) & (x < 1.0)
    if k == 1:
        v = 30.0 * x * x * (1.0 - x) ** 2
    else:
        v = 60.0 * x * (1.0 - x) * (1.0 - 2.0 * x)
    return np.where(inside, v, 0.0)


@dataclass(frozen=True)
class CutoffFamily:
    epsilon: float
    width: float = 1.0

    def __post_init__(self):
        if not (0.0 < self.epsilon < 1.0):
            raise DomainError(f"epsilon must lie in (0, 1), got {self.epsilon!r}")
        if not self.width > 0.0:
            raise DomainError(f"smoothing width must be positive, got {self.width!r}")

    def eta(self, x, k=0):
        """k-th derivative of the base bump eta."""
        x = np.asarray(x, dtype=float)
        z = (x - 1.0) / self.width
        if k == 0:
            return 1.0 - _smootherstep(z)
        return -_smootherstep_d(z, k) / self.width ** k

    def __call__(self, r, k=0):
        """k-th radial derivative (k <= 2) of eta_eps at r."""
        r = np.asarray(r, dtype=float)
        e = self.epsilon
        x, y = 2.0 * r / e, e * r
        a0, b0 = 1.0 - self.eta(x), self.eta(y)
        if k == 0:
            return a0 * b0
        a1, b1 = -(2.0 / e) * self.eta(x, 1), e * self.eta(y, 1)
        if k == 1:
            return a1 * b0 + a0 * b1
        a2, b2 = -(2.0 / e) ** 2 * self.eta(x, 2), e * e * self.eta(y, 2)
        return a2 * b0 + 2.0 * a1 * b1 + a0 * b2

    def breaks(self):
        """Radii where eta_eps changes regime: support ends and plateau ends."""
        e, w = self.epsilon, self.width
        return (0.5 * e, 0.5 * e * (1.0 + w), 1.0 / e, (1.0 + w) / e)


def _quad_log(fun, fam, extra=()):
    """Integrate fun(x) dx over log-radius across the support of the cutoff."""
    pts = sorted(set([math.log(b) for b in fam.breaks()] + [math.log(v) for v in extra]))
    total = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            for a, b in zip(pts[:-1], pts[1:]):
                v, _ = integrate.quad(fun, a, b, epsabs=1e-13, epsrel=1e-12, limit=200)
                total += v
        except integrate.IntegrationWarning as exc:
            raise ConvergenceError(f"cutoff quadrature failed: {exc}") from exc
    return total


def cutoff_integral(eps, width=1.0):
    """I(eps) = int_0^inf r^{-1} eta_eps(r)^2 dr."""
    fam = CutoffFamily(eps, width)
    return _quad_log(lambda x: float(fam(math.exp(x))) ** 2, fam)


def _fit_slope(eps_list, values):
    x = np.log(1.0 / np.asarray(eps_list, dtype=float))
    slope, icpt = np.polyfit(x, np.asarray(values, dtype=float), 1)
    return float(slope), float(icpt)


def _check_eps(eps_list, hi=0.2):
    eps = [float(e) for e in eps_list]
    if len(eps) < 3:
        raise DomainError("need at least 3 epsilon values")
    if any(not (0.0 < e <= hi) for e in eps):
        raise DomainError(f"epsilons must lie in (0, {hi}], got {eps!r}")
    return eps


def cutoff_log_coefficient(eps_list, width=1.0):
    """Rows (eps, I(eps)) and the least-squares slope of I against log(1/eps)."""
    eps = _check_eps(eps_list)
    rows = [(e, cutoff_integral(e, width)) for e in eps]
    slope, _ = _fit_slope(eps, [v for _, v in rows])
    return rows, slope


def f_eps(t, eps, width=1.0):
    """int_0^inf r^{-1} eta_eps(r) (eta_eps(r) - eta_eps(r t)) dr."""
    if not t > 0:
        raise DomainError(f"t must be positive, got {t!r}")
    fam = CutoffFamily(eps, width)
    extra = [b / t for b in fam.breaks()]

    def fun(x):
        r = math.exp(x)
        v = float(fam(r))
        return v * (v - float(fam(r * t)))

    return _quad_log(fun, fam, extra)


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ComparisonReport:
    lhs_coeff: float
    rhs_coeff: float
    stable_possible: bool


def sphere_nodes(n, m=32):
    """Zonal quadrature on S^{n-1}: nodes c = cos(polar angle) and weights summing to |S^{n-1}|."""
    n = int(n)
    if n < 2:
        raise DomainError(f"need n >= 2, got {n!r}")
    a = 0.5 * (n - 3.0)
    c, w = roots_jacobi(m, a, a)
    return c, w * (surface_area(n) / w.sum())


def homogeneous_comparison(n, s, tau=None, m=32, rtol=1e-12):
    """Compare Lambda |S^{n-1}| with int_{S^{n-1}} e^tau for u = tau(theta) - 2s log r.

    ``tau`` may be None (log A_{n,s}), a constant, a zonal callable of the
    polar cosine, or an array of samples at ``sphere_nodes(n, m)``.
    """
    lam = hardy_constant(n, s)
    area = surface_area(n)
    if tau is None:
        rhs = nonlinear_coefficient(n, s) * area
    elif np.ndim(tau) == 0 and not callable(tau):
        rhs = math.exp(float(tau)) * area
    else:
        c, w = sphere_nodes(n, m)
        vals = np.asarray(tau(c) if callable(tau) else tau, dtype=float)
        if vals.shape != c.shape:
            raise DomainError(f"tau samples must have shape {c.shape}, got {vals.shape}")
        rhs = float(np.sum(w * np.exp(vals)))
    lhs = lam * area
    return ComparisonReport(lhs, rhs, bool(lhs >= rhs * (1.0 - rtol)))


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class RellichResult:
    n: int
    rows: tuple  # (eps, Q(psi_eps))
    slope: float  # dQ / dlog(1/eps)
    cutoff_slope: float  # dI / dlog(1/eps) for the same cutoffs
    coefficient: float  # slope / (|S^{n-1}| cutoff_slope)

    @property
    def sign(self):
        return int(np.sign(self.coefficient))


def rellich_gap(n):
    """n^2 (n-4)^2 / 16 - 8 (n-2)(n-4)."""
    return n * n * (n - 4) ** 2 / 16.0 - 8.0 * (n - 2) * (n - 4)


def _rellich_q(n, eps, width):
    fam = CutoffFamily(eps, width)
    c0 = n * (n - 4) / 4.0
    k = 8.0 * (n - 2) * (n - 4)

    # psi = r^{-(n-4)/2} eta_eps: r^{(n-4)/2 + 2} Delta psi = r^2 eta'' + 3 r eta' - c0 eta,
    # and r^{n-1} dr = r^{n} dx with x = log r, so both integrands are x-densities
    def fun(x):
        r = math.exp(x)
        e0, e1, e2 = float(fam(r)), float(fam(r, 1)), float(fam(r, 2))
        d = r * r * e2 + 3.0 * r * e1 - c0 * e0
        return d * d - k * e0 * e0

    return surface_area(n) * _quad_log(fun, fam)


def rellich_family_sign(n, eps_list=(0.1, 0.01, 0.001), width=1.0):
    """Q(psi_eps) = int |Delta psi|^2 - 8(n-2)(n-4) int psi^2 / r^4 on psi_eps = r^{-(n-4)/2} eta_eps."""
    if int(n) != n or n < 5:
        raise DomainError(f"n must be an integer >= 5, got {n!r}")
    n = int(n)
    eps = _check_eps(eps_list)
    rows = tuple((e, _rellich_q(n, e, width)) for e in eps)
    slope, _ = _fit_slope(eps, [q for _, q in rows])
    _, cslope = cutoff_log_coefficient(eps, width)
    return RellichResult(n, rows, slope, cslope, slope / (surface_area(n) * cslope))
