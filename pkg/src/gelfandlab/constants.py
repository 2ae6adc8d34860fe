"""Closed-form constants indexed by a parameter point (n, s).

Every Gamma product is assembled as a sum of log-Gamma terms and exponentiated
once at the end, so large real ``n`` never overflows.
"""
import math
from dataclasses import dataclass

from .errors import DomainError
from .specfun import log_gamma, log_surface_area, surface_area

__all__ = [
    "ParamPoint",
    "ConstantBundle",
    "hardy_constant",
    "nonlinear_coefficient",
    "frac_lap_norm",
    "frac_lap_norm_signed",
    "poisson_norm",
    "neumann_norm",
    "yang_source_constant",
    "constant_bundle",
    "surface_area",
    "log_surface_area",
]


@dataclass(frozen=True)
class ParamPoint:
    """Dimension ``n`` (real) and order ``s`` with 0 < s <= 2 and n > 2s."""

    n: float
    s: float

    def __post_init__(self):
        n, s = float(self.n), float(self.s)
        if not (0.0 < s <= 2.0):
            raise DomainError(f"order s must lie in (0, 2], got s={s!r}")
        if not n > 2.0 * s:
            raise DomainError(f"need n > 2s, got n={n!r}, s={s!r}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "s", s)


def _point(p, s=None):
    if isinstance(p, ParamPoint):
        return p
    if s is None:
        n, s = p
        return ParamPoint(n, s)
    return ParamPoint(p, s)


def _log_hardy(n, s):
    return (2 * s * math.log(2.0)
            + 2.0 * log_gamma((n + 2 * s) / 4.0)
            - 2.0 * log_gamma((n - 2 * s) / 4.0))


def _log_coeff(n, s):
    return (2 * s * math.log(2.0)
            + log_gamma(n / 2.0) + log_gamma(1.0 + s)
            - log_gamma((n - 2 * s) / 2.0))


def hardy_constant(p, s=None):
    """Sharp Hardy constant 2^{2s} Gamma^2((n+2s)/4) / Gamma^2((n-2s)/4).

    Accepts a ``ParamPoint``, an ``(n, s)`` pair, or ``hardy_constant(n, s)``.
    """
    p = _point(p, s)
    return math.exp(_log_hardy(p.n, p.s))


def nonlinear_coefficient(p, s=None):
    """A_{n,s} = 2^{2s} Gamma(n/2) Gamma(1+s) / Gamma((n-2s)/2).

    u = -2s log|x| + log A_{n,s} solves the equation away from the origin.
    """
    p = _point(p, s)
    return math.exp(_log_coeff(p.n, p.s))


def frac_lap_norm(n, t):
    """Singular-integral normalisation C_{n,t} of (-Delta)^t for 0 < t < 1."""
    n, t = float(n), float(t)
    if not (0.0 < t < 1.0):
        raise DomainError(f"C_(n,t) needs 0 < t < 1, got t={t!r}")
    if not n > 0:
        raise DomainError(f"dimension must be positive, got n={n!r}")
    # |Gamma(-t)| = Gamma(1-t)/t
    return math.exp(2 * t * math.log(2.0) + log_gamma(n / 2.0 + t) + math.log(t)
                    - 0.5 * n * math.log(math.pi) - log_gamma(1.0 - t))


def frac_lap_norm_signed(n, s):
    """Analytic continuation 2^{2s} Gamma(n/2+s) s / (pi^{n/2} Gamma(1-s)).

    Coincides with C_{n,s} on (0, 1), vanishes at s = 1 and is negative on
    (1, 2).  Used to normalise the finite-part Hardy integral for s >= 1.
    """
    n, s = float(n), float(s)
    if not (0.0 < s < 2.0):
        raise DomainError(f"signed normalisation needs 0 < s < 2, got s={s!r}")
    if s == 1.0:
        return 0.0
    head = 2 * s * math.log(2.0) + log_gamma(n / 2.0 + s) + math.log(s) - 0.5 * n * math.log(math.pi)
    if s < 1.0:
        return math.exp(head - log_gamma(1.0 - s))
    # Gamma(1-s) = Gamma(2-s)/(1-s) is negative on (1, 2)
    return -math.exp(head - log_gamma(2.0 - s) + math.log(s - 1.0))


def poisson_norm(n, s):
    """kappa_{n,s} = Gamma(n/2+s) / (Gamma(s) pi^{n/2})."""
    n, s = float(n), float(s)
    if not (n > 0 and s > 0):
        raise DomainError(f"kappa_(n,s) needs n, s > 0, got n={n!r}, s={s!r}")
    return math.exp(log_gamma(n / 2.0 + s) - log_gamma(s) - 0.5 * n * math.log(math.pi))


def neumann_norm(s):
    """kappa_s = Gamma(1-s/2) / (2^{s-1} Gamma(s/2)), 0 < s < 2."""
    s = float(s)
    if not (0.0 < s < 2.0):
        raise DomainError(f"kappa_s needs 0 < s < 2, got s={s!r}")
    return math.exp(log_gamma(1.0 - s / 2.0) - (s - 1.0) * math.log(2.0) - log_gamma(s / 2.0))


def yang_source_constant(s):
    """Limit ratio y^b d_y Delta_b u_e / (-Delta)^s u for the order-s Poisson extension.

    Equals 2^{3-2s} Gamma(2-s) / Gamma(s) (independent of n); 2 at s = 3/2.
    """
    s = float(s)
    if not (1.0 < s < 2.0):
        raise DomainError(f"extension source constant needs 1 < s < 2, got s={s!r}")
    return math.exp((3.0 - 2.0 * s) * math.log(2.0) + log_gamma(2.0 - s) - log_gamma(s))


@dataclass(frozen=True)
class ConstantBundle:
    n: float
    s: float
    hardy: float | None
    coeff: float | None
    frac_lap_norm: float | None
    poisson_norm: float
    neumann_norm: float | None
    b: float
    t: float | None = None

    def as_dict(self):
        return {k: getattr(self, k) for k in
                ("n", "s", "hardy", "coeff", "frac_lap_norm", "poisson_norm", "neumann_norm", "b", "t")}


def constant_bundle(n, s=None, t=None):
    """All constants at one parameter point.

    ``t`` selects the order of the singular-integral normalisation; by default
    t = s for s < 1 and t = s - 1 for 1 < s < 2.  Components whose range
    excludes the point are ``None``: C_{n,t} for integer s, kappa_s at s = 2,
    and the Hardy/nonlinear pair when n <= 2s (b and kappa_{n,s} stay defined).
    """
    if isinstance(n, ParamPoint):
        n, s = n.n, n.s
    n, s = float(n), float(s)
    if not (0.0 < s <= 2.0):
        raise DomainError(f"order s must lie in (0, 2], got s={s!r}")
    if not n > 0.0:
        raise DomainError(f"dimension must be positive, got n={n!r}")
    if t is None:
        if s < 1.0:
            t = s
        elif 1.0 < s < 2.0:
            t = s - 1.0
    admissible = n > 2.0 * s
    return ConstantBundle(
        n=n,
        s=s,
        hardy=math.exp(_log_hardy(n, s)) if admissible else None,
        coeff=math.exp(_log_coeff(n, s)) if admissible else None,
        frac_lap_norm=frac_lap_norm(n, t) if t is not None else None,
        poisson_norm=poisson_norm(n, s),
        neumann_norm=neumann_norm(s) if s < 2.0 else None,
        b=3.0 - 2.0 * s,
        t=t,
    )
