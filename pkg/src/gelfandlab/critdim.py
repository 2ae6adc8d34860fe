"""Critical dimension n0(s) and the fourth-order quartic threshold."""
import math
from dataclasses import dataclass

from scipy.optimize import brentq

from .errors import DomainError, NoRootError
from .specfun import log_gamma

__all__ = [
    "RootResult",
    "g_value",
    "log_f",
    "critical_dimension",
    "fourth_order_threshold",
    "quartic",
    "critical_curve",
    "X_MAX",
]

X_MAX = 64.0
SCAN_STEP = 0.1
SCAN_OFFSET = 0.05


@dataclass(frozen=True)
class RootResult:
    root: float
    bracket: tuple
    iterations: int
    residual: float


def log_f(x, s):
    """ln f(x) with f = Gamma^2((x+2s)/4) Gamma((x-2s)/2) / (Gamma^2((x-2s)/4) Gamma(x/2))."""
    return (2.0 * log_gamma((x + 2 * s) / 4.0) - 2.0 * log_gamma((x - 2 * s) / 4.0)
            + log_gamma((x - 2 * s) / 2.0) - log_gamma(x / 2.0))


def g_value(x, s):
    """g(x) = f(x) - Gamma(1+s); negative exactly where Lambda_{x,s} < A_{x,s}."""
    x, s = float(x), float(s)
    if not (0.0 < s <= 2.0):
        raise DomainError(f"s must lie in (0, 2], got {s!r}")
    if not x > 2.0 * s:
        raise DomainError(f"g is defined for x > 2s = {2 * s!r}, got x={x!r}")
    lg1s = log_gamma(1.0 + s)
    # f - Gamma(1+s) = Gamma(1+s) (exp(ln f - ln Gamma(1+s)) - 1), no cancellation
    return math.exp(lg1s) * math.expm1(log_f(x, s) - lg1s)


def _scan_bracket(fun, lo, hi, step):
    k = 0
    a, fa = lo, fun(lo)
    while a < hi:
        k += 1
        b = min(lo + k * step, hi)
        fb = fun(b)
        if fa == 0.0:
            return a, a
        if fa * fb <= 0.0:
            return a, b
        a, fa = b, fb
    return None


def _refine(fun, a, b, tol):
    if a == b:
        return RootResult(a, (a, b), 0, fun(a))
    root, info = brentq(fun, a, b, xtol=1e-15, rtol=1e-15, maxiter=200, full_output=True)
    res = fun(root)
    if abs(res) > tol:
        raise NoRootError(f"root refinement stalled at x={root!r} with residual {res!r} > tol={tol!r}")
    return RootResult(root, (a, b), info.iterations, res)


def critical_dimension(s, tol=1e-10):
    """Smallest root of g(., s) on (2s, X_MAX] for s in [1, 2]."""
    s = float(s)
    if not (1.0 <= s <= 2.0):
        raise DomainError(f"critical dimension is supported for s in [1, 2], got s={s!r}")
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol!r}")
    fun = lambda x: g_value(x, s)  # noqa: E731
    br = _scan_bracket(fun, 2 * s + SCAN_OFFSET, X_MAX, SCAN_STEP)
    if br is None:
        raise NoRootError(f"no sign change of g on (2s, {X_MAX}] for s={s!r}")
    return _refine(fun, br[0], br[1], tol)


def quartic(x):
    """n^2 (n-4) - 128 (n-2), expanded."""
    return ((x - 4.0) * x - 128.0) * x + 256.0


def fourth_order_threshold(tol=1e-10):
    """Largest real root of n^3 - 4n^2 - 128n + 256, bracketed in [10, 20]."""
    return _refine(quartic, 10.0, 20.0, tol)


def critical_curve(s_min, s_max, steps, tol=1e-10):
    """Rows (s, n0(s), residual, iterations) on an even grid in s."""
    s_min, s_max = float(s_min), float(s_max)
    if not (1.0 <= s_min < s_max <= 2.0):
        raise DomainError(f"need 1 <= s_min < s_max <= 2, got ({s_min!r}, {s_max!r})")
    if int(steps) < 2:
        raise DomainError(f"steps must be >= 2, got {steps!r}")
    steps = int(steps)
    rows = []
    for i in range(steps):
        s = s_min + (s_max - s_min) * i / (steps - 1)
        if i == steps - 1:
            s = s_max
        try:
            r = critical_dimension(s, tol)
        except NoRootError as exc:
            raise NoRootError(f"s={s!r}: {exc}") from exc
        rows.append((s, r.root, r.residual, r.iterations))
    return rows
