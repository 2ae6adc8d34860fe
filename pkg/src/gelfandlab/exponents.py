"""Moser-iteration exponents: the cubic X^3 - 8X + 4, the gap delta(alpha),
terminal exponents and a simulator of the bootstrap ladder."""
import math
from dataclasses import dataclass, field

from scipy.optimize import brentq

from .errors import DomainError, UnreachableTargetError

__all__ = [
    "CubicRoots",
    "LadderStep",
    "LadderTrace",
    "moser_cubic",
    "moser_cubic_roots",
    "delta_gap",
    "alpha_bar",
    "ladder_parameters",
    "bootstrap_ladder",
]

FLAVORS = ("fractional", "local")


@dataclass(frozen=True)
class CubicRoots:
    alpha_sharp: float
    alpha_star: float
    alpha_neg: float


@dataclass(frozen=True)
class LadderStep:
    exponent: float
    rule: str  # "start", "plus-half" or "dimension-factor"
    source: float | None = None  # input exponent the rule was applied to


@dataclass
class LadderTrace:
    steps: list = field(default_factory=list)
    reached: float = float("nan")
    target: float = float("nan")
    cap: float = float("nan")
    factor: float = float("nan")

    def exponents(self):
        return [st.exponent for st in self.steps]


def moser_cubic(x):
    return (x * x - 8.0) * x + 4.0


_ROOTS = None


def moser_cubic_roots():
    """Three real roots of X^3 - 8X + 4 (bracketed on [-4,-2], [0,1], [2,3])."""
    global _ROOTS
    if _ROOTS is None:
        r = [brentq(moser_cubic, a, b, xtol=1e-15, rtol=1e-15) for a, b in ((-4.0, -2.0), (0.0, 1.0), (2.0, 3.0))]
        _ROOTS = CubicRoots(alpha_sharp=r[1], alpha_star=r[2], alpha_neg=r[0])
    return _ROOTS


def delta_gap(alpha):
    """delta(alpha) = 2 sqrt(2 alpha - 1) / (alpha sqrt(alpha)) - 1, alpha > 1/2."""
    alpha = float(alpha)
    if not alpha > 0.5:
        raise DomainError(f"delta needs alpha > 1/2, got {alpha!r}")
    return 2.0 * math.sqrt(2.0 * alpha - 1.0) / (alpha * math.sqrt(alpha)) - 1.0


def _check_flavor(flavor):
    if flavor not in FLAVORS:
        raise DomainError(f"flavor must be one of {FLAVORS}, got {flavor!r}")


def ladder_parameters(n, s, flavor="fractional"):
    """(factor, cap, start_hi) of the improvement rules.

    fractional: factor n/(n-s), cap min{n/(2s), alpha*}, start below min{n/(2n-2s), 1};
    local (s = 2 structure): factor n/(n-2), cap min{n/4, alpha*}, start below n/(2n-4).
    """
    _check_flavor(flavor)
    n, s = float(n), float(s)
    a_star = moser_cubic_roots().alpha_star
    if flavor == "fractional":
        if not (1.0 <= s < 2.0):
            raise DomainError(f"fractional exponents need 1 <= s < 2, got s={s!r}")
        if not n > 2 * s:
            raise DomainError(f"need n > 2s, got n={n!r}, s={s!r}")
        return n / (n - s), min(n / (2 * s), a_star), min(n / (2 * n - 2 * s), 1.0)
    if not n > 4.0:
        raise DomainError(f"local exponents need n > 4, got n={n!r}")
    return n / (n - 2.0), min(n / 4.0, a_star), min(n / (2 * n - 4.0), 1.0)


def alpha_bar(n, s, flavor="fractional"):
    """Terminal exponent max{factor * m, m + 1/2} with m the cap.

    For the local flavour ``s`` must be 2 (or None).
    """
    if flavor == "local" and s is not None and float(s) != 2.0:
        raise DomainError(f"local flavour is the s = 2 structure, got s={s!r}")
    factor, cap, _ = ladder_parameters(n, 2.0 if s is None else s, flavor)
    return max(factor * cap, cap + 0.5)


def bootstrap_ladder(n, s, target_p, flavor="fractional"):
    """Simulate the exponent ladder from the midpoint start up to ``target_p``.

    Each step applies the better of alpha + 1/2 and factor * alpha to an input
    below the cap.  Because integrability at alpha implies it at every smaller
    exponent, the last step may start from the smallest admissible input that
    lands exactly on the target; the recorded ``source`` is that input.
    """
    if flavor == "local" and s is None:
        s = 2.0
    factor, cap, start_hi = ladder_parameters(n, s, flavor)
    target_p = float(target_p)
    a_sharp = moser_cubic_roots().alpha_sharp
    if not a_sharp < start_hi:
        raise DomainError(f"no admissible start: alpha_sharp={a_sharp:.6f} >= {start_hi:.6f}")
    abar = max(factor * cap, cap + 0.5)
    if not target_p < abar:
        raise UnreachableTargetError(f"target exceeds alpha_bar={abar:.5f}")

    alpha = 0.5 * (a_sharp + start_hi)
    trace = LadderTrace(steps=[LadderStep(alpha, "start")], target=target_p, cap=cap, factor=factor)
    # smallest input from which one rule reaches the target
    need_half, need_factor = target_p - 0.5, target_p / factor
    while alpha < target_p:
        need = min(need_half, need_factor)
        if need <= alpha and need < cap:
            src = max(need, 0.0)
            rule = "plus-half" if need_half <= need_factor else "dimension-factor"
            alpha = target_p
            trace.steps.append(LadderStep(alpha, rule, src))
            break
        if not alpha < cap:
            raise UnreachableTargetError(
                f"cap {cap:.5f} blocks further improvement at alpha={alpha:.5f} (target {target_p})")
        plus, times = alpha + 0.5, factor * alpha
        rule = "plus-half" if plus >= times else "dimension-factor"
        trace.steps.append(LadderStep(max(plus, times), rule, alpha))
        alpha = max(plus, times)
    trace.reached = alpha
    return trace
