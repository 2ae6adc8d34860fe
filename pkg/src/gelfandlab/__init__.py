"""Numerical lab for the fractional Gelfand-Liouville equation (-Delta)^s u = e^u, 1 < s <= 2."""
__version__ = "0.1.0"

from ._accel import NUMBA_ENABLED, backend
from .constants import (ConstantBundle, ParamPoint, constant_bundle, frac_lap_norm, hardy_constant,
                        nonlinear_coefficient, poisson_norm, neumann_norm, yang_source_constant)
from .critdim import critical_curve, critical_dimension, fourth_order_threshold, g_value
from .errors import ConvergenceError, DomainError, GelfandLabError, NoRootError, UnreachableTargetError
from .exponents import alpha_bar, bootstrap_ladder, delta_gap, moser_cubic_roots
from .fraclap import RadialFunction, fall_hardy_integral, radial_frac_lap
from .specfun import PositiveReal, gamma_ratio, log_gamma

__all__ = [
    "__version__",
    "NUMBA_ENABLED",
    "backend",
    "ConstantBundle",
    "ParamPoint",
    "constant_bundle",
    "frac_lap_norm",
    "hardy_constant",
    "nonlinear_coefficient",
    "poisson_norm",
    "neumann_norm",
    "yang_source_constant",
    "critical_curve",
    "critical_dimension",
    "fourth_order_threshold",
    "g_value",
    "ConvergenceError",
    "DomainError",
    "GelfandLabError",
    "NoRootError",
    "UnreachableTargetError",
    "alpha_bar",
    "bootstrap_ladder",
    "delta_gap",
    "moser_cubic_roots",
    "RadialFunction",
    "fall_hardy_integral",
    "radial_frac_lap",
    "PositiveReal",
    "gamma_ratio",
    "log_gamma",
]
