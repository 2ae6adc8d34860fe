"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: domain problems exit with 2, numerical
failures with 3.
"""


class GelfandLabError(Exception):
    pass


class DomainError(GelfandLabError, ValueError):
    """An argument lies outside the range where the quantity is defined."""


class ConvergenceError(GelfandLabError, ArithmeticError):
    """A numerical procedure did not reach its tolerance."""


class NoRootError(ConvergenceError):
    pass


class UnreachableTargetError(ConvergenceError):
    pass
