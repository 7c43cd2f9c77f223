"""Exception taxonomy shared by all modules.

The split mirrors how callers react: parameter/domain/pole errors are
caller bugs (bad input), accuracy/divergence/singular errors are runtime
outcomes a sweep may catch and log without aborting.
"""


class HardygError(Exception):
    """Base class for all package errors."""


class ParameterError(HardygError, ValueError):
    """An argument is outside its documented range."""


class DomainError(HardygError, ValueError):
    """The requested point lies outside the operation's domain of validity."""


class PoleError(HardygError, ValueError):
    """Evaluation requested at (or too close to) a pole."""


class AccuracyError(HardygError, RuntimeError):
    """The requested absolute error target could not be met."""


class DivergenceError(HardygError, RuntimeError):
    """An iteration failed to converge within its step budget."""


class SingularError(HardygError, RuntimeError):
    """A derivative or denominator is too small to continue."""


class NodeError(HardygError, RuntimeError):
    """A sample node could not be evaluated even after perturbation."""
