"""Shared result carriers.

Every evaluator returns its value together with an absolute error estimate
and a method tag, so precision loss is observable instead of silent.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class EvalResult:
    """A computed function value with bookkeeping.

    value    -- the result (complex for G/U-type evaluators, real for Z-type)
    est_err  -- upper estimate of the absolute error (truncation + quadrature
                + floating-point cancellation where relevant)
    terms_used -- series terms / quadrature nodes consumed
    method   -- one of "direct", "accelerated", "power", "integral", "em", "rs"
    """

    value: complex
    est_err: float
    terms_used: int
    method: str


@dataclass(frozen=True)
class ThetaValue:
    """Value of the phase function (or a derivative) with error estimate."""

    value: float
    est_err: float
    terms_used: int


@dataclass(frozen=True)
class ZeroRecord:
    """A located zero.

    kind is "real_F" (zero of the approximate Z), "real_Z" (zero of the
    reference Z) or "complex_G" (complex zero of G found by Newton).
    """

    position: complex
    residual: float
    seed: float
    iterations: int
    kind: str
