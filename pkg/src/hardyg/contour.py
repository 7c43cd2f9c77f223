"""Quadrature realizations of the contour-integral representations.

All integrals run along a horizontal line Im(x) = -sigma, truncated to
|Re(x)| <= b = C log t, with the hyperbolic kernel pi/(2 sinh(pi x / 2))
providing exponential localization:

* u_quad          -- U(t): kernel phase e^{i(theta(t+x) - theta(t))};
                     2 Re{e^{i theta} U} equals the reference Z exactly
* u_quad_phase2   -- quadratic-phase approximation
                     e^{i x theta'(t) + i x^2 theta''(t)/2}
* g_integral_quad -- the G integral with kernel (t/2pi)^{ix/2}
* sinh_transform  -- the scalar transform
                     (1/2 pi i) integral (a/sinh(ax)) e^{ixy} dx,
                     whose closed form is the logistic e^{pi y/a}/(1+e^{pi y/a})

Composite Simpson (or trapezoid) values are computed at step h and h/2
from one shared sampling and Richardson-extrapolated; the h-vs-h/2
difference feeds the error estimate.
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass

from .errors import DomainError, ParameterError
from .specfun import TWO_PI, theta, theta_complex, theta_prime, theta_second, zeta_em
from .types import EvalResult


@dataclass(frozen=True)
class ContourConfig:
    """Path and quadrature parameters.

    sigma -- path height (U-type integrals need (0, 1/2), the G integral
             (1/2, 2)); None picks the operation's default
    c_log -- truncation constant C in b = C log t
    step  -- quadrature node spacing h (<= 0.05)
    rule  -- "simpson" or "trapezoid"
    """

    sigma: float | None = None
    c_log: float = 8.0
    step: float = 0.005
    rule: str = "simpson"

    def __post_init__(self):
        if self.c_log < 2.0:
            raise ParameterError("truncation constant C must be >= 2")
        if not 0.0 < self.step <= 0.05:
            raise ParameterError("step must be in (0, 0.05]")
        if self.rule not in ("simpson", "trapezoid"):
            raise ParameterError("rule must be 'simpson' or 'trapezoid'")


def default_config(kind: str) -> ContourConfig:
    """Operation defaults, honoring the documented env overrides."""
    c_log = float(os.environ.get("HARDYG_C", "8"))
    if kind == "u":
        sigma = float(os.environ.get("HARDYG_SIGMA_U", "0.25"))
    elif kind == "g":
        sigma = float(os.environ.get("HARDYG_SIGMA_G", "1.0"))
    else:
        raise ParameterError(f"unknown contour kind {kind!r}")
    return ContourConfig(sigma=sigma, c_log=c_log)


def _refined_quadrature(f, a: float, b: float, step: float, rule: str):
    """Richardson-extrapolated composite rule over [a, b].

    Samples once at spacing ~step/2, forms the rule at both resolutions,
    extrapolates, and returns (value, est, l1, nodes) where est is the
    classical |coarse - fine| estimate and l1 approximates the integral
    of |f|.
    """
    half = max(1, math.ceil((b - a) / (2.0 * step)))
    n_fine = 4 * half  # intervals at the fine level; divisible by 4
    h_f = (b - a) / n_fine
    values = [f(a + j * h_f) for j in range(n_fine + 1)]
    if rule == "simpson":
        s_f = values[0] + values[-1]
        s_f += 4.0 * sum(values[1:-1:2]) + 2.0 * sum(values[2:-1:2])
        s_f *= h_f / 3.0
        coarse = values[::2]
        s_c = coarse[0] + coarse[-1]
        s_c += 4.0 * sum(coarse[1:-1:2]) + 2.0 * sum(coarse[2:-1:2])
        s_c *= (2.0 * h_f) / 3.0
        value = (16.0 * s_f - s_c) / 15.0
        est = abs(s_f - s_c) / 15.0
    else:
        s_f = (0.5 * (values[0] + values[-1]) + sum(values[1:-1])) * h_f
        coarse = values[::2]
        s_c = (0.5 * (coarse[0] + coarse[-1]) + sum(coarse[1:-1])) * (2.0 * h_f)
        value = (4.0 * s_f - s_c) / 3.0
        est = abs(s_f - s_c) / 3.0
    l1 = h_f * sum(abs(v) for v in values)
    return value, est, l1, n_fine + 1


def _sinh_kernel(x: complex) -> complex:
    return math.pi / (2.0 * cmath.sinh(0.5 * math.pi * x))


_NODE_ZETA_TARGET = 1e-12


def _kernel_line_integral(t: float, cfg: ContourConfig, sigma: float, phase_fn):
    """Shared machinery: integrate phase(x) zeta(1/2+i(t+x)) kern(x) on
    Im x = -sigma, |Re x| <= C log t, and divide by 2 pi i."""
    b = cfg.c_log * math.log(t)
    worst_rel = [0.0]

    def f(y: float) -> complex:
        x = complex(y, -sigma)
        s = complex(0.5 + sigma, t + y)
        z = zeta_em(s, target=_NODE_ZETA_TARGET)
        rel = z.est_err / max(abs(z.value), 1e-3)
        if rel > worst_rel[0]:
            worst_rel[0] = rel
        return phase_fn(x) * z.value * _sinh_kernel(x)

    integral, quad_est, l1, nodes = _refined_quadrature(f, -b, b, cfg.step, cfg.rule)
    value = integral / (2j * math.pi)
    trunc = (abs(f(-b)) + abs(f(b))) * (2.0 / math.pi)
    est = (quad_est + trunc + worst_rel[0] * l1) / TWO_PI
    return value, est, nodes


def u_quad(t: float, cfg: ContourConfig | None = None) -> EvalResult:
    """U(t) by truncated quadrature; t >= 50, path height in (0, 1/2).

    2 Re{e^{i theta(t)} U(t)} reproduces the reference Z(t) exactly (up
    to the reported est_err); the integral is independent of sigma.
    """
    cfg = cfg or default_config("u")
    if t < 50.0:
        raise DomainError("u_quad requires t >= 50")
    sigma = cfg.sigma if cfg.sigma is not None else 0.25
    if not 0.0 < sigma < 0.5:
        raise ParameterError("U-type path height must lie in (0, 1/2)")
    theta_t = theta(t).value
    phase_errs = [0.0]

    def phase(x: complex) -> complex:
        th, err = theta_complex(t + x)
        phase_errs[0] = max(phase_errs[0], err)
        return cmath.exp(1j * (th - theta_t))

    value, est, nodes = _kernel_line_integral(t, cfg, sigma, phase)
    return EvalResult(value=value, est_err=est + phase_errs[0] * abs(value),
                      terms_used=nodes, method="integral")


def u_quad_phase2(t: float, cfg: ContourConfig | None = None) -> EvalResult:
    """U(t) with the kernel phase replaced by its quadratic expansion
    e^{i x theta'(t) + i x^2 theta''(t)/2}; same path as u_quad."""
    cfg = cfg or default_config("u")
    if t < 50.0:
        raise DomainError("u_quad_phase2 requires t >= 50")
    sigma = cfg.sigma if cfg.sigma is not None else 0.25
    if not 0.0 < sigma < 2.0:
        raise ParameterError("quadratic-phase path height must lie in (0, 2)")
    tp = theta_prime(t).value
    ts = theta_second(t).value

    def phase(x: complex) -> complex:
        return cmath.exp(1j * (x * tp + 0.5 * x * x * ts))

    value, est, nodes = _kernel_line_integral(t, cfg, sigma, phase)
    return EvalResult(value=value, est_err=est, terms_used=nodes, method="integral")


def g_integral_quad(t: float, cfg: ContourConfig | None = None) -> EvalResult:
    """The integral representation of G(t); t > 2 pi, path height in
    (1/2, 2). Must reproduce the series evaluators within est_err."""
    cfg = cfg or default_config("g")
    if t <= TWO_PI:
        raise DomainError("g_integral_quad requires t > 2 pi")
    sigma = cfg.sigma if cfg.sigma is not None else 1.0
    if not 0.5 < sigma < 2.0:
        raise ParameterError("G-integral path height must lie in (1/2, 2)")
    half_log = 0.5 * math.log(t / TWO_PI)

    def phase(x: complex) -> complex:
        return cmath.exp(1j * x * half_log)

    value, est, nodes = _kernel_line_integral(t, cfg, sigma, phase)
    return EvalResult(value=value, est_err=est, terms_used=nodes, method="integral")


def sinh_transform(a: float, sigma: float, y: float) -> float:
    """Numerical value of (1/2 pi i) integral of (a/sinh(a x)) e^{ixy}
    along Im x = -sigma; requires 0 < sigma * a < pi.

    The closed form is the logistic function e^{pi y/a}/(1 + e^{pi y/a});
    this routine integrates numerically so the identity can be tested
    against it.
    """
    if a <= 0:
        raise ParameterError("a must be positive")
    if sigma <= 0:
        raise ParameterError("sigma must be positive")
    if sigma * a >= math.pi:
        raise DomainError("need sigma * a < pi to stay below the first kernel pole")
    # truncate where |kernel| e^{sigma y} < 1e-16: |a/sinh(a u)| ~ 2a e^{-a|u|}
    cut = (40.0 + max(0.0, sigma * y) + math.log(2.0 * a + 2.0)) / a + 2.0 / a

    def f(u: float) -> complex:
        x = complex(u, -sigma)
        return (a / cmath.sinh(a * x)) * cmath.exp(1j * x * y)

    # the path passes within (pi/a - sigma) of the kernel pole at -i pi/a;
    # the step must resolve that peak as well as the e^{iuy} oscillation
    pole_gap = math.pi / a - sigma
    step = min(0.025, 0.2 / max(1.0, abs(y)), 0.2 / a, pole_gap / 14.0)
    integral, quad_est, _, _ = _refined_quadrature(f, -cut, cut, step, "simpson")
    value = integral / (2j * math.pi)
    return value.real
