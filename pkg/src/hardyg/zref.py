"""Reference evaluation of the real function Z(t) = e^{i theta(t)} zeta(1/2+it).

Two independent routes are provided and cross-validated:

* z_ref_em  -- exact-but-slow: Euler-Maclaurin zeta, cost O(|t|)
* z_ref_rs  -- fast: Riemann-Siegel main sum plus correction terms
               C_0..C_4, cost O(sqrt(t)); valid for t >= 200

z_ref dispatches between them on an accuracy target. The correction
coefficients are combinations of derivatives of

    Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p),

an entire function (the denominator zeros at odd multiples of 1/4 are
cancelled by the numerator). Taylor series at the five centers p0 = 0,
1/4, 1/2, 3/4, 1 are generated once by power-series division; a point is
always evaluated from the nearest center, keeping |p - p0| <= 1/8, well
inside each division's numerically stable radius. At the singular centers
the shared simple zero is stripped before dividing.
"""

from __future__ import annotations

import math

from .errors import DomainError, ParameterError
from .specfun import TWO_PI, theta, zeta_em
from .types import EvalResult
from . import _backend

_PSI_ORDER = 60


def _cos_of_quadratic(alpha: float, beta: float, gamma2: float, order: int):
    """Series of cos(alpha + beta*h + gamma2*h^2) in powers of h.

    Via c = cos(u), s = sin(u) with u = beta*h + gamma2*h^2 and the ODE
    recurrences c' = -u' s, s' = u' c, then cos(alpha)*c - sin(alpha)*s.
    """
    c = [0.0] * (order + 2)
    s = [0.0] * (order + 2)
    c[0], s[0] = 1.0, 0.0
    for k in range(order + 1):
        prev_s = s[k - 1] if k >= 1 else 0.0
        prev_c = c[k - 1] if k >= 1 else 0.0
        c[k + 1] = -(beta * s[k] + 2.0 * gamma2 * prev_s) / (k + 1)
        s[k + 1] = (beta * c[k] + 2.0 * gamma2 * prev_c) / (k + 1)
    ca, sa = math.cos(alpha), math.sin(alpha)
    return [ca * c[k] - sa * s[k] for k in range(order + 1)]


def _psi_taylor_at(p0: float) -> list[float]:
    """Taylor coefficients of Psi(p0 + h), by series division.

    Numerator: cos(2pi((p0+h)^2-(p0+h)-1/16)), a cosine of a quadratic in
    h. Denominator: cos(2pi p0 + 2pi h). Where the denominator's constant
    term vanishes (p0 = 1/4, 3/4) the numerator vanishes too and one power
    of h is stripped from both before dividing.
    """
    order = _PSI_ORDER
    alpha = TWO_PI * (p0 * p0 - p0 - 1.0 / 16.0)
    beta = TWO_PI * (2.0 * p0 - 1.0)
    num = _cos_of_quadratic(alpha, beta, TWO_PI, order + 1)
    den = _cos_of_quadratic(TWO_PI * p0, TWO_PI, 0.0, order + 1)
    if abs(den[0]) < 0.5:
        if abs(den[0]) > 1e-12 or abs(num[0]) > 1e-12:
            raise AssertionError("expected a shared simple zero at this center")
        num = num[1:]
        den = den[1:]
    quot = [0.0] * (order + 1)
    for k in range(order + 1):
        acc = num[k]
        for j in range(k):
            acc -= quot[j] * den[k - j]
        quot[k] = acc / den[0]
    return quot


_PSI_CENTERS = (0.0, 0.25, 0.5, 0.75, 1.0)
_PSI_COEFS = {p0: _psi_taylor_at(p0) for p0 in _PSI_CENTERS}


def _psi_derivative(p: float, j: int) -> float:
    """j-th derivative of Psi at p in [0, 1], from the nearest center."""
    p0 = min(max(round(p * 4.0) / 4.0, 0.0), 1.0)
    coefs = _PSI_COEFS[p0]
    h = p - p0
    total = 0.0
    # Horner from the top keeps the alternating tail well behaved.
    for m in range(_PSI_ORDER - j, -1, -1):
        c = coefs[m + j] * math.factorial(m + j) / math.factorial(m)
        total = total * h + c
    return total


_PI2 = math.pi * math.pi

# Remainder bounds after truncating the correction series at C_j
# (valid for t >= 200): |R_j| <= _RS_REMAINDER[j] * (t/2pi)^(-(2j+3)/4).
_RS_REMAINDER = [0.127, 0.053, 0.011, 0.031, 0.017]


def _rs_correction_coeffs(p: float) -> list[float]:
    """C_0(p) .. C_4(p) of the Riemann-Siegel correction series."""
    psi = lambda j: _psi_derivative(p, j)
    c0 = psi(0)
    c1 = -psi(3) / (96.0 * _PI2)
    c2 = psi(2) / (64.0 * _PI2) + psi(6) / (18432.0 * _PI2 * _PI2)
    c3 = (-psi(1) / (64.0 * _PI2)
          - psi(5) / (3840.0 * _PI2 * _PI2)
          - psi(9) / (5308416.0 * _PI2 ** 3))
    c4 = (psi(0) / (128.0 * _PI2)
          + psi(4) / (3072.0 * _PI2 * _PI2)
          + psi(8) / (1474560.0 * _PI2 ** 3)
          + psi(12) / (2038431744.0 * _PI2 ** 4))
    return [c0, c1, c2, c3, c4]


def z_ref_rs(t: float, depth: int = 4) -> EvalResult:
    """Riemann-Siegel evaluation of Z(t): main sum plus C_0..C_depth.

    Requires t >= 200 (where the tabulated remainder bounds hold). The
    error estimate is the published remainder bound for the chosen depth
    plus theta/rounding contributions.
    """
    if t < 200.0:
        raise DomainError("Riemann-Siegel route requires t >= 200")
    if not 0 <= depth <= 4:
        raise ParameterError("correction depth must be 0..4")
    a = math.sqrt(t / TWO_PI)
    nu = int(a)
    p = a - nu
    th = theta(t)
    main = _backend.rs_main_sum(t, th.value, nu)
    coeffs = _rs_correction_coeffs(p)
    corr = 0.0
    scale = a ** -0.5
    for j in range(depth + 1):
        corr += coeffs[j] * scale
        scale /= a
    if nu % 2 == 0:
        corr = -corr
    value = main + corr
    est = (_RS_REMAINDER[depth] * (t / TWO_PI) ** (-(2 * depth + 3) / 4.0)
           + th.est_err * 2.0 * (2.0 * math.sqrt(nu))
           + 5e-16 * math.sqrt(nu))
    return EvalResult(value=value, est_err=est, terms_used=nu + depth + 1, method="rs")


def z_ref_em(t: float, *, target: float = 1e-9) -> EvalResult:
    """Z(t) through Euler-Maclaurin zeta(1/2+it); exact but O(|t|) cost.

    Z is even, so the computation runs at |t|. The rotated value
    e^{i theta} zeta(1/2+it) is mathematically real; its residual
    imaginary part is checked as a consistency guard.
    """
    a = abs(t)
    th = theta(a)
    zr = zeta_em(complex(0.5, a), target=target * 0.5)
    w = complex(math.cos(th.value), math.sin(th.value)) * zr.value
    est = zr.est_err + th.est_err * abs(zr.value) + 4e-16 * abs(w)
    if abs(w.imag) > max(1e-8, 10.0 * est):
        raise DomainError(
            f"rotated zeta has imaginary residue {w.imag:.3e} at t={t!r}")
    return EvalResult(value=w.real, est_err=est, terms_used=zr.terms_used, method="em")


# Crossover above which the Riemann-Siegel route meets a 1e-8 target.
_RS_AUTO_MIN = 1200.0


def z_ref(t: float, *, method: str = "auto", target: float = 1e-8) -> EvalResult:
    """Reference Z(t) for real |t| < 1e7.

    method "auto" uses Riemann-Siegel where its remainder bound meets the
    target and Euler-Maclaurin below (cheap there); "em"/"rs" force a route.
    """
    if abs(t) >= 1e7:
        raise ParameterError("|t| must be below 1e7")
    a = abs(t)
    if method == "em":
        return z_ref_em(a, target=target)
    if method == "rs":
        return z_ref_rs(a)
    if method != "auto":
        raise ParameterError(f"unknown z_ref method {method!r}")
    if a >= _RS_AUTO_MIN:
        rs = z_ref_rs(a)
        if rs.est_err <= target:
            return rs
    return z_ref_em(a, target=target)
