"""Foundational special functions.

* even-index Bernoulli numbers (exact recurrence, evaluated to doubles),
* the phase function theta(t) that rotates zeta(1/2+it) onto the real
  axis, with its first two derivatives,
* zeta(s) by Euler-Maclaurin summation for Re(s) > -1.

theta uses the classical asymptotic expansion in Bernoulli numbers for
|t| >= T_SWITCH and the exact log-Gamma definition (shifted Stirling)
below. All evaluators report an absolute error estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import _backend
from .errors import DomainError, ParameterError, PoleError
from .types import EvalResult, ThetaValue

TWO_PI = 2.0 * math.pi

# Below this |t| the asymptotic series for theta is replaced by the exact
# log-Gamma definition. At t = 10 the optimally truncated series is still
# good to ~1e-14, so the two regimes overlap comfortably.
T_SWITCH = 10.0

_MAX_CUTOFF = 1 << 26


def _exact_bernoulli(m_max: int) -> list[Fraction]:
    """B_0 .. B_m_max as exact rationals via sum C(m+1,k) B_k = 0."""
    b = [Fraction(1)] * (m_max + 1)
    if m_max >= 1:
        b[1] = Fraction(-1, 2)
    for m in range(2, m_max + 1):
        acc = Fraction(0)
        binom = 1
        for k in range(m):
            acc += binom * b[k]
            binom = binom * (m + 1 - k) // (k + 1)
        b[m] = -acc / (m + 1)
    return b


@dataclass(frozen=True)
class BernoulliTable:
    """values[n] = B_{2n} for n = 0..n_max (values[0] = B_0 = 1)."""

    values: tuple
    n_max: int

    def b2n(self, n: int) -> float:
        if not 0 <= n <= self.n_max:
            raise ParameterError(f"B_{2 * n} outside tabulated range")
        return self.values[n]


def bernoulli_even(n_max: int) -> BernoulliTable:
    """Tabulate B_2, B_4, ..., B_{2*n_max}."""
    if not 1 <= n_max <= 30:
        raise ParameterError("n_max must be in 1..30")
    exact = _exact_bernoulli(2 * n_max)
    return BernoulliTable(values=tuple(float(exact[2 * n]) for n in range(n_max + 1)),
                          n_max=n_max)


_B_EXACT = _exact_bernoulli(60)
_BERN = BernoulliTable(values=tuple(float(_B_EXACT[2 * n]) for n in range(31)), n_max=30)

# Coefficients of the asymptotic expansions of theta and its derivatives:
#   theta(t)   ~ t/2 log(t/2pi) - t/2 - pi/8 + sum c_n t^(1-2n)
#   theta'(t)  ~ 1/2 log(t/2pi)              - sum d_n t^(-2n)
#   theta''(t) ~ 1/(2t)                      + sum e_n t^(-2n-1)
# with c_n = (2^(2n-1)-1)|B_2n| / (2^(2n) (2n-1) 2n), d_n = (2n-1) c_n,
# e_n = 2n d_n; the three series are term-by-term derivatives of each
# other, so derivative consistency holds by construction.
_THETA_N = 12
_THETA_C = [0.0]
_THETA_D = [0.0]
_THETA_E = [0.0]
for _n in range(1, _THETA_N + 2):
    _c = float((2 ** (2 * _n - 1) - 1) * abs(_B_EXACT[2 * _n])
               / Fraction(2 ** (2 * _n) * (2 * _n - 1) * (2 * _n)))
    _THETA_C.append(_c)
    _THETA_D.append(_c * (2 * _n - 1))
    _THETA_E.append(_c * (2 * _n - 1) * (2 * _n))

# B_{2k}/(2k)!, the Euler-Maclaurin correction coefficients.
_EM_COEFS = [0.0] + [float(_B_EXACT[2 * _k] / math.factorial(2 * _k))
                     for _k in range(1, 30)]

# Stirling series coefficients B_{2j} / (2j (2j-1)) for log-Gamma.
_STIR = [0.0] + [float(_B_EXACT[2 * _j] / Fraction((2 * _j) * (2 * _j - 1)))
                 for _j in range(1, 9)]

_LOG_2PI = math.log(TWO_PI)
_LOG_PI = math.log(math.pi)


def _lngamma(z: complex) -> complex:
    """log Gamma by upward recurrence shifts plus the Stirling series.

    Valid for Re(z) > 0; agrees with the principal branch there.
    """
    shift_logs = 0.0 + 0.0j
    w = complex(z)
    while abs(w) < 16.0:
        shift_logs += complex(math.log(abs(w)), math.atan2(w.imag, w.real))
        w += 1.0
    lw = complex(math.log(abs(w)), math.atan2(w.imag, w.real))
    res = (w - 0.5) * lw - w + 0.5 * _LOG_2PI
    winv2 = 1.0 / (w * w)
    wp = 1.0 / w
    for j in range(1, 9):
        res += _STIR[j] * wp
        wp *= winv2
    return res - shift_logs


def _theta_series(a: float, coefs, power0: float):
    """Optimally truncated tail sum coefs[n] * a^(power0 - 2n).

    Stops before the first term that fails to shrink; returns
    (sum, first_omitted_abs, terms_used).
    """
    total = 0.0
    ap = a ** (power0 - 2.0)
    inv = a ** -2.0
    prev = math.inf
    n_used = 0
    est = 0.0
    for n in range(1, _THETA_N + 1):
        term = coefs[n] * ap
        if abs(term) >= prev:
            est = abs(term)
            break
        total += term
        prev = abs(term)
        n_used = n
        ap *= inv
        est = abs(coefs[n + 1] * ap)
    return total, est, n_used


def theta(t: float) -> ThetaValue:
    """Phase function with theta(0) = 0; odd in t by construction."""
    if t == 0.0:
        return ThetaValue(0.0, 0.0, 0)
    sign = -1.0 if t < 0 else 1.0
    a = abs(t)
    if a >= T_SWITCH:
        main = 0.5 * a * math.log(a / TWO_PI) - 0.5 * a - math.pi / 8.0
        tail, est, n_used = _theta_series(a, _THETA_C, 1.0)
        value = main + tail
        return ThetaValue(sign * value, est + 4e-16 * abs(value), n_used)
    value = (_lngamma(0.25 + 0.5j * a)).imag - 0.5 * a * _LOG_PI
    return ThetaValue(sign * value, 1e-14 * max(1.0, abs(value)) + 1e-16, 0)


def theta_complex(z: complex):
    """theta at complex argument via the asymptotic series only.

    Used by the contour integrators, whose paths keep Re(z) well above
    T_SWITCH; the expansion is valid for |arg z| < pi/2.
    Returns (value, est_err).
    """
    if z.real < T_SWITCH * 0.9:
        raise DomainError("complex theta requires Re(z) >= 9")
    lz = complex(math.log(abs(z)), math.atan2(z.imag, z.real))
    value = 0.5 * z * (lz - _LOG_2PI) - 0.5 * z - math.pi / 8.0
    zinv2 = 1.0 / (z * z)
    zp = 1.0 / z
    prev = math.inf
    est = 0.0
    for n in range(1, _THETA_N + 1):
        term = _THETA_C[n] * zp
        if abs(term) >= prev:
            est = abs(term)
            break
        value += term
        prev = abs(term)
        zp *= zinv2
        est = abs(_THETA_C[n + 1] * zp)
    return value, est + 4e-16 * abs(value)


def theta_prime(t: float) -> ThetaValue:
    """d theta / dt; even in t."""
    a = abs(t)
    if a >= T_SWITCH:
        main = 0.5 * math.log(a / TWO_PI)
        tail, est, n_used = _theta_series(a, _THETA_D, 0.0)
        value = main - tail
        return ThetaValue(value, est + 4e-16 * abs(value), n_used)
    h = 1e-4
    value = (theta(a + h).value - theta(a - h).value) / (2.0 * h)
    est = h * h + 4e-16 * max(1.0, abs(theta(a).value)) / h
    return ThetaValue(value, est, 0)


def theta_second(t: float) -> ThetaValue:
    """d^2 theta / dt^2; odd in t."""
    if t == 0.0:
        return ThetaValue(0.0, 1e-8, 0)
    sign = -1.0 if t < 0 else 1.0
    a = abs(t)
    if a >= T_SWITCH:
        main = 0.5 / a
        tail, est, n_used = _theta_series(a, _THETA_E, -1.0)
        value = main + tail
        return ThetaValue(sign * value, est + 4e-16 * abs(value), n_used)
    h = 1e-4
    f0 = theta(a).value
    value = (theta(a + h).value - 2.0 * f0 + theta(a - h).value) / (h * h)
    est = h * h + 8e-16 * max(1.0, abs(f0)) / (h * h)
    return ThetaValue(sign * value, est, 0)


@dataclass(frozen=True)
class ZetaEMConfig:
    """Euler-Maclaurin parameters.

    cutoff None selects the default rule max(10, ceil(|Im s|) + 10);
    correction_order is the number of Bernoulli correction terms.
    """

    cutoff: int | None = None
    correction_order: int = 8

    def __post_init__(self):
        if self.cutoff is not None and self.cutoff < 1:
            raise ParameterError("cutoff must be >= 1")
        if not 0 <= self.correction_order <= len(_EM_COEFS) - 2:
            raise ParameterError("correction order outside Bernoulli table")


def _em_error_factor(s: complex, m: int) -> float:
    """Rigorous multiplier turning the first omitted term into a bound."""
    return abs(s + (2 * m + 1)) / (s.real + 2 * m + 1)


def _auto_cutoff(s: complex, m: int, target: float) -> int:
    """Smallest N with predicted Euler-Maclaurin error below target."""
    ln_num = math.log(abs(_EM_COEFS[m + 1])) + math.log(_em_error_factor(s, m))
    for j in range(2 * m + 1):
        q = abs(s + j)
        if q > 0.0:
            ln_num += math.log(q)
    ln_n = (ln_num - math.log(target)) / (s.real + 2 * m + 1)
    n = max(16, math.ceil(math.exp(min(ln_n, 60.0))))
    return min(n, _MAX_CUTOFF)


def _abs_partial_sum(sigma: float, n: int) -> float:
    """Upper estimate of sum_{k<=n} k^(-sigma), for rounding bounds."""
    if sigma > 1.0:
        return sigma / (sigma - 1.0)
    if sigma == 1.0:
        return math.log(n) + 1.0
    return (n ** (1.0 - sigma)) / (1.0 - sigma) + 1.0


def zeta_em(s: complex, cfg: ZetaEMConfig | None = None, *,
            target: float | None = None) -> EvalResult:
    """zeta(s) for Re(s) > -1, s != 1, by Euler-Maclaurin summation.

    With an explicit cfg its cutoff/correction order are honored verbatim
    and the reported est_err tells whether they were adequate. Otherwise a
    cutoff is auto-selected to meet `target` (default 1e-12).
    """
    s = complex(s)
    if s == 1.0:
        raise PoleError("zeta has its pole at s = 1")
    if s.real <= -1.0:
        raise DomainError("Euler-Maclaurin route restricted to Re(s) > -1")
    if cfg is not None:
        m = cfg.correction_order
        n = cfg.cutoff if cfg.cutoff is not None else max(10, math.ceil(abs(s.imag)) + 10)
    else:
        m = 10
        n = _auto_cutoff(s, m, target if target is not None else 1e-12)
    value, first_omitted = _backend.zeta_em_sum(s.real, s.imag, n, m, _EM_COEFS)
    trunc = first_omitted * _em_error_factor(s, m)
    rounding = 2.4e-16 * (_abs_partial_sum(s.real, n) + abs(value))
    return EvalResult(value=value, est_err=trunc + rounding,
                      terms_used=n + m, method="em")


def zeta_em_tail_from(s: complex, start: int, m: int = 10):
    """Analytic continuation of sum_{n>=start} n^(-s), with error estimate.

    This is the Euler-Maclaurin formula without its leading partial sum;
    the accelerated G evaluator relies on it to avoid forming large
    cancelling intermediates. Returns (value, est_err).
    """
    value, first_omitted = _backend.zeta_em_tail(s.real, s.imag, start, m, _EM_COEFS)
    return value, first_omitted * _em_error_factor(s, m)
