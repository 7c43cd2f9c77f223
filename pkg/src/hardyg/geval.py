"""Evaluation of the approximant

    G(t) = sum_{n>=1} n^(-1/2-it) * t / (2 pi n^2 + t)

and of the approximate Hardy function 2 Re{e^{i theta(t)} G(t)}.

Routes provided:

* g_direct      -- literal partial sums with a rigorous tail bound (real t > 0)
* g_accel       -- meromorphic continuation valid for |Im t| < 2K + 3/2,
                   evaluated in a cancellation-free grouped form
* g_power_small -- power series in t/(2 pi), |t| < 2 pi
* g_auto        -- dispatch between the three
* g_derivative  -- term-wise derivative (used by Newton refinement)
* g_residue     -- closed-form residues at the simple poles

G extends meromorphically with simple poles at t = (2k - 1/2) i (k >= 1)
and t = -2 pi n^2 (n >= 1). The accelerated route writes

    G(t) = sum_{n<=N} n^(-1/2-it) w_n(t)
         + sum_{k=1}^{K} (-1)^(k+1) (t/2pi)^k tau_k(N)
         + (-1)^K (t/2pi)^K sum_{n>N} n^(-2K-1/2-it) w_n(t)

with w_n = t/(2 pi n^2 + t) and tau_k(N) the continuation of
sum_{n>N} n^(-2k-1/2-it); the last sum is dropped under a tail bound. The
per-n regrouping is an algebraic identity (geometric sum in t/(2 pi n^2)),
and unlike the textbook form it never builds large cancelling
intermediates, so it stays usable in double precision at large t.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from . import _backend
from .errors import AccuracyError, DomainError, ParameterError, PoleError
from .specfun import (TWO_PI, _auto_cutoff, theta, zeta_em,
                      zeta_em_tail_from)
from .types import EvalResult

_POLE_RADIUS = 1e-6


def _tail_order(t: complex) -> int:
    """Euler-Maclaurin order for the continuation tails; higher order pays
    off once the cutoff is driven by large |Im s| = |Re t|."""
    return 12 if abs(t) < 2e4 else 20


@dataclass(frozen=True)
class GSeriesConfig:
    """Series evaluation parameters.

    target_abs_err -- requested absolute accuracy
    max_terms      -- hard cap on summed terms before an accuracy error
    accel_level    -- K, the continuation depth (covers |Im t| < 2K + 3/2)
    """

    target_abs_err: float = 1e-12
    max_terms: int = 100_000_000
    accel_level: int = 3

    def __post_init__(self):
        if not self.target_abs_err > 0:
            raise ParameterError("target_abs_err must be positive")
        if not 0 <= self.accel_level <= 10:
            raise ParameterError("accel_level must be in 0..10")
        if self.max_terms < 1:
            raise ParameterError("max_terms must be >= 1")


_DEFAULT_CFG = GSeriesConfig()


def weight_factor(n: int, t: complex) -> complex:
    """The series weight t/(2 pi n^2 + t).

    For real t > 0 it lies in (0, 1), decreases strictly in n and
    increases strictly in t.
    """
    return t / (TWO_PI * n * n + t)


def imag_pole(k: int) -> complex:
    """The pole (2k - 1/2) i on the positive imaginary axis, k >= 1."""
    return complex(0.0, 2.0 * k - 0.5)


def real_pole(n: int) -> float:
    """The pole -2 pi n^2 on the negative real axis, n >= 1."""
    return -TWO_PI * n * n


def pole_distance(t: complex) -> float:
    """Distance from t to the nearest pole of G."""
    t = complex(t)
    best = math.inf
    k_mid = max(1, round((t.imag + 0.5) / 2.0))
    for k in range(max(1, k_mid - 1), k_mid + 2):
        best = min(best, abs(t - imag_pole(k)))
    if t.real < 0:
        n_mid = max(1, round(math.sqrt(-t.real / TWO_PI)))
    else:
        n_mid = 1
    for n in range(max(1, n_mid - 1), n_mid + 2):
        best = min(best, abs(t - real_pole(n)))
    return best


def _check_pole(t: complex):
    d = pole_distance(t)
    if d < _POLE_RADIUS:
        raise PoleError(f"t={t!r} is within {d:.2e} of a pole of G")


def g_direct(t: float, cfg: GSeriesConfig | None = None) -> EvalResult:
    """Partial sums of the defining series; real t > 0 only.

    The cutoff N is the smallest N >= sqrt(t/2pi) with tail bound
    (t/2pi)(2/3) N^(-3/2) below target; the bound is reported as est_err.
    """
    cfg = cfg or _DEFAULT_CFG
    t = float(t)
    if not t > 0:
        raise DomainError("g_direct requires real t > 0")
    q = t / TWO_PI
    n_min = max(1, math.ceil(math.sqrt(q)))
    n_tail = math.ceil((q * (2.0 / 3.0) / cfg.target_abs_err) ** (2.0 / 3.0))
    n = max(n_min, n_tail)
    if n > cfg.max_terms:
        raise AccuracyError(
            f"g_direct at t={t} needs {n} terms for {cfg.target_abs_err}, "
            f"above max_terms={cfg.max_terms}")
    value = _backend.g_weighted_sum(t, 0.0, n)
    est = (q * (2.0 / 3.0) * n ** -1.5 + 2.4e-16 * (2.0 * math.sqrt(n))
           + _phase_noise(complex(t), n))
    return EvalResult(value=value, est_err=est, terms_used=n, method="direct")


def _accel_cutoff(t: complex, k_level: int, target: float) -> int:
    """Cutoff from three requirements: the dropped remainder tail bound,
    the k=1 Euler-Maclaurin tail's predicted accuracy (the least
    convergent one), and validity of the weight bound."""
    at = abs(t)
    beta = 2.0 * k_level + 1.5 - t.imag
    n_rem = 8
    # Well above the axis the finite sum's terms grow like n^(Im t - 2),
    # so a cutoff driven by the absolute tail target would destroy the
    # value through cancellation; there the retry ladder explores upward
    # from the Euler-Maclaurin base instead and the best estimate wins.
    if at > 0 and beta > 0 and t.imag < 6.0:
        a = 2.0 * (at / TWO_PI) ** (k_level + 1) / beta
        n_rem = math.ceil((a / target) ** (1.0 / beta)) if a > target else 8
    n_em = 16
    if at > 0:
        s1 = complex(2.5 - max(0.0, t.imag), abs(t.real))
        # solve for 0.4x the target so the accuracy check passes first try
        n_em = _auto_cutoff(s1, _tail_order(t),
                            0.4 * target / max(1.0, at / TWO_PI))
    n_w = math.ceil(math.sqrt(at / math.pi)) + 2
    return max(32, n_rem, n_em, n_w)


def _accel_pieces(t: complex, k_level: int, n: int):
    """Grouped-form value and error terms at cutoff n.

    Returns (value, trunc_est, cancel_scale).
    """
    value = _backend.g_weighted_sum(t.real, t.imag, n)
    q = t / TWO_PI
    m_tail = _tail_order(t)
    beta = 2.0 * k_level + 1.5 - t.imag
    dropped = 2.0 * (abs(t) / TWO_PI) ** (k_level + 1) / beta * (n + 1) ** -beta \
        if abs(t) > 0 else 0.0
    trunc = dropped
    cancel = 0.0
    qk = 1.0 + 0.0j
    for k in range(1, k_level + 1):
        qk *= q
        s_k = complex(2 * k + 0.5 - t.imag, t.real)
        tau, tau_err = zeta_em_tail_from(s_k, n + 1, m=m_tail)
        term = qk * tau
        if k % 2 == 0:
            term = -term
        value += term
        trunc += abs(qk) * tau_err
        cancel = max(cancel, abs(term))
    return value, trunc, cancel


def g_accel(t: complex, cfg: GSeriesConfig | None = None) -> EvalResult:
    """Continuation-based evaluation, valid for |Im t| < 2K + 3/2.

    Raises PoleError within 1e-6 of a pole and DomainError when Im t is
    out of reach for the configured K (the caller must raise K).
    """
    cfg = cfg or _DEFAULT_CFG
    t = complex(t)
    k_level = cfg.accel_level
    if abs(t.imag) >= 2.0 * k_level + 1.5:
        raise DomainError(
            f"|Im t| = {abs(t.imag)} needs accel_level > {k_level}")
    _check_pole(t)
    n = _accel_cutoff(t, k_level, cfg.target_abs_err)
    best = None
    for _ in range(5):
        if n > cfg.max_terms:
            break
        value, trunc, cancel = _accel_pieces(t, k_level, n)
        est = (trunc + 2.4e-16 * (cancel + _abs_series_scale(t, n))
               + _phase_noise(t, n))
        if best is None or est < best[1]:
            best = (value, est, n)
        # growing N only reduces the truncation part; the floating-point
        # floor is irreducible, so it does not justify a retry
        if trunc <= 0.5 * cfg.target_abs_err:
            break
        n = math.ceil(n * 1.6)
    if best is None:
        raise AccuracyError(
            f"g_accel at t={t!r} exceeds max_terms={cfg.max_terms}")
    value, est, n = best
    return EvalResult(value=value, est_err=est, terms_used=n, method="accelerated")


def _abs_series_scale(t: complex, n: int) -> float:
    """Magnitude scale of the finite sum, for rounding estimates."""
    sig = 0.5 - max(t.imag, 0.0)
    if sig > 1.0:
        return sig / (sig - 1.0)
    if sig <= -0.5:
        return float(n) ** (1.0 - sig) / (1.0 - sig)
    return 2.0 * math.sqrt(n)


def _phase_noise(t: complex, n: int) -> float:
    """Double-precision floor from rounding the term phases t*ln(n).

    Each summand's phase is formed in doubles, so it carries an absolute
    error of order eps * |t| ln(n); weighting and partial cancellation
    across terms leave a floor that this conservative model tracks.
    """
    return 1.2e-16 * abs(t.real) * (0.5 * math.log(max(n, 2)) + 1.0)


_POWER_EXCLUDED = (1.5j, 3.5j, 5.5j)


def g_power_small(t: complex, k_max: int = 160,
                  cfg: GSeriesConfig | None = None) -> EvalResult:
    """Power series sum_k (-1)^(k+1) (t/2pi)^k zeta(2k+1/2+it), |t| < 2 pi.

    est_err is the geometric tail bound with ratio |t|/2pi. The three
    series poles inside the disc (3i/2, 7i/2, 11i/2) are excluded.
    """
    cfg = cfg or _DEFAULT_CFG
    t = complex(t)
    at = abs(t)
    if at >= TWO_PI * 0.95:
        raise DomainError("power series restricted to |t| < 0.95 * 2 pi")
    for p in _POWER_EXCLUDED:
        if abs(t - p) < _POLE_RADIUS:
            raise PoleError(f"t={t!r} is a pole of a series term")
    if t == 0:
        return EvalResult(value=0.0 + 0.0j, est_err=0.0, terms_used=0, method="power")
    q = t / TWO_PI
    ratio = at / TWO_PI
    value = 0.0 + 0.0j
    qk = 1.0 + 0.0j
    zeta_bound = 3.0
    k = 0
    for k in range(1, k_max + 1):
        qk *= q
        s_k = complex(2 * k + 0.5 - t.imag, t.real)
        zk = zeta_em(s_k, target=cfg.target_abs_err * 0.1)
        term = qk * zk.value
        if k % 2 == 0:
            term = -term
        value += term
        sig_next = 2 * (k + 1) + 0.5 - t.imag
        zeta_bound = (1.0 + 2.0 ** (1.0 - sig_next)) if sig_next > 1.5 \
            else 1.0 + 1.0 / (sig_next - 1.0) if sig_next > 1.0 else 4.0
        if abs(qk) * ratio * zeta_bound / (1.0 - ratio) < cfg.target_abs_err and k >= 3:
            break
    est = abs(qk) * ratio * zeta_bound / (1.0 - ratio) + 4e-16 * (1.0 + abs(value))
    return EvalResult(value=value, est_err=est, terms_used=k, method="power")


def _auto_level(t: complex, target: float = 1e-12) -> int:
    """Continuation depth for g_auto.

    Starts from the smallest K covering Im t (domain |Im t| < 2K + 3/2
    plus dropped-tail decay margin) and raises it while that shrinks the
    required cutoff: at large |t| a deeper continuation makes the dropped
    tail decay much faster for free, since the Euler-Maclaurin tails
    already force a cutoff proportional to |t|.
    """
    im = t.imag
    k = max(3,
            math.ceil((abs(im) - 1.0) / 2.0) + 1,
            math.ceil((3.5 + max(0.0, im)) / 2.0))
    k = min(k, 10)
    best_k, best_n = k, _accel_cutoff(t, k, target)
    while k < 10:
        k += 1
        n = _accel_cutoff(t, k, target)
        if n < best_n:
            best_k, best_n = k, n
        else:
            break
    return best_k


def g_auto(t: complex, cfg: GSeriesConfig | None = None) -> EvalResult:
    """Dispatch: power series for |t| < 5, else the accelerated route
    (falling back to direct sums for real t if acceleration fails)."""
    cfg = cfg or _DEFAULT_CFG
    t = complex(t)
    if abs(t) < 5.0:
        return g_power_small(t, cfg=cfg)
    level = max(_auto_level(t, cfg.target_abs_err), cfg.accel_level)
    acc_cfg = cfg if level == cfg.accel_level else GSeriesConfig(
        target_abs_err=cfg.target_abs_err, max_terms=cfg.max_terms,
        accel_level=level)
    if t.imag == 0.0 and t.real > 0.0:
        try:
            return g_accel(t, acc_cfg)
        except (AccuracyError, DomainError):
            return g_direct(t.real, cfg)
    return g_accel(t, acc_cfg)


def _em_tail_ds(s: complex, start: int, m: int):
    """d/ds of the Euler-Maclaurin tail continuation, with error estimate."""
    from .specfun import _EM_COEFS, _em_error_factor  # shared coefficients
    big_n = float(start)
    ln_n = math.log(big_n)
    n_minus_s = cmath.exp(-s * ln_n)
    lead = big_n * n_minus_s / (s - 1.0)
    value = lead * (-ln_n) - big_n * n_minus_s / ((s - 1.0) * (s - 1.0))
    value += -0.5 * ln_n * n_minus_s
    rising = 1.0 + 0.0j
    harmonic = 0.0 + 0.0j
    power = n_minus_s / big_n
    inv_n2 = 1.0 / (big_n * big_n)
    first_omitted = 0.0
    for k in range(1, m + 1):
        if k == 1:
            rising = s
            harmonic = 1.0 / s
        else:
            rising = rising * (s + (2 * k - 3)) * (s + (2 * k - 2))
            harmonic += 1.0 / (s + (2 * k - 3)) + 1.0 / (s + (2 * k - 2))
        value += _EM_COEFS[k] * rising * power * (harmonic - ln_n)
        power *= inv_n2
    rising = rising * (s + (2 * m - 1)) * (s + (2 * m)) if m >= 1 else s
    first_omitted = abs(_EM_COEFS[m + 1]) * abs(rising) * abs(power) * (ln_n + 2.0)
    return value, first_omitted * _em_error_factor(s, m)


def g_derivative(t: complex, cfg: GSeriesConfig | None = None) -> EvalResult:
    """dG/dt by term-wise differentiation of the grouped accelerated form.

    Per-term derivative of n^(-1/2-it) w_n(t):
    n^(-1/2-it) (-i ln(n) w_n + 2 pi n^2/(2 pi n^2 + t)^2); the tail blocks
    differentiate through the chain rule with ds/dt = i.
    """
    cfg = cfg or _DEFAULT_CFG
    t = complex(t)
    k_level = max(_auto_level(t, cfg.target_abs_err), cfg.accel_level) if t != 0 else cfg.accel_level
    if abs(t.imag) >= 2.0 * k_level + 1.5:
        raise DomainError(f"|Im t| = {abs(t.imag)} out of reach at K={k_level}")
    if t != 0:
        _check_pole(t)
    n = _accel_cutoff(t, k_level, cfg.target_abs_err)
    if n > cfg.max_terms:
        raise AccuracyError("derivative cutoff exceeds max_terms")
    value = _backend.g_weighted_deriv_sum(t.real, t.imag, n)
    q = t / TWO_PI
    m_tail = _tail_order(t)
    beta = 2.0 * k_level + 1.5 - t.imag
    at = abs(t)
    dropped = 2.0 * (at / TWO_PI) ** (k_level + 1) / beta * (n + 1) ** -beta \
        if at > 0 else 0.0
    trunc = dropped * (1.5 * math.log(n + 1) + (k_level / at if at > 1 else 1.0) + 1.0)
    cancel = 0.0
    qk_prev = 1.0 + 0.0j
    for k in range(1, k_level + 1):
        s_k = complex(2 * k + 0.5 - t.imag, t.real)
        tau, tau_err = zeta_em_tail_from(s_k, n + 1, m=m_tail)
        dtau, dtau_err = _em_tail_ds(s_k, n + 1, m_tail)
        qk = qk_prev * q
        term = (k / TWO_PI) * qk_prev * tau + qk * (1j * dtau)
        if k % 2 == 0:
            term = -term
        value += term
        trunc += abs(qk_prev) * (k / TWO_PI) * tau_err + abs(qk) * dtau_err
        cancel = max(cancel, abs(term))
        qk_prev = qk
    est = (trunc + 2.4e-16 * (cancel + _abs_series_scale(t, n) * (math.log(n) + 1.0))
           + _phase_noise(t, n) * (math.log(n) + 1.0))
    return EvalResult(value=value, est_err=est, terms_used=n, method="accelerated")


def g_residue(pole: complex) -> complex:
    """Closed-form residue of G at one of its simple poles.

    At t = -2 pi n^2:   -2 pi n^(3/2) e^(2 pi i n^2 ln n)
    At t = (2k - 1/2)i: (-1)^(k+1) ((2k - 1/2)i / 2pi)^k * (-i)
    """
    pole = complex(pole)
    if abs(pole.real) < 1e-9 and pole.imag > 0:
        k = (pole.imag + 0.5) / 2.0
        rk = round(k)
        if rk >= 1 and abs(k - rk) < 1e-9:
            res = (imag_pole(rk) / TWO_PI) ** rk * (-1j)
            return -res if rk % 2 == 0 else res
    if abs(pole.imag) < 1e-9 and pole.real < 0:
        nn = math.sqrt(-pole.real / TWO_PI)
        rn = round(nn)
        if rn >= 1 and abs(nn - rn) < 1e-9:
            return -TWO_PI * rn ** 1.5 * cmath.exp(2j * math.pi * rn * rn * math.log(rn))
    raise ParameterError(f"{pole!r} is not a pole of G")


def approx_z(t: float, cfg: GSeriesConfig | None = None) -> float:
    """The approximate Hardy function 2 Re{e^{i theta(t)} G(t)}, t > 0."""
    if not t > 0:
        raise DomainError("approx_z requires t > 0")
    th = theta(t)
    g = g_auto(t, cfg)
    return 2.0 * (math.cos(th.value) * g.value.real - math.sin(th.value) * g.value.imag)
