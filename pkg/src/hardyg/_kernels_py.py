"""Pure-Python (numpy) kernel implementations.

Fallback backend used when the compiled extension is unavailable or when
HARDYG_BACKEND=python is set. Signatures must stay in lock-step with
``_kernels.pyx``; the parity test suite compares the two term by term.

Long sums are processed in fixed-size blocks, and block results are
combined with math.fsum in index order, so results are deterministic and
do not depend on how callers partition their work.
"""

import math

import numpy as np

TWO_PI = 2.0 * math.pi

_BLOCK = 1 << 19


def _block_ranges(n_terms):
    start = 1
    while start <= n_terms:
        stop = min(start + _BLOCK, n_terms + 1)
        yield start, stop
        start = stop


def dirichlet_sum(sigma, tau, n_terms):
    """Sum of n^(-sigma - i*tau) for n = 1..n_terms."""
    re_parts, im_parts = [], []
    for start, stop in _block_ranges(n_terms):
        ln = np.log(np.arange(start, stop, dtype=np.float64))
        amp = np.exp(-sigma * ln)
        phase = tau * ln
        re_parts.append(float(np.sum(amp * np.cos(phase))))
        im_parts.append(float(np.sum(amp * np.sin(phase))))
    return complex(math.fsum(re_parts), -math.fsum(im_parts))


def g_weighted_sum(t_re, t_im, n_terms):
    """Sum of n^(-1/2-i*t) * t/(2*pi*n^2+t) for n = 1..n_terms, t complex."""
    t = complex(t_re, t_im)
    re_parts, im_parts = [], []
    for start, stop in _block_ranges(n_terms):
        n = np.arange(start, stop, dtype=np.float64)
        ln = np.log(n)
        amp = np.exp((-0.5 + t_im) * ln)
        phase = t_re * ln
        c = amp * (np.cos(phase) - 1j * np.sin(phase))
        w = t / (TWO_PI * n * n + t)
        term = c * w
        re_parts.append(float(np.sum(term.real)))
        im_parts.append(float(np.sum(term.imag)))
    return complex(math.fsum(re_parts), math.fsum(im_parts))


def g_weighted_deriv_sum(t_re, t_im, n_terms):
    """d/dt of g_weighted_sum, summed term by term.

    Per-term derivative of n^(-1/2-it) * w_n(t) with w_n = t/(2*pi*n^2+t):
    n^(-1/2-it) * (-i*ln(n)*w_n + 2*pi*n^2/(2*pi*n^2+t)^2).
    """
    t = complex(t_re, t_im)
    re_parts, im_parts = [], []
    for start, stop in _block_ranges(n_terms):
        n = np.arange(start, stop, dtype=np.float64)
        ln = np.log(n)
        amp = np.exp((-0.5 + t_im) * ln)
        phase = t_re * ln
        c = amp * (np.cos(phase) - 1j * np.sin(phase))
        den = TWO_PI * n * n + t
        w = t / den
        dw = (TWO_PI * n * n) / (den * den)
        term = c * (-1j * ln * w + dw)
        re_parts.append(float(np.sum(term.real)))
        im_parts.append(float(np.sum(term.imag)))
    return complex(math.fsum(re_parts), math.fsum(im_parts))


def rs_main_sum(t, theta_t, nu):
    """2 * sum of n^(-1/2) * cos(theta_t - t*ln(n)) for n = 1..nu."""
    parts = []
    for start, stop in _block_ranges(nu):
        n = np.arange(start, stop, dtype=np.float64)
        parts.append(float(np.sum(np.cos(theta_t - t * np.log(n)) / np.sqrt(n))))
    return 2.0 * math.fsum(parts)


def zeta_em_tail(sigma, tau, big_n, m_corr, coefs):
    """Continuation of sum_{n>=big_n} n^(-s) by the Euler-Maclaurin formula.

    Returns (value, first_omitted_abs): the tail value

        N^(1-s)/(s-1) + N^(-s)/2 + sum_{k=1}^{M} c_k * (s)_{2k-1} * N^(-s-2k+1)

    with c_k = B_{2k}/(2k)! taken from ``coefs`` (coefs[k], k up to M+1),
    plus the magnitude of the first omitted correction term, which drives
    the caller's error estimate. Valid as analytic continuation whenever
    sigma + 2M + 1 > 0 and s != 1.
    """
    s = complex(sigma, tau)
    ln_n = math.log(big_n)
    n_minus_s = complex(math.exp(-sigma * ln_n) * math.cos(tau * ln_n),
                        -math.exp(-sigma * ln_n) * math.sin(tau * ln_n))
    value = big_n * n_minus_s / (s - 1.0) + 0.5 * n_minus_s
    rising = 1.0 + 0.0j
    power = n_minus_s / big_n
    inv_n2 = 1.0 / (big_n * big_n)
    for k in range(1, m_corr + 1):
        if k == 1:
            rising = s
        else:
            rising = rising * (s + (2 * k - 3)) * (s + (2 * k - 2))
        value += coefs[k] * rising * power
        power *= inv_n2
    rising = rising * (s + (2 * m_corr - 1)) * (s + (2 * m_corr)) if m_corr >= 1 else s
    first_omitted = abs(coefs[m_corr + 1]) * abs(rising) * abs(power)
    return value, first_omitted


def zeta_em_sum(sigma, tau, big_n, m_corr, coefs):
    """Full Euler-Maclaurin zeta: partial sum to big_n - 1 plus tail."""
    if big_n > 1:
        partial = dirichlet_sum(sigma, tau, big_n - 1)
    else:
        partial = 0.0 + 0.0j
    tail, first_omitted = zeta_em_tail(sigma, tau, big_n, m_corr, coefs)
    return partial + tail, first_omitted
