# cython: boundscheck=False, wraparound=False, cdivision=True
# cython: language_level=3
"""Compiled kernels for the hot inner loops.

Mirrors _kernels_py exactly (see that module for contracts). Sums are
Kahan-compensated and run without the GIL, so sweeps can use thread
pools. Results are deterministic for a fixed argument set.
"""

from libc.math cimport cos, exp, fabs, log, sin, sqrt

cdef double TWO_PI = 6.283185307179586476925287


def dirichlet_sum(double sigma, double tau, long n_terms):
    """Sum of n^(-sigma - i*tau) for n = 1..n_terms."""
    cdef double s_re = 0.0, s_im = 0.0, c_re = 0.0, c_im = 0.0
    cdef double ln, amp, ph, x, y, tmp
    cdef long n
    with nogil:
        for n in range(1, n_terms + 1):
            ln = log(<double> n)
            amp = exp(-sigma * ln)
            ph = tau * ln
            x = amp * cos(ph)
            y = -amp * sin(ph)
            x = x - c_re
            tmp = s_re + x
            c_re = (tmp - s_re) - x
            s_re = tmp
            y = y - c_im
            tmp = s_im + y
            c_im = (tmp - s_im) - y
            s_im = tmp
    return complex(s_re, s_im)


def g_weighted_sum(double t_re, double t_im, long n_terms):
    """Sum of n^(-1/2-i*t) * t/(2*pi*n^2+t) for n = 1..n_terms, t complex."""
    cdef double s_re = 0.0, s_im = 0.0, c_re = 0.0, c_im = 0.0
    cdef double ln, amp, ph, a_re, a_im, dn_re, dn_im, mag, w_re, w_im
    cdef double x, y, tmp, n2
    cdef long n
    with nogil:
        for n in range(1, n_terms + 1):
            ln = log(<double> n)
            amp = exp((-0.5 + t_im) * ln)
            ph = t_re * ln
            a_re = amp * cos(ph)
            a_im = -amp * sin(ph)
            n2 = TWO_PI * (<double> n) * (<double> n)
            dn_re = n2 + t_re
            dn_im = t_im
            mag = dn_re * dn_re + dn_im * dn_im
            w_re = (t_re * dn_re + t_im * dn_im) / mag
            w_im = (t_im * dn_re - t_re * dn_im) / mag
            x = a_re * w_re - a_im * w_im
            y = a_re * w_im + a_im * w_re
            x = x - c_re
            tmp = s_re + x
            c_re = (tmp - s_re) - x
            s_re = tmp
            y = y - c_im
            tmp = s_im + y
            c_im = (tmp - s_im) - y
            s_im = tmp
    return complex(s_re, s_im)


def g_weighted_deriv_sum(double t_re, double t_im, long n_terms):
    """Term-wise t-derivative of g_weighted_sum."""
    cdef double s_re = 0.0, s_im = 0.0, c_re = 0.0, c_im = 0.0
    cdef double ln, amp, ph, a_re, a_im, dn_re, dn_im, mag, w_re, w_im
    cdef double d2_re, d2_im, d2mag, dw_re, dw_im, e_re, e_im
    cdef double x, y, tmp, n2
    cdef long n
    with nogil:
        for n in range(1, n_terms + 1):
            ln = log(<double> n)
            amp = exp((-0.5 + t_im) * ln)
            ph = t_re * ln
            a_re = amp * cos(ph)
            a_im = -amp * sin(ph)
            n2 = TWO_PI * (<double> n) * (<double> n)
            dn_re = n2 + t_re
            dn_im = t_im
            mag = dn_re * dn_re + dn_im * dn_im
            w_re = (t_re * dn_re + t_im * dn_im) / mag
            w_im = (t_im * dn_re - t_re * dn_im) / mag
            # dw = 2 pi n^2 / den^2
            d2_re = dn_re * dn_re - dn_im * dn_im
            d2_im = 2.0 * dn_re * dn_im
            d2mag = d2_re * d2_re + d2_im * d2_im
            dw_re = n2 * d2_re / d2mag
            dw_im = -n2 * d2_im / d2mag
            # e = -i*ln*w + dw
            e_re = ln * w_im + dw_re
            e_im = -ln * w_re + dw_im
            x = a_re * e_re - a_im * e_im
            y = a_re * e_im + a_im * e_re
            x = x - c_re
            tmp = s_re + x
            c_re = (tmp - s_re) - x
            s_re = tmp
            y = y - c_im
            tmp = s_im + y
            c_im = (tmp - s_im) - y
            s_im = tmp
    return complex(s_re, s_im)


def rs_main_sum(double t, double theta_t, long nu):
    """2 * sum of n^(-1/2) * cos(theta_t - t*ln(n)) for n = 1..nu."""
    cdef double s = 0.0, c = 0.0, x, tmp
    cdef long n
    with nogil:
        for n in range(1, nu + 1):
            x = cos(theta_t - t * log(<double> n)) / sqrt(<double> n)
            x = x - c
            tmp = s + x
            c = (tmp - s) - x
            s = tmp
    return 2.0 * s


def zeta_em_tail(double sigma, double tau, long big_n, int m_corr, coefs):
    """Euler-Maclaurin continuation of sum_{n>=big_n} n^(-s).

    Returns (value, first_omitted_abs); see the fallback implementation
    for the formula.
    """
    cdef double complex s = sigma + tau * 1j
    cdef double ln_n = log(<double> big_n)
    cdef double amp = exp(-sigma * ln_n)
    cdef double complex n_minus_s = amp * cos(tau * ln_n) - 1j * amp * sin(tau * ln_n)
    cdef double complex value = (<double> big_n) * n_minus_s / (s - 1.0) + 0.5 * n_minus_s
    cdef double complex rising = 1.0 + 0j
    cdef double complex power = n_minus_s / (<double> big_n)
    cdef double inv_n2 = 1.0 / ((<double> big_n) * (<double> big_n))
    cdef int k
    cdef double ck, first
    for k in range(1, m_corr + 1):
        if k == 1:
            rising = s
        else:
            rising = rising * (s + (2 * k - 3)) * (s + (2 * k - 2))
        ck = coefs[k]
        value = value + ck * rising * power
        power = power * inv_n2
    if m_corr >= 1:
        rising = rising * (s + (2 * m_corr - 1)) * (s + (2 * m_corr))
    else:
        rising = s
    ck = coefs[m_corr + 1]
    first = fabs(ck) * _cabs(rising) * _cabs(power)
    return value, first


cdef inline double _cabs(double complex z) nogil:
    return sqrt(z.real * z.real + z.imag * z.imag)


def zeta_em_sum(double sigma, double tau, long big_n, int m_corr, coefs):
    """Full Euler-Maclaurin zeta: partial sum to big_n - 1 plus tail."""
    cdef object partial
    if big_n > 1:
        partial = dirichlet_sum(sigma, tau, big_n - 1)
    else:
        partial = 0j
    value, first = zeta_em_tail(sigma, tau, big_n, m_corr, coefs)
    return partial + value, first
