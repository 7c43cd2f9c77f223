"""Evaluation of Hardy's Z via a weighted Dirichlet-series approximant.

The package evaluates the approximant

    G(t) = sum_{n>=1} n^(-1/2-it) * t/(2 pi n^2 + t),

for which 2 Re{e^{i theta(t)} G(t)} tracks the Hardy function Z(t) with
a power-law error, together with the exact contour-integral companion
U(t), reference evaluators for Z, zero-location pipelines (real zeros and
complex zeros of G), and empirical error studies.
"""

__version__ = "0.1.0"

from ._backend import BACKEND
from .errors import (AccuracyError, DivergenceError, DomainError, HardygError,
                     NodeError, ParameterError, PoleError, SingularError)
from .types import EvalResult, ThetaValue, ZeroRecord
from .specfun import (BernoulliTable, ZetaEMConfig, bernoulli_even, theta,
                      theta_prime, theta_second, zeta_em)
from .zref import z_ref, z_ref_em, z_ref_rs
from .geval import (GSeriesConfig, approx_z, g_accel, g_auto, g_derivative,
                    g_direct, g_power_small, g_residue, weight_factor)
from .contour import (ContourConfig, g_integral_quad, sinh_transform, u_quad,
                      u_quad_phase2)
from .zeros import (PairingReport, ScanGrid, arg_track, detect_jump_seeds,
                    find_negative_im_zeros, newton_complex, pair_zeros,
                    scan_real_zeros)
from .study import (DecayFit, ScanRow, XrayGrid, error_scan,
                    figure_data_bundle, fit_decay_exponent, xray_grid)

__all__ = [name for name in dir() if not name.startswith("_")]
