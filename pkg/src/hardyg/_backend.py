"""Kernel backend selection.

The compiled Cython extension is preferred; the numpy fallback keeps the
package fully functional without a compiler. HARDYG_BACKEND=python forces
the fallback (used by the benchmark and by parity tests).
"""

import os

if os.environ.get("HARDYG_BACKEND", "").lower() == "python":
    from . import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND = "python"

dirichlet_sum = _impl.dirichlet_sum
g_weighted_sum = _impl.g_weighted_sum
g_weighted_deriv_sum = _impl.g_weighted_deriv_sum
rs_main_sum = _impl.rs_main_sum
zeta_em_tail = _impl.zeta_em_tail
zeta_em_sum = _impl.zeta_em_sum
