#!/usr/bin/env python3
"""Benchmark: compiled Cython kernels vs the numpy fallback.

Runs the hot kernels at sweep-realistic sizes and one end-to-end
argument-tracking window, printing a timing table. Both backends are
imported directly, so the comparison works regardless of which one the
package selected at import time.

Usage: python benchmarks/bench_backends.py [--repeat N]
"""

import argparse
import time

import hardyg._kernels_py as kpy

try:
    import hardyg._kernels as kcy
except ImportError:
    kcy = None

from hardyg.specfun import _EM_COEFS


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def kernel_cases():
    coefs = _EM_COEFS
    return [
        ("dirichlet_sum N=1e4 (zeta on critical line)",
         lambda k: k.dirichlet_sum(0.5, 9000.0, 10_000)),
        ("g_weighted_sum N=2e3 (sweep node, t~5e3)",
         lambda k: k.g_weighted_sum(5000.0, 0.0, 2_000)),
        ("g_weighted_sum N=2e6 (direct route, t~1e3)",
         lambda k: k.g_weighted_sum(1000.0, 0.0, 2_000_000)),
        ("g_weighted_deriv_sum N=2e3",
         lambda k: k.g_weighted_deriv_sum(5000.0, -0.01, 2_000)),
        ("rs_main_sum nu=40 x 1000 calls",
         lambda k: [k.rs_main_sum(10000.0, 31861.92, 39) for _ in range(1000)]),
        ("zeta_em_sum N=3e3 M=10",
         lambda k: k.zeta_em_sum(0.5, 7000.0, 3_000, 10, coefs)),
    ]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    print(f"{'kernel':52s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for label, call in kernel_cases():
        t_py = _time(lambda: call(kpy), args.repeat)
        if kcy is not None:
            t_cy = _time(lambda: call(kcy), args.repeat)
            print(f"{label:52s} {t_py * 1e3:9.2f}ms {t_cy * 1e3:9.2f}ms "
                  f"{t_py / t_cy:7.1f}x")
        else:
            print(f"{label:52s} {t_py * 1e3:9.2f}ms {'n/a':>10s} {'':>8s}")
    # end-to-end: one argument-tracking window per backend
    import importlib
    import os
    import subprocess
    import sys
    code = ("import time; from hardyg import zeros; t0=time.time(); "
            "zeros.arg_track(5000.0, 5020.0, 0.05); "
            "print(f'{time.time()-t0:.3f}')")
    for backend in ("python", "cython") if kcy is not None else ("python",):
        env = dict(os.environ, HARDYG_BACKEND=backend)
        out = subprocess.run([sys.executable, "-c", code], env=env,
                             capture_output=True, text=True)
        print(f"{'arg_track 20 units @ t=5000 (' + backend + ')':52s} "
              f"{float(out.stdout) * 1e3:9.2f}ms")


if __name__ == "__main__":
    main()
