"""Command-line front end.

Subcommands: eval, zeros, errscan, figure, selftest. Exit codes: 0 on
success, 1 on computational failure, 2 on usage errors. All numeric
output uses 17 significant digits, and outputs are byte-identical across
runs and thread counts.

Environment overrides (also shown by --show-config): HARDYG_C and
HARDYG_SIGMA_U / HARDYG_SIGMA_G for the contour defaults, HARDYG_TARGET
for the default series accuracy target, HARDYG_BACKEND=python to force
the fallback kernels.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from . import __version__
from ._backend import BACKEND
from .errors import HardygError
from .geval import GSeriesConfig, approx_z, g_auto
from .specfun import theta
from .contour import default_config, u_quad
from .zref import z_ref
from . import study, zeros


def _default_target() -> float:
    return float(os.environ.get("HARDYG_TARGET", "1e-12"))


def _show_config() -> None:
    ucfg = default_config("u")
    gcfg = default_config("g")
    print(f"backend={BACKEND}")
    print(f"version={__version__}")
    print(f"target_abs_err={_default_target():.17g}")
    print(f"contour_c={ucfg.c_log:.17g}")
    print(f"contour_sigma_u={ucfg.sigma:.17g}")
    print(f"contour_sigma_g={gcfg.sigma:.17g}")
    print(f"contour_step={ucfg.step:.17g}")
    print("zeros_step=0.050000000000000003")
    print(f"zeros_threshold={zeros.DEFAULT_DROP_THRESHOLD:.17g}")
    print("errscan_samples_per_unit=20")


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _cmd_eval(args) -> int:
    cfg = GSeriesConfig(target_abs_err=args.target)
    t = complex(args.t)
    which = args.which
    if which in ("U", "Z", "approxZ", "theta") and t.imag != 0.0:
        print(f"error: --which {which} requires real t", file=sys.stderr)
        return 1
    if which == "G":
        r = g_auto(t, cfg)
        print(f"which=G t={args.t} value_re={_fmt(r.value.real)} "
              f"value_im={_fmt(r.value.imag)} est_err={_fmt(r.est_err)} "
              f"terms_used={r.terms_used} method={r.method}")
    elif which == "U":
        r = u_quad(t.real)
        print(f"which=U t={args.t} value_re={_fmt(r.value.real)} "
              f"value_im={_fmt(r.value.imag)} est_err={_fmt(r.est_err)} "
              f"terms_used={r.terms_used} method={r.method}")
    elif which == "Z":
        r = z_ref(t.real)
        print(f"which=Z t={args.t} value={_fmt(r.value)} "
              f"est_err={_fmt(r.est_err)} terms_used={r.terms_used} "
              f"method={r.method}")
    elif which == "approxZ":
        v = approx_z(t.real, cfg)
        print(f"which=approxZ t={args.t} value={_fmt(v)} method=accelerated")
    else:
        r = theta(t.real)
        print(f"which=theta t={args.t} value={_fmt(r.value)} "
              f"est_err={_fmt(r.est_err)} terms_used={r.terms_used}")
    return 0


def _cmd_zeros(args) -> int:
    out_dir = args.out_dir
    os.makedirs(out_dir, exist_ok=True)
    if args.t1 < args.t0:
        print("error: need t0 <= t1", file=sys.stderr)
        return 1
    if args.t1 == args.t0:
        records = []
        evidence = []
    elif args.mode == "complexG":
        evidence = []
        records = zeros.find_negative_im_zeros(
            args.t0, args.t1, step=args.step, threshold=args.threshold,
            workers=args.threads, evidence=evidence)
    else:
        tag = {"realF": "approx_z", "realZ": "z_ref"}[args.mode]
        grid = zeros.ScanGrid(args.t0, args.t1, args.step)
        records = zeros.scan_real_zeros(tag, grid)
        evidence = []
    zeros.write_catalog_csv(records, os.path.join(out_dir, "catalog.csv"))
    zeros.write_catalog_json(records, os.path.join(out_dir, "catalog.json"))
    if args.mode == "complexG":
        _write_evidence(evidence, os.path.join(out_dir, "evidence.csv"))
    deepest = min((r.position.imag for r in records), default=0.0)
    max_res = max((r.residual for r in records), default=0.0)
    print(f"count={len(records)} deepest_im={_fmt(deepest)} "
          f"max_residual={_fmt(max_res)}")
    return 0


_EVIDENCE_FIELDS = ("seed", "status", "position_re", "position_im",
                    "residual", "iterations")


def _write_evidence(evidence: list[dict], path) -> None:
    lines = [",".join(_EVIDENCE_FIELDS)]
    for e in evidence:
        vals = []
        for f in _EVIDENCE_FIELDS:
            v = e.get(f, "")
            if isinstance(v, float):
                vals.append(_fmt(v))
            else:
                vals.append(str(v).replace(",", ";"))
        lines.append(",".join(vals))
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def _cmd_errscan(args) -> int:
    if args.synthetic:
        rows = [study.ScanRow(t=t, z=0.0, approx=0.0, abs_diff=t ** (-5.0 / 6.0))
                for t in [100.0 * 1.05 ** k for k in range(120)]]
    else:
        rows = study.error_scan(args.t0, args.t1, args.density,
                                workers=args.threads)
    if args.out:
        study.write_scan_csv(rows, args.out)
    fit = study.fit_decay_exponent(rows, args.windows)
    print(f"rows={len(rows)} slope={_fmt(fit.slope)} "
          f"r_squared={_fmt(fit.r_squared)} windows={fit.window_count}")
    return 0


def _cmd_figure(args) -> int:
    paths = study.figure_data_bundle(args.name, args.out_dir, nx=args.nx,
                                     ny=args.ny, workers=args.threads)
    for p in paths:
        print(p)
    return 0


def _cmd_selftest(args) -> int:
    failures = 0

    def check(label: str, ok: bool) -> None:
        nonlocal failures
        print(f"{'PASS' if ok else 'FAIL'}  {label}")
        if not ok:
            failures += 1

    from .specfun import bernoulli_even, zeta_em
    from .contour import sinh_transform
    bt = bernoulli_even(3)
    check("bernoulli B6 = 1/42", abs(bt.values[3] - 1.0 / 42.0) < 1e-15)
    check("theta(0) = 0", theta(0.0).value == 0.0)
    check("theta odd at t=100", theta(-100.0).value == -theta(100.0).value)
    check("zeta(2) = pi^2/6",
          abs(zeta_em(2.0).value - math.pi ** 2 / 6.0) < 1e-12)
    lg = sinh_transform(math.pi / 2.0, 0.3, 1.0)
    check("sinh transform logistic value",
          abs(lg - math.exp(2.0) / (1.0 + math.exp(2.0))) < 1e-10)
    d = geval_direct_vs_accel_delta()
    check("G route agreement at t=100 (1e-10)", d < 1e-10)
    rows = [study.ScanRow(t=t, z=0.0, approx=0.0, abs_diff=t ** (-5.0 / 6.0))
            for t in [100.0 * 1.05 ** k for k in range(120)]]
    fit = study.fit_decay_exponent(rows, 8)
    check("synthetic decay fit slope = -5/6",
          abs(fit.slope + 5.0 / 6.0) < 1e-6)
    return 1 if failures else 0


def geval_direct_vs_accel_delta() -> float:
    from .geval import g_accel, g_direct
    cfg = GSeriesConfig(target_abs_err=1e-10)
    return abs(g_direct(100.0, cfg).value - g_accel(100.0, cfg).value)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hardyg",
        description="Evaluate the Dirichlet-series approximant to Hardy's Z, "
                    "locate its zeros, and study the approximation error.")
    parser.add_argument("--show-config", action="store_true",
                        help="print effective defaults (incl. env overrides) and exit")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("eval", help="evaluate G, U, Z, approxZ or theta at a point")
    p.add_argument("--which", required=True,
                   choices=["G", "U", "Z", "approxZ", "theta"])
    p.add_argument("--t", required=True,
                   help="evaluation point; complex accepted for G (e.g. 415-0.002j)")
    p.add_argument("--target", type=float, default=_default_target())
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("zeros", help="locate zeros and write catalog files")
    p.add_argument("--mode", required=True, choices=["realF", "realZ", "complexG"])
    p.add_argument("--t0", type=float, required=True)
    p.add_argument("--t1", type=float, required=True)
    p.add_argument("--step", type=float, default=0.05)
    p.add_argument("--threshold", type=float,
                   default=zeros.DEFAULT_DROP_THRESHOLD)
    p.add_argument("--out-dir", default=".")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=_cmd_zeros)

    p = sub.add_parser("errscan", help="scan |Z - approxZ| and fit its decay")
    p.add_argument("--t0", type=float, default=100.0)
    p.add_argument("--t1", type=float, default=10000.0)
    p.add_argument("--density", type=float, default=20.0,
                   help="samples per unit t")
    p.add_argument("--windows", type=int, default=8)
    p.add_argument("--out", default=None, help="write scan rows as CSV")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--synthetic", action="store_true",
                   help="replay the exact power-law fixture instead of scanning")
    p.set_defaults(func=_cmd_errscan)

    p = sub.add_parser("figure", help="emit figure data bundles (grid + metadata)")
    p.add_argument("name", choices=sorted(study._FIGURES))
    p.add_argument("--out-dir", default=".")
    p.add_argument("--nx", type=int, default=None)
    p.add_argument("--ny", type=int, default=None)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=_cmd_figure)

    p = sub.add_parser("selftest", help="run quick internal consistency checks")
    p.set_defaults(func=_cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.show_config:
        _show_config()
        return 0
    if not getattr(args, "command", None):
        parser.print_usage(sys.stderr)
        return 2
    try:
        return args.func(args)
    except HardygError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
