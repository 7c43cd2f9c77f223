"""Zero location.

* scan_real_zeros: sign-change bisection for real zeros of the reference
  Z or of the approximate 2 Re{e^{i theta} G}.
* arg_track / detect_jump_seeds / newton_complex /
  find_negative_im_zeros: the pipeline for complex zeros of G below the
  real axis. Passing over a zero t0 - i b, the continuous arg G drops by
  pi - 2 atan(2 b / step) across nearby samples (close to pi for shallow
  zeros, spread over ~b for deep ones), so candidate seeds come from
  cumulative descent runs of the unwrapped argument.
* pair_zeros: greedy nearest-neighbor pairing of two catalogs.

Sweeps are chunked deterministically: chunk boundaries are multiples of
the step, every chunk carries a one-step overlap, and merge order is
fixed, so results are byte-identical for any worker count.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .errors import (DivergenceError, DomainError, HardygError, NodeError,
                     ParameterError, SingularError)
from .geval import GSeriesConfig, approx_z, g_auto, g_derivative
from .specfun import theta_prime
from .types import ZeroRecord
from .zref import z_ref

# Largest principal-value step accepted as ordinary drift; beyond it the
# pair is subdivided (the swing near a zero cannot exceed pi, so 2.7 rad
# between nodes always indicates undersampling).
_SWING = 2.7

# Cumulative descent marking one zero approaches pi from below; 2.2 rad
# keeps three sigma of margin over drift while catching depths well past
# the deepest catalogued zero.
DEFAULT_DROP_THRESHOLD = 2.2

_TINY_G = 1e-13


@dataclass(frozen=True)
class ScanGrid:
    """Uniform scan parameters for real-zero searches."""

    t_start: float
    t_end: float
    step: float

    def __post_init__(self):
        if not self.step > 0:
            raise ParameterError("step must be positive")
        if not self.t_start < self.t_end:
            raise ParameterError("need t_start < t_end")
        tp = theta_prime(self.t_end).value
        if tp > 0 and self.step > math.pi / tp:
            raise ParameterError(
                f"step {self.step} exceeds pi/theta'(t_end) = {math.pi / tp:.4f}; "
                "zeros would be skipped")


@dataclass(frozen=True)
class PairingReport:
    """Outcome of greedy nearest-neighbor catalog matching."""

    matches: tuple
    unmatched_a: tuple
    unmatched_b: tuple
    max_distance: float
    mean_distance: float


_SCAN_FUNCS = {
    "approx_z": (lambda t: approx_z(t), "real_F"),
    "z_ref": (lambda t: z_ref(t).value, "real_Z"),
}


def scan_real_zeros(f, grid: ScanGrid) -> list[ZeroRecord]:
    """Bracket sign changes of f on the grid and bisect to width 1e-10.

    f is "approx_z", "z_ref", or any callable (kind then "real_F").
    Returns records sorted by position; an empty list is fine.
    """
    if callable(f):
        fn, kind = f, "real_F"
    else:
        try:
            fn, kind = _SCAN_FUNCS[f]
        except KeyError:
            raise ParameterError(f"unknown scan function tag {f!r}") from None
    n_steps = math.ceil((grid.t_end - grid.t_start) / grid.step)
    nodes = [grid.t_start + k * grid.step for k in range(n_steps)] + [grid.t_end]
    values = [fn(t) for t in nodes]
    records = []
    for i in range(len(nodes) - 1):
        va, vb = values[i], values[i + 1]
        if va == 0.0:
            records.append(ZeroRecord(complex(nodes[i]), 0.0, nodes[i], 0, kind))
            continue
        if va * vb >= 0.0:
            continue
        a, b, fa = nodes[i], nodes[i + 1], va
        seed = 0.5 * (a + b)
        iters = 0
        while b - a > 1e-10:
            m = 0.5 * (a + b)
            fm = fn(m)
            iters += 1
            if fm == 0.0:
                a = b = m
                break
            if (fm > 0) == (fa > 0):
                a, fa = m, fm
            else:
                b = m
        pos = 0.5 * (a + b)
        records.append(ZeroRecord(complex(pos), abs(fn(pos)), seed, iters, kind))
    return sorted(records, key=lambda r: r.position.real)


def _principal_delta(ga: complex, gb: complex) -> float:
    return math.atan2((gb / ga).imag, (gb / ga).real)


def _eval_g_node(t: float, cfg: GSeriesConfig, step: float) -> tuple[float, complex]:
    g = g_auto(t, cfg).value
    if abs(g) < _TINY_G:
        t = t + step / 7.0
        g = g_auto(t, cfg).value
        if abs(g) < _TINY_G:
            raise NodeError(f"|G| below {_TINY_G} at node t={t}")
    return t, g


def arg_track(t0: float, t1: float, step: float = 0.05, *,
              cfg: GSeriesConfig | None = None) -> list[tuple[float, float]]:
    """Continuous unwrapped arg G(t) samples on [t0, t1].

    Node pairs whose principal argument step exceeds 2.7 rad are halved
    adaptively down to step/8 (drift between nodes is tiny, so only
    undersampled zero swings trigger subdivision).
    """
    if not 0 < t0 < t1:
        raise ParameterError("need 0 < t0 < t1")
    cfg = cfg or GSeriesConfig(target_abs_err=1e-10)
    min_gap = step / 8.0
    n_steps = math.ceil((t1 - t0) / step)
    coarse = [t0 + k * step for k in range(n_steps)] + [t1]
    out = []
    ta, ga = _eval_g_node(coarse[0], cfg, step)
    out.append((ta, ga))

    def refine(ta, ga, tb, gb):
        if abs(_principal_delta(ga, gb)) <= _SWING or (tb - ta) <= min_gap:
            out.append((tb, gb))
            return
        tm, gm = _eval_g_node(0.5 * (ta + tb), cfg, step)
        refine(ta, ga, tm, gm)
        refine(tm, gm, tb, gb)

    for tb_raw in coarse[1:]:
        tb, gb = _eval_g_node(tb_raw, cfg, step)
        refine(ta, ga, tb, gb)
        ta, ga = tb, gb
    track = []
    arg = math.atan2(out[0][1].imag, out[0][1].real)
    track.append((out[0][0], arg))
    for i in range(1, len(out)):
        arg += _principal_delta(out[i - 1][1], out[i][1])
        track.append((out[i][0], arg))
    return track


_SLOPE_GATE = -0.75   # rad/unit of drift-corrected slope to consider at all
_STRONG_FACTOR = 0.9  # strong spikes (excess <= -0.9*threshold) seed directly


def _interp_arg(track, t: float) -> float:
    """Linear interpolation of the unwrapped argument, clamped to ends."""
    if t <= track[0][0]:
        return track[0][1]
    if t >= track[-1][0]:
        return track[-1][1]
    lo, hi = 0, len(track) - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if track[mid][0] <= t:
            lo = mid
        else:
            hi = mid
    t0, a0 = track[lo]
    t1, a1 = track[hi]
    return a0 + (a1 - a0) * (t - t0) / (t1 - t0)


def detect_jump_seeds(track, threshold: float = math.pi) -> list[float]:
    """Seeds at argument descents attributable to below-axis zeros.

    A zero at depth b imprints a Lorentzian slope -b/((t-t0)^2+b^2) on
    arg G: peak -1/b concentrated within ~2b. Detection is recall-first
    (Newton verifies every seed downstream): node pairs whose single
    increment reaches the threshold seed directly, as do steep slope
    spikes relative to the local median drift; borderline spikes must
    additionally show a detrended centered drop >= threshold at one of
    several window scales. Since the per-zero arg drop is strictly below
    pi, the pi default detects nothing real; sweeps pass
    DEFAULT_DROP_THRESHOLD.
    """
    n = len(track)
    if n < 3:
        return []
    slopes = []
    mids = []
    for k in range(n - 1):
        dt = track[k + 1][0] - track[k][0]
        slopes.append((track[k + 1][1] - track[k][1]) / dt if dt > 0 else 0.0)
        mids.append(0.5 * (track[k][0] + track[k + 1][0]))
    m = len(slopes)
    seeds: list[float] = []
    gate = min(_SLOPE_GATE, _SLOPE_GATE * threshold / DEFAULT_DROP_THRESHOLD)
    for i in range(m):
        s = slopes[i]
        delta = track[i + 1][1] - track[i][1]
        if delta <= -threshold:
            seeds.append(mids[i])
            continue
        if s > gate:
            continue
        if (i > 0 and slopes[i - 1] < s) or (i + 1 < m and slopes[i + 1] <= s):
            continue  # not the locally steepest pair
        local = sorted(slopes[k] for k in range(m) if abs(mids[k] - mids[i]) < 6.0)
        drift = local[len(local) // 2]
        excess = s - drift
        if excess > gate:
            continue
        if excess <= -_STRONG_FACTOR * threshold:
            seeds.append(mids[i])
            continue
        for w in (0.2, 0.4, 0.8, 1.6):
            drop = (_interp_arg(track, mids[i] - w)
                    - _interp_arg(track, mids[i] + w)) + drift * 2.0 * w
            if drop >= threshold:
                seeds.append(mids[i])
                break
    deduped: list[float] = []
    for seed in sorted(seeds):
        if deduped and seed - deduped[-1] < 0.005:
            continue
        deduped.append(seed)
    return deduped


def newton_complex(seed: float, max_iter: int = 50, *,
                   cfg: GSeriesConfig | None = None,
                   fn=None, dfn=None,
                   start_offset: complex = -0.01j,
                   tol: float = 1e-12) -> ZeroRecord:
    """Newton refinement t <- t - G/G' from seed + start_offset.

    fn/dfn (complex -> complex) override the G evaluators, e.g. for
    synthetic functions in tests. The iterate is rejected if it wanders
    more than 0.5 from the seed's real part.
    """
    cfg = cfg or GSeriesConfig(target_abs_err=1e-14)
    if fn is None:
        def fn(t):
            r = g_auto(t, cfg)
            # |G| cannot be driven below the evaluation floor (phase
            # rounding); treat reaching it as converged
            return r.value, max(tol, 4.0 * r.est_err)
    else:
        plain_fn = fn

        def fn(t):
            return plain_fn(t), tol
    if dfn is None:
        dfn = lambda t: g_derivative(t, cfg).value
    t = complex(seed) + start_offset
    for it in range(1, max_iter + 1):
        g, stop = fn(t)
        if abs(g) < stop:
            return ZeroRecord(position=t, residual=abs(g), seed=seed,
                              iterations=it, kind="complex_G")
        d = dfn(t)
        if abs(d) < 1e-14:
            raise SingularError(f"|G'| = {abs(d):.2e} too small at {t!r}")
        t = t - g / d
        if abs(t.real - seed) > 0.5:
            raise DivergenceError(
                f"Newton moved {abs(t.real - seed):.3f} from seed {seed}")
    raise DivergenceError(f"no convergence from seed {seed} in {max_iter} steps")


def _chunk_bounds(t0: float, t1: float, step: float, width: float = 200.0):
    """Chunk edges aligned to step multiples, with one-step overlap."""
    w = step * max(1, math.ceil(width / step))
    edges = []
    a = t0
    while a < t1:
        b = min(a + w, t1)
        edges.append((max(t0, a - step), b))
        a = b
    return edges


def _sweep_chunk(args):
    (a, b, step, threshold, cfg, refine_cfg) = args
    evidence = []
    records = []
    start = max(a, step)
    if start >= b:
        return records, evidence
    track = arg_track(start, b, step, cfg=cfg)
    for seed in detect_jump_seeds(track, threshold):
        entry = {"seed": seed}
        try:
            rec = newton_complex(seed, cfg=refine_cfg)
            entry.update(status="ok", position_re=rec.position.real,
                         position_im=rec.position.imag, residual=rec.residual,
                         iterations=rec.iterations)
            if rec.position.imag < 0:
                records.append(rec)
            else:
                entry["status"] = "rejected: Im >= 0"
        except HardygError as exc:
            entry.update(status=f"error: {exc}")
        evidence.append(entry)
    return records, evidence


def find_negative_im_zeros(t0: float, t1: float, *, step: float = 0.05,
                           threshold: float = DEFAULT_DROP_THRESHOLD,
                           workers: int = 1,
                           evidence: list | None = None) -> list[ZeroRecord]:
    """Full sweep: arg_track -> detect_jump_seeds -> newton_complex.

    Keeps zeros with Im < 0, deduplicates within 1e-6 (lexicographically
    smaller position wins), sorts by real part. Per-seed failures are
    logged to `evidence` (if given), never fatal to the sweep.
    """
    if not 0 <= t0 < t1 <= 1e4 + 0.5:
        raise ParameterError("need 0 <= t0 < t1 <= 1e4")
    cfg = GSeriesConfig(target_abs_err=1e-10)
    refine_cfg = GSeriesConfig(target_abs_err=1e-14)
    chunks = [(a, b, step, threshold, cfg, refine_cfg)
              for (a, b) in _chunk_bounds(t0, t1, step)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_chunk, chunks))
    else:
        results = [_sweep_chunk(c) for c in chunks]
    records: list[ZeroRecord] = []
    for recs, ev in results:
        records.extend(recs)
        if evidence is not None:
            evidence.extend(ev)
    records.sort(key=lambda r: (r.position.real, r.position.imag))
    deduped: list[ZeroRecord] = []
    for rec in records:
        if deduped and abs(rec.position - deduped[-1].position) < 1e-6:
            continue
        deduped.append(rec)
    return deduped


def pair_zeros(a: list[ZeroRecord], b: list[ZeroRecord], tol: float) -> PairingReport:
    """Greedy nearest-neighbor matching of two sorted catalogs within tol."""
    pairs = []
    for i, ra in enumerate(a):
        for j, rb in enumerate(b):
            d = abs(ra.position - rb.position)
            if d <= tol:
                pairs.append((d, i, j))
    pairs.sort()
    used_a: set[int] = set()
    used_b: set[int] = set()
    matches = []
    for d, i, j in pairs:
        if i in used_a or j in used_b:
            continue
        used_a.add(i)
        used_b.add(j)
        matches.append((i, j, d))
    unmatched_a = tuple(i for i in range(len(a)) if i not in used_a)
    unmatched_b = tuple(j for j in range(len(b)) if j not in used_b)
    dists = [d for (_, _, d) in matches]
    return PairingReport(
        matches=tuple(sorted(matches)),
        unmatched_a=unmatched_a,
        unmatched_b=unmatched_b,
        max_distance=max(dists) if dists else 0.0,
        mean_distance=sum(dists) / len(dists) if dists else 0.0,
    )


_CATALOG_FIELDS = ("position_re", "position_im", "residual", "seed",
                   "iterations", "kind")


def _record_row(rec: ZeroRecord) -> list[str]:
    return [f"{rec.position.real:.17g}", f"{rec.position.imag:.17g}",
            f"{rec.residual:.17g}", f"{rec.seed:.17g}",
            str(rec.iterations), rec.kind]


def write_catalog_csv(records: list[ZeroRecord], path) -> None:
    lines = [",".join(_CATALOG_FIELDS)]
    lines += [",".join(_record_row(r)) for r in records]
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def write_catalog_json(records: list[ZeroRecord], path) -> None:
    payload = [
        {
            "position_re": rec.position.real,
            "position_im": rec.position.imag,
            "residual": rec.residual,
            "seed": rec.seed,
            "iterations": rec.iterations,
            "kind": rec.kind,
        }
        for rec in records
    ]
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")


def read_catalog_csv(path) -> list[ZeroRecord]:
    with open(path) as fh:
        lines = fh.read().strip().split("\n")
    if lines[0] != ",".join(_CATALOG_FIELDS):
        raise ParameterError(f"unexpected catalog header in {path}")
    records = []
    for line in lines[1:]:
        re_, im_, res, seed, iters, kind = line.split(",")
        records.append(ZeroRecord(complex(float(re_), float(im_)), float(res),
                                  float(seed), int(iters), kind))
    return records
