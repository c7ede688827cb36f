#!/usr/bin/env python3
"""Benchmark the compiled plane-search kernels against the numpy fallback.

Times the two hot loops (exhaustive plane grid, multi-start descent) on the
Page curvature operator and prints a comparison table.  Both backends are
imported directly, so this runs regardless of which one the package selected.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

from pagecert import _kernels_py
from pagecert.analysis import _start_angles, sphere_grid
from pagecert.curvature import curvature_at
from pagecert.metrics import page_metric

try:
    from pagecert import _kernels_c
except ImportError:
    _kernels_c = None


def best_of(repeat, fn, *args):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    op = curvature_at(page_metric(), 0.85)
    rpp, rpm, rmm = op.sd_blocks()
    starts = _start_angles(32)

    cases = []
    for res in (32, 64, 128):
        pts = sphere_grid(res)
        cases.append(
            (f"grid_minmax(res={res}, {pts.shape[0]}^2 planes)",
             lambda pts=pts: _kernels_py.grid_minmax(rpp, rpm, rmm, pts),
             (lambda pts=pts: _kernels_c.grid_minmax(rpp, rpm, rmm, pts))
             if _kernels_c else None)
        )
    cases.append(
        ("descent_extremum(32 starts)",
         lambda: _kernels_py.descent_extremum(op.matrix, starts, 1.0),
         (lambda: _kernels_c.descent_extremum(op.matrix, starts, 1.0))
         if _kernels_c else None)
    )

    print(f"{'kernel':<42} {'python':>10} {'compiled':>10} {'speedup':>8}")
    for name, py_fn, c_fn in cases:
        t_py, r_py = best_of(args.repeat, py_fn)
        if c_fn is None:
            print(f"{name:<42} {t_py * 1e3:>8.1f}ms {'n/a':>10} {'-':>8}")
            continue
        t_c, r_c = best_of(args.repeat, c_fn)
        v_py = r_py[0] if isinstance(r_py, tuple) else r_py
        v_c = r_c[0] if isinstance(r_c, tuple) else r_c
        agree = abs(float(v_py) - float(v_c)) < 1e-9
        print(
            f"{name:<42} {t_py * 1e3:>8.1f}ms {t_c * 1e3:>8.1f}ms "
            f"{t_py / t_c:>7.1f}x{'' if agree else '  (MISMATCH)'}"
        )
    if _kernels_c is None:
        print("\ncompiled kernels not built; showing fallback timings only")


if __name__ == "__main__":
    main()
