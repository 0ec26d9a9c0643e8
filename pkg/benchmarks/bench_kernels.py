"""Time the numba kernels against the numpy reference path.

    python benchmarks/bench_kernels.py [--sizes 1000 100000] [--repeat 5]

Both paths are called directly, so the env flag does not matter here.
Results are checked for agreement before timing.
"""
import argparse
import json
import time

import numpy as np

from cyclidic import _kernels as K


def _best(fn, repeat):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cases(n, rng):
    X = rng.normal(size=(n, 6))
    Y = rng.normal(size=(n, 6))
    a = rng.normal(size=6)
    side = max(2, int(np.sqrt(n)))
    A = rng.normal(size=(side, 6))
    G = rng.normal(size=(side, 6))
    # lightlike rows for projection
    x = rng.normal(size=(n, 3))
    sq = np.sum(x * x, axis=1)
    V = np.column_stack([x, (1 - sq) / 2, (1 + sq) / 2, np.zeros(n)])
    return {
        "inner_rows": ((X, Y), K.inner_rows_np, K.inner_rows_nb if K.HAS_NUMBA else None),
        "reflect_rows": ((a, X), K.reflect_rows_np, K.reflect_rows_nb if K.HAS_NUMBA else None),
        "reflect_grid": ((A, G), K.reflect_grid_np, K.reflect_grid_nb if K.HAS_NUMBA else None),
        "project_points": ((V, 1e-10), K.project_points_np, K.project_points_nb if K.HAS_NUMBA else None),
    }


def run(sizes, repeat, seed=0):
    rng = np.random.default_rng(seed)
    rows = []
    for n in sizes:
        for name, (args, f_np, f_nb) in cases(n, rng).items():
            row = {"kernel": name, "n": n, "numpy_s": _best(lambda: f_np(*args), repeat)}
            if f_nb is not None:
                f_nb(*args)  # compile
                ref, got = f_np(*args), f_nb(*args)
                ref = ref if isinstance(ref, tuple) else (ref,)
                got = got if isinstance(got, tuple) else (got,)
                row["max_diff"] = float(max(np.max(np.abs(np.asarray(r, float) - np.asarray(g, float)))
                                            for r, g in zip(ref, got)))
                row["numba_s"] = _best(lambda: f_nb(*args), repeat)
                row["speedup"] = row["numpy_s"] / row["numba_s"]
            rows.append(row)
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[1000, 100000])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true", help="print JSON instead of a table")
    args = ap.parse_args()
    rows = run(args.sizes, args.repeat)
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'kernel':16s} {'n':>8s} {'numpy ms':>10s} {'numba ms':>10s} {'speedup':>8s} {'max diff':>9s}")
    for r in rows:
        nb = r.get("numba_s", np.nan) * 1e3
        print(f"{r['kernel']:16s} {r['n']:8d} {r['numpy_s'] * 1e3:10.3f} {nb:10.3f} "
              f"{r.get('speedup', np.nan):8.2f} {r.get('max_diff', np.nan):9.1e}")


if __name__ == "__main__":
    main()
