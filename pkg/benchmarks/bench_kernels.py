"""Compare the numba and numpy subset-cover kernels on fixed workloads.

    python3 benchmarks/bench_kernels.py [--repeat N] [--json]

The numba column excludes compilation (one warm-up call per workload).
"""

import argparse
import json
import time

import numpy as np

from gcrbch import _kernels, bch, gf2m


def workloads():
    f4 = gf2m.make_field(4)
    cols4 = bch.build_columns(f4).vectors()
    basis = np.array([1 << (4 + i) for i in range(4)], dtype=np.int64)
    pairs = np.random.default_rng(0).integers(0, 256, size=(300, 2))
    cols5 = bch.build_columns(gf2m.make_field(5)).vectors()
    pairs5 = np.random.default_rng(1).integers(0, 1024, size=(40, 2))
    return [
        ("no-cover m=4 t=7 (6435 subsets)", "first_cover", (cols4, basis, 7, 8)),
        ("min cover, 300 pairs at m=4", "min_cover_batch", (cols4, pairs, 8, 15)),
        ("min cover, 40 pairs at m=5", "min_cover_batch", (cols5, pairs5, 10, 31)),
    ]


def timed(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--json", action="store_true")
    args = p.parse_args()
    rows = []
    for name, kind, wargs in workloads():
        row = {"workload": name}
        row["numpy_s"] = timed(getattr(_kernels, f"{kind}_numpy"), wargs, args.repeat)
        if _kernels.HAVE_NUMBA:
            fn = getattr(_kernels, f"{kind}_numba")
            fn(*wargs)
            row["numba_s"] = timed(fn, wargs, args.repeat)
            row["speedup"] = row["numpy_s"] / row["numba_s"]
        rows.append(row)
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'workload':36s} {'numpy s':>10s} {'numba s':>10s} {'speedup':>8s}")
    for r in rows:
        nb = f"{r['numba_s']:10.4f} {r['speedup']:8.1f}" if "numba_s" in r else f"{'n/a':>10s} {'':>8s}"
        print(f"{r['workload']:36s} {r['numpy_s']:10.4f} {nb}")


if __name__ == "__main__":
    main()
