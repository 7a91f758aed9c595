"""Compare the numba and pure-numpy kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each kernel is run once per backend to warm up (numba compiles on first
call), then timed; results must agree between backends.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from linres import kernels
from linres.groebner import ideal_power
from linres.homology import betti_table
from linres.presets import load_preset


def _workloads():
    rng = np.random.default_rng(0)
    J = load_preset("terai-J").ideal()
    J2 = ideal_power(J, 2)
    gens = np.array(J2.monomials(), dtype=np.int64)
    monos = kernels.compositions(8, 6)
    b = gens[:6].max(axis=0)
    small = rng.integers(0, 2, size=(14, 14))
    # too large for the int64 bound: both backends take the Python path
    big = rng.integers(-3, 4, size=(120, 100))
    return {
        "rows_in_ideal": lambda: kernels.rows_in_ideal(gens, monos).tobytes(),
        "koszul_faces": lambda: kernels.koszul_faces(gens, b).tobytes(),
        "rank_exact(14x14)": lambda: kernels.rank_exact(small),
        "rank_exact(120x100)": lambda: kernels.rank_exact(big),
        "betti_table(J^2)": lambda: sorted(betti_table(J2).entries.items()),
    }


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    work = _workloads()
    backends = ["numpy"] + (["numba"] if kernels.NUMBA_AVAILABLE else [])
    results, times = {}, {}
    for be in backends:
        kernels.use_backend(be)
        for name, fn in work.items():
            results[be, name] = fn()
            times[be, name] = _time(fn, args.repeat)
    print(f"{'kernel':<20}" + "".join(f"{be:>12}" for be in backends) + f"{'speedup':>10}  agree")
    for name in work:
        row = f"{name:<20}" + "".join(f"{times[be, name] * 1e3:>10.2f}ms" for be in backends)
        if len(backends) == 2:
            agree = results["numpy", name] == results["numba", name]
            row += f"{times['numpy', name] / times['numba', name]:>9.1f}x  {agree}"
        print(row)


if __name__ == "__main__":
    main()
