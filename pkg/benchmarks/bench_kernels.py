"""Time the compiled and pure-Python sparse kernels side by side.

    python3 benchmarks/bench_kernels.py --orders 10000 100000 1000000 --mod 3
"""

import argparse
import time

import numpy as np

from kdiamond.kernels import backends
from kdiamond.qproducts import jacobi_cube_terms, pentagonal_terms


def sparse(terms, modulus):
    terms = list(terms)
    idx = np.array([e for e, _ in terms], dtype=np.int64)
    val = np.array([c % modulus for _, c in terms], dtype=np.int64)
    return idx, val


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--orders", type=int, nargs="+", default=[10_000, 100_000, 1_000_000])
    ap.add_argument("--mod", type=int, default=3)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    impls = backends()
    rng = np.random.default_rng(0)
    print(f"{'kernel':<22}{'order':>10}" + "".join(f"{name:>12}" for name in impls) + f"{'speedup':>10}")
    for order in args.orders:
        dense = rng.integers(0, args.mod, order + 1).astype(np.int64)
        for label, terms in (("mul pentagonal", pentagonal_terms(1, order)),
                             ("div jacobi cube", jacobi_cube_terms(1, order))):
            idx, val = sparse(terms, args.mod)
            row = {}
            for name, (mul_k, div_k) in impls.items():
                if label.startswith("mul"):
                    call = lambda: mul_k(dense, idx, val, order, args.mod)
                else:
                    inv = pow(int(val[0]), -1, args.mod)
                    call = lambda: div_k(dense, idx[1:], val[1:], inv, order, args.mod)
                row[name] = best_of(call, args.repeat)
            cells = "".join(f"{row[name] * 1e3:>10.2f}ms" for name in impls)
            speed = (f"{row['python'] / row['cython']:>9.1f}x" if {"python", "cython"} <= row.keys() else "")
            print(f"{label:<22}{order:>10}{cells}{speed}")


if __name__ == "__main__":
    main()
