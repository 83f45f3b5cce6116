#!/usr/bin/env python3
"""Benchmark the jitted kernels against the pure-numpy fallback.

Workloads are shaped like real verification runs (dense row reduction and
matrix products at coset-space sizes, characteristic polynomials, polynomial
arithmetic, echelon insertion, idempotent scans).  Before timing, each
kernel's outputs are cross-checked for exact equality between the two
implementations; a disagreement aborts the benchmark.

Usage: python3 benchmarks/bench_kernels.py [--repeats N] [--scale F]
"""

import argparse
import time

import numpy as np

from pimcheck import _kernels_numpy as knp

try:
    from pimcheck import _kernels_numba as knb
except ImportError:
    knb = None


def build_workloads(scale, rng):
    """List of (name, callable(impl) -> comparable result)."""
    n = max(8, int(276 * scale))
    a = rng.integers(0, 23, size=(n, n)).astype(np.int64)
    b = rng.integers(0, 23, size=(n, n)).astype(np.int64)
    aug = np.hstack([a, np.eye(n, dtype=np.int64)])

    cp_n = max(8, int(128 * scale))
    sq = rng.integers(0, 5, size=(cp_n, cp_n)).astype(np.int64)

    deg = max(16, int(2048 * scale))
    u = rng.integers(0, 2, size=deg).astype(np.int64)
    v = rng.integers(0, 2, size=deg).astype(np.int64)
    big = rng.integers(0, 2, size=2 * deg).astype(np.int64)
    f = rng.integers(0, 2, size=deg // 4 + 1).astype(np.int64)
    f[-1] = 1  # monic divisor

    m = max(16, int(512 * scale))
    vs = rng.integers(0, 7, size=(m, m)).astype(np.int64)

    r = 6
    sc = rng.integers(0, 7, size=(r, r, r)).astype(np.int64)

    def mm(impl):
        return impl.matmul_mod(a, b, 23)

    def rr(impl):
        reduced, rank, pivots = impl.rref_mod(aug, 23, n)
        return reduced, rank, pivots

    def cp(impl):
        return impl.charpoly_mod(sq, 5)

    def pm(impl):
        return impl.polymul_mod(u, v, 2)

    def pr(impl):
        return impl.polyrem_mod(big, f, 2)

    def ins(impl):
        basis = np.zeros((m, m), dtype=np.int64)
        rowof = np.full(m, -1, dtype=np.int64)
        npiv = 0
        for row in vs:
            c = impl.reduce_rows_mod(basis, rowof, npiv, row, 7)
            if c >= 0:
                rowof[c] = npiv
                npiv += 1
        return npiv, basis

    def scan(impl):
        return impl.scan_idempotents(sc, 7, 10**9)

    return [
        ("matmul_mod %dx%d GF(23)" % (n, n), mm),
        ("rref_mod %dx%d GF(23)" % (n, 2 * n), rr),
        ("charpoly_mod %dx%d GF(5)" % (cp_n, cp_n), cp),
        ("polymul_mod deg %d GF(2)" % (deg - 1), pm),
        ("polyrem_mod deg %d GF(2)" % (2 * deg - 1), pr),
        ("reduce_rows_mod %d rows" % m, ins),
        ("scan_idempotents 7^6", scan),
    ]


def same(x, y):
    if isinstance(x, tuple):
        return len(x) == len(y) and all(same(a, b) for a, b in zip(x, y))
    if isinstance(x, np.ndarray):
        return np.array_equal(x, y)
    return x == y


def best_of(fn, impl, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(impl)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--scale", type=float, default=1.0,
                    help="workload size multiplier (default 1.0)")
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    workloads = build_workloads(args.scale, rng)

    if knb is None:
        print("numba unavailable; timing the numpy fallback only")
        for name, fn in workloads:
            print("%-32s numpy %8.2f ms" % (name, best_of(fn, knp, args.repeats) * 1e3))
        return 0

    print("cross-checking kernel outputs ...")
    for name, fn in workloads:
        if not same(fn(knp), fn(knb)):  # also serves as the jit warmup
            raise SystemExit("MISMATCH in %s: backends disagree" % name)
    print("all %d kernels agree exactly\n" % len(workloads))

    header = "%-32s %12s %12s %9s" % ("kernel", "numpy (ms)", "numba (ms)", "speedup")
    print(header)
    print("-" * len(header))
    for name, fn in workloads:
        t_np = best_of(fn, knp, args.repeats)
        t_nb = best_of(fn, knb, args.repeats)
        print("%-32s %12.2f %12.2f %8.1fx"
              % (name, t_np * 1e3, t_nb * 1e3, t_np / t_nb if t_nb else float("inf")))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
