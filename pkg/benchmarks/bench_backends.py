#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Feeds both backends the same family-scale workloads: residue
permutation tables, discrete-log cycles, character sums, sparse integer
convolutions, and batched Aberth root finding.  Reports best-of-k wall
times and the speedup ratio.

Usage: python benchmarks/bench_backends.py [--repeat K] [--heavy]
"""

import argparse
import time

import numpy as np

from ffzeros import algebra, characters
from ffzeros import _kernels_numpy as knp

try:
    from ffzeros import _kernels_numba as knb
except ImportError:
    knb = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def modulus_inputs(q, d):
    """Kernel-ready arrays for the least irreducible modulus of degree d."""
    K = algebra.field_make(q)
    Q = characters.modulus_search(K, d)
    table = Q.table()
    gd = np.zeros(d, dtype=np.int64)
    for i, c in enumerate(table.generator):
        gd[i] = c
    red = np.zeros(d, dtype=np.int64)
    for i, c in enumerate(Q.coeffs[:d]):
        red[i] = K.neg(c)
    return K, Q, table, gd, red


def workloads(q, d, rng):
    K, Q, table, gd, red = modulus_inputs(q, d)
    N = Q.group_order
    perm = knp.residue_mul_perm(K.q, d, gd, red, K.add_table, K.mul_table)

    # char_sums at family scale: one weight row per prime degree, every k
    W = rng.random((3 * d + 1, N))
    ks = np.arange(1, N, dtype=np.int64)

    # integer convolution layer of the von-Mangoldt recursion
    x = rng.integers(0, q**d, size=N).astype(np.int64)
    shifts = rng.integers(0, N, size=d + 1).astype(np.int64)
    wts = rng.integers(-3, 4, size=d + 1).astype(np.int64)

    # completed-polynomial batch with inverse roots on the critical circle
    M = d - 1
    radius = 1.0 / np.sqrt(q)
    angles = 2.0 * np.pi * rng.random((N - 1, M))
    coeffs = np.empty((N - 1, M + 1), dtype=np.complex128)
    for b in range(N - 1):
        poly = np.array([1.0 + 0j])
        for ang in angles[b]:
            poly = np.convolve(poly, [1.0, -radius * np.exp(1j * ang)])
        coeffs[b] = poly[::-1]

    def bench(kern):
        return [
            (
                "residue_mul_perm",
                lambda: kern.residue_mul_perm(
                    K.q, d, gd, red, K.add_table, K.mul_table
                ),
            ),
            ("cycle_dlog", lambda: kern.cycle_dlog(perm, 1, N)),
            ("char_sums", lambda: kern.char_sums(W, ks, table.roots_of_unity)),
            (
                "conv_sparse_acc",
                lambda: kern.conv_sparse_acc(np.zeros(N, dtype=np.int64), x, shifts, wts),
            ),
            (
                "aberth_batch",
                lambda: kern.aberth_batch(coeffs, radius, 1e-13, 300, 2),
            ),
        ]

    return bench


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5, help="timing repeats, best kept")
    ap.add_argument(
        "--heavy", action="store_true", help="add a q=7, d=4 workload (2400 characters)"
    )
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    sizes = [(3, 5), (5, 4)]
    if args.heavy:
        sizes.append((7, 4))

    if knb is None:
        print("numba backend not importable; timing numpy only")

    for q, d in sizes:
        bench = workloads(q, d, rng)
        if knb is not None:
            for _, fn in bench(knb):
                fn()  # compile outside the timed region
        print(f"\nq={q} d={d} ({q**d - 1} units)")
        print(f"  {'kernel':<18} {'numpy':>10} {'numba':>10} {'speedup':>8}")
        for (name, fn_np), pair in zip(
            bench(knp), bench(knb) if knb is not None else bench(knp)
        ):
            t_np = best_of(fn_np, args.repeat)
            if knb is None:
                print(f"  {name:<18} {t_np * 1e3:>9.2f}ms {'-':>10} {'-':>8}")
                continue
            t_nb = best_of(pair[1], args.repeat)
            print(
                f"  {name:<18} {t_np * 1e3:>9.2f}ms {t_nb * 1e3:>9.2f}ms "
                f"{t_np / t_nb:>7.1f}x"
            )


if __name__ == "__main__":
    main()
