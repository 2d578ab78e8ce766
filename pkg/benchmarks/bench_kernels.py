"""Compare the compiled and pure-numpy builds of the two hot kernels.

Usage: python3 benchmarks/bench_kernels.py [--reps N]

Times the brute-force word-sum trace (p=7, r=3, n=6) and the Hermitian
eigensolver (n=16) on fixed seeded inputs.  The compiled build is
skipped when numba is unavailable.
"""

import argparse
import time

from hurwitz_sos import kernels
from hurwitz_sos.numeric import random_hermitian, random_psd


def best_of(fn, reps):
    fn()  # warm-up: JIT compile / cache load
    times = []
    for _ in range(reps):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--reps", type=int, default=5, help="timed repetitions")
    args = parser.parse_args()

    A = random_psd(6, seed=1)
    B = random_psd(6, seed=2)
    H = random_hermitian(16, seed=3)

    cases = [
        (
            "word-sum trace p=7 r=3 n=6",
            lambda: kernels.hurwitz_trace_numpy(A, B, 7, 3),
            (lambda: kernels.hurwitz_trace_numba(A, B, 7, 3))
            if kernels.HAVE_NUMBA
            else None,
        ),
        (
            "jacobi eigensolver n=16",
            lambda: kernels.jacobi_eigh_numpy(H),
            (lambda: kernels.jacobi_eigh_numba(H)) if kernels.HAVE_NUMBA else None,
        ),
    ]

    print(f"reps={args.reps} (best-of), numba available: {kernels.HAVE_NUMBA}")
    for name, numpy_fn, numba_fn in cases:
        t_numpy = best_of(numpy_fn, args.reps)
        line = f"{name:32s} numpy {t_numpy * 1e3:8.3f} ms"
        if numba_fn is not None:
            t_numba = best_of(numba_fn, args.reps)
            line += f"   numba {t_numba * 1e3:8.3f} ms   speedup {t_numpy / t_numba:5.1f}x"
        print(line)


if __name__ == "__main__":
    main()
