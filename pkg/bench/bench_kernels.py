"""Timing harness for the two kernel paths.

Compares the compiled Jacobi eigensolver against the LAPACK fallback and
the compiled acceptance lottery against its vectorized numpy twin, after
verifying that both paths agree.  Run from the repository root:

    python3 bench/bench_kernels.py --reps 2000 --shots 1000000
"""

import argparse
import os
import time

import numpy as np

from boundfilter import kernels, linalg


def random_herm(rng, n):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (g + g.conj().T) / 2


def time_call(fn, reps):
    start = time.perf_counter()
    for _ in range(reps):
        fn()
    return (time.perf_counter() - start) / reps * 1e6  # us per call


def bench_eigh(rng, reps):
    print("eigensolver (us/call, lower is better)")
    print(f"  {'size':>6} {'jacobi-jit':>12} {'lapack':>12} {'max |dw|':>12}")
    for n in (9, 18):
        mats = [random_herm(rng, n) for _ in range(16)]
        # agreement first: identical inputs through both paths
        worst = 0.0
        for m in mats:
            w_jit, _ = kernels.jacobi_eigh(m)
            w_np = np.linalg.eigvalsh(m)
            worst = max(worst, float(np.abs(w_jit - w_np).max()))
        t_jit = time_call(lambda: kernels.jacobi_eigh(mats[0]), reps)
        t_np = time_call(lambda: np.linalg.eigh(mats[0]), reps)
        print(f"  {n:>4}x{n:<2} {t_jit:>12.2f} {t_np:>12.2f} {worst:>12.3e}")


def bench_lottery(rng, shots, reps):
    probs = [0.7482476635514017, 0.7897150663544107, 1.0, 1.0]
    seed = 31337
    os.environ["BF_DISABLE_NUMBA"] = "0"
    n_jit = kernels.accept_count(seed, probs, shots)
    t_jit = time_call(
        lambda: kernels.accept_count(seed, probs, shots), reps
    )
    os.environ["BF_DISABLE_NUMBA"] = "1"
    n_np = kernels.accept_count(seed, probs, shots)
    t_np = time_call(
        lambda: kernels.accept_count(seed, probs, shots), reps
    )
    os.environ["BF_DISABLE_NUMBA"] = "0"
    agree = "identical" if n_jit == n_np else "MISMATCH"
    print(f"acceptance lottery ({shots} shots, ms/call)")
    print(f"  {'path':>6} {'ms/call':>12} {'accepted':>12}")
    print(f"  {'jit':>6} {t_jit / 1e3:>12.2f} {n_jit:>12}")
    print(f"  {'numpy':>6} {t_np / 1e3:>12.2f} {n_np:>12}")
    print(f"  counts {agree}")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--reps", type=int, default=2000,
                        help="repetitions per eigensolver timing")
    parser.add_argument("--shots", type=int, default=1_000_000,
                        help="lottery shots per call")
    parser.add_argument("--lottery-reps", type=int, default=5,
                        help="repetitions per lottery timing")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    print("warming up compiled kernels ...")
    kernels.warm_up()
    print(f"numba available: {kernels.HAVE_NUMBA}")
    print()
    bench_eigh(rng, args.reps)
    print()
    bench_lottery(rng, args.shots, args.lottery_reps)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
