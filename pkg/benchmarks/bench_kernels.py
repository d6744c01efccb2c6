"""Time the numba and numpy kernel families on identical inputs.

    python benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import time

import numpy as np

from bicomplex import _kernels


def hermitian(rng, n):
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return np.ascontiguousarray(0.5 * (z + z.conj().T))


def case_jacobi(n):
    a = hermitian(np.random.default_rng(n), n)
    tol = 1e-13 * np.linalg.norm(a)

    def run(kernels):
        kernels[0](a.copy(), np.eye(n, dtype=np.complex128), tol, 60)

    return f"jacobi n={n}", run


def case_gram_schmidt(n):
    rng = np.random.default_rng(n + 1)
    cols = np.ascontiguousarray(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))

    def run(kernels):
        kernels[1](cols, 1e-10)

    return f"gram-schmidt n={n}", run


def case_krylov(n):
    a = hermitian(np.random.default_rng(n + 2), n)
    start = np.ones(n, dtype=np.complex128) / np.sqrt(n)
    prior = np.zeros((n, 0), dtype=np.complex128)
    step = 1e-10 * np.linalg.norm(a, 2)

    def run(kernels):
        kernels[2](a, start, prior, 1e-10, step, n)

    return f"krylov n={n}", run


def best_time(fn, kernels, repeat):
    fn(kernels)  # warm-up also triggers numba compilation
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(kernels)
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    cases = [case_jacobi(16), case_jacobi(64), case_gram_schmidt(64), case_krylov(64)]
    names = sorted(_kernels.BACKENDS)
    print(f"{'case':<20}" + "".join(f"{n:>14}" for n in names) + f"{'speedup':>10}")
    for label, fn in cases:
        t = {name: best_time(fn, _kernels.BACKENDS[name], args.repeat) for name in names}
        speedup = t["numpy"] / t["numba"] if "numba" in t else float("nan")
        print(f"{label:<20}" + "".join(f"{t[n] * 1e3:>12.3f}ms" for n in names) + f"{speedup:>9.1f}x")


if __name__ == "__main__":
    main()
