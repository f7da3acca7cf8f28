"""Compare the compiled and pure-Python dd-histogram kernels.

Usage: python benchmarks/bench_kernel.py [--n 7 8] [--r 3] [--repeat 3]

Times one full oracle scan (every r-colored Dyck path of length 2n) per
backend and checks that both produce the same aggregates.
"""
import argparse
import time

from cdyck import kernel, paths


def time_scan(n: int, r: int, histogram, repeat: int):
    paths.dd_histogram = histogram
    best, scan = float("inf"), None
    for _ in range(repeat):
        paths.clear_oracle_cache()
        start = time.perf_counter()
        scan = paths.oracle_scan(n, r, cap=n)
        best = min(best, time.perf_counter() - start)
    return best, scan


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[6, 7, 8])
    ap.add_argument("--r", type=int, default=3)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if kernel.compiled_dd_histogram is None:
        raise SystemExit("compiled kernel not built; reinstall with Cython available")
    original = paths.dd_histogram
    print(f"{'n':>3} {'r':>3} {'paths':>12} {'cython s':>10} {'python s':>10} {'speedup':>8}")
    try:
        for n in args.n:
            fast, a = time_scan(n, args.r, kernel.compiled_dd_histogram, args.repeat)
            slow, b = time_scan(n, args.r, kernel.python_dd_histogram, 1 if n >= 8 else args.repeat)
            assert a == b, f"backends disagree at n={n}"
            print(f"{n:>3} {args.r:>3} {a.total:>12} {fast:>10.3f} {slow:>10.3f} {slow / fast:>7.1f}x")
    finally:
        paths.dd_histogram = original
        paths.clear_oracle_cache()


if __name__ == "__main__":
    main()
