"""Benchmark the compiled row-reduction kernel against the pure fallback.

Runs seeded random matrices over fp:32003 through both backends and one
end-to-end Koszulity verdict, printing a timing table.  Usage:

    python3 benchmarks/bench_rref.py [--sizes 40,80,160] [--repeats 3]
"""

import argparse
import random
import time

from pathkoszul import build_category, field_from_name, koszulity_verdict, load_graph
from pathkoszul.linalg import Mat, backend_name, compiled_available, \
    force_pure_backend, rref

K4 = "1 2\n1 3\n1 4\n2 3\n2 4\n3 4"


def rand_mat(field, n, rng):
    rows = [[field.of_int(rng.randrange(-50, 51)) for _ in range(n)]
            for _ in range(n)]
    return Mat(field, n, n, rows)


def time_backend(mats, pure, repeats):
    force_pure_backend(pure)
    best = float("inf")
    try:
        for _ in range(repeats):
            t0 = time.perf_counter()
            for m in mats:
                rref(m)
            best = min(best, time.perf_counter() - t0)
    finally:
        force_pure_backend(False)
    return best


def time_verdict(pure):
    force_pure_backend(pure)
    try:
        cat = build_category(load_graph(K4), field_from_name("fp:32003"))
        t0 = time.perf_counter()
        rep = koszulity_verdict(cat, 6)
        assert rep["passed"]
        return time.perf_counter() - t0
    finally:
        force_pure_backend(False)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="40,80,160")
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    if not compiled_available():
        print("compiled backend is not built; nothing to compare")
        return
    print(f"active backend: {backend_name()}")
    field = field_from_name("fp:32003")
    rng = random.Random(2024)
    print(f"{'n':>6} {'compiled':>12} {'pure':>12} {'speedup':>9}")
    for n in sizes:
        mats = [rand_mat(field, n, rng) for _ in range(3)]
        fast = time_backend(mats, pure=False, repeats=args.repeats)
        slow = time_backend(mats, pure=True, repeats=args.repeats)
        print(f"{n:>6} {fast:>11.4f}s {slow:>11.4f}s {slow / fast:>8.1f}x")

    fast = time_verdict(pure=False)
    slow = time_verdict(pure=True)
    print(f"{'K4 N=6':>6} {fast:>11.4f}s {slow:>11.4f}s {slow / fast:>8.1f}x")


if __name__ == "__main__":
    main()
