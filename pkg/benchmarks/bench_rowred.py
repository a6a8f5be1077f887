"""Benchmark: compiled row-reduction kernel vs the pure-Python fallback.

Times in-place reduced-row-echelon computation modulo the default prime on
random square matrices of increasing size, checks that both backends return
identical pivots and entries, and prints a comparison table.

Run:  python benchmarks/bench_rowred.py [--sizes 20,50,100,200] [--repeat 5]
"""

from __future__ import annotations

import argparse
import random
import time

from fultoncheck.field import DEFAULT_PRIME
from fultoncheck import rowred
from fultoncheck._rowred_py import rref_mod as pure_rref_mod


def _random_rows(size: int, rng: random.Random, p: int) -> list[list[int]]:
    return [[rng.randrange(p) for _ in range(size)] for _ in range(size)]


def _time_backend(fn, rows: list[list[int]], p: int, repeat: int) -> tuple[float, tuple]:
    best = float("inf")
    result = None
    for _ in range(repeat):
        work = [row[:] for row in rows]
        start = time.perf_counter()
        out = fn(work, p)
        elapsed = time.perf_counter() - start
        best = min(best, elapsed)
        result = out
    return best, result


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="20,50,100,200",
                        help="comma-separated matrix sizes")
    parser.add_argument("--repeat", type=int, default=5,
                        help="repetitions per size (best time reported)")
    parser.add_argument("--seed", type=int, default=12345)
    args = parser.parse_args()

    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    p = DEFAULT_PRIME
    rng = random.Random(args.seed)

    if not rowred.HAVE_COMPILED:
        print("note: compiled backend unavailable; timing the pure backend only")

    header = f"{'size':>6}  {'pure (s)':>10}  {'compiled (s)':>12}  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for size in sizes:
        rows = _random_rows(size, rng, p)
        pure_t, pure_out = _time_backend(pure_rref_mod, rows, p, args.repeat)
        if rowred.HAVE_COMPILED:
            comp_t, comp_out = _time_backend(rowred.rref_mod, rows, p, args.repeat)
            pure_rows, pure_piv = pure_out
            comp_rows, comp_piv = comp_out
            if list(pure_piv) != list(comp_piv) or [list(r) for r in pure_rows] != [
                list(r) for r in comp_rows
            ]:
                print(f"MISMATCH at size {size}: backends disagree")
                return 1
            print(f"{size:>6}  {pure_t:>10.4f}  {comp_t:>12.4f}  {pure_t / comp_t:>7.1f}x")
        else:
            print(f"{size:>6}  {pure_t:>10.4f}  {'-':>12}  {'-':>8}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
