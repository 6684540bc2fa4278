#!/usr/bin/env python3
"""Compare the numba and numpy backends of the running-power kernel.

Each case computes ct(P^n) mod m for n = 0..N and checks that both backends
return identical residues before reporting timings.

Usage:
    python benchmarks/bench_kernels.py [--repeat R] [--mod M] [--quick]
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from ctlucas import _kernels
from ctlucas.sequences import get_entry

CASES = [("u", 2000), ("delannoy", 150), ("apery", 60), ("eta", 40)]
QUICK = [("u", 400), ("delannoy", 40), ("apery", 20), ("eta", 12)]


@dataclass
class Timing:
    entry: str
    N: int
    backend: str
    best_s: float


def run_case(name: str, N: int, modulus: int, backend: str, repeat: int) -> tuple[list[int], float]:
    rep = get_entry(name).representation
    args = (rep.P.as_dict(), rep.Q.as_dict(), rep.dim, N, modulus)
    best = float("inf")
    values = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        values = _kernels.constant_terms(*args, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return values, best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--mod", type=int, default=7)
    ap.add_argument("--quick", action="store_true", help="smaller N for a fast smoke run")
    args = ap.parse_args()

    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")
    # compile outside the timed region
    run_case("u", 3, args.mod, "numba", 1)

    results = []
    for name, N in QUICK if args.quick else CASES:
        fast, t_numba = run_case(name, N, args.mod, "numba", args.repeat)
        ref, t_numpy = run_case(name, N, args.mod, "numpy", args.repeat)
        if fast != ref:
            raise SystemExit(f"backends disagree on {name}")
        results += [Timing(name, N, "numba", t_numba), Timing(name, N, "numpy", t_numpy)]

    print(f"{'entry':<10} {'N':>5} {'numba s':>10} {'numpy s':>10} {'speedup':>8}")
    for a, b in zip(results[::2], results[1::2]):
        print(f"{a.entry:<10} {a.N:>5} {a.best_s:>10.3f} {b.best_s:>10.3f} {b.best_s / a.best_s:>7.1f}x")


if __name__ == "__main__":
    main()
