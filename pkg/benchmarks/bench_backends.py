"""Compare the rational backends on the hot exact-arithmetic paths.

Three workloads, each exercised once per available backend:

  membership   repeated dilation-membership solves on two instances
  enumerate    lattice-point enumeration of a degree-4 dilation
  decide       full brute-force decisions on two counterexamples

Run from the repository root:

    python3 benchmarks/bench_backends.py --repeat 5
"""

from __future__ import annotations

import argparse
import time

from idpoly.model import ZeroOnePolytope
from idpoly.oracle import (
    decide_normal_bruteforce,
    enumerate_lattice_points,
    lp_membership,
)
from idpoly.rationals import available_backends

TWO_TRIANGLES = ZeroOnePolytope(
    (
        (1, 1, 0, 0, 0, 0, 0),
        (1, 0, 1, 0, 0, 0, 0),
        (0, 1, 1, 0, 0, 0, 1),
        (0, 0, 0, 1, 1, 0, 0),
        (0, 0, 0, 1, 0, 1, 0),
        (0, 0, 0, 0, 1, 1, 1),
    )
)

COMPLETE_2_4 = ZeroOnePolytope(
    (
        (1, 1, 1, 1, 0, 0, 0, 0),
        (0, 0, 0, 0, 1, 1, 1, 1),
        (1, 0, 0, 0, 1, 0, 0, 0),
        (0, 1, 0, 0, 0, 1, 0, 0),
        (0, 0, 1, 0, 0, 0, 1, 0),
        (0, 0, 0, 1, 0, 0, 0, 1),
    )
)

BRIDGED_HEXAGON = ZeroOnePolytope(
    (
        (1, 1, 0, 0, 0, 0, 0),
        (1, 0, 1, 0, 0, 0, 0),
        (0, 1, 1, 1, 0, 0, 0),
        (0, 0, 0, 1, 1, 1, 0),
        (0, 0, 0, 0, 1, 0, 1),
        (0, 0, 0, 0, 0, 1, 1),
    )
)

PRIME_THREE = ZeroOnePolytope(
    (
        (1, 0, 0, 0, 0, 1, 1),
        (1, 1, 0, 0, 0, 0, 0),
        (0, 1, 1, 0, 0, 1, 0),
        (0, 0, 1, 1, 0, 0, 0),
        (0, 0, 0, 1, 1, 1, 0),
        (0, 0, 0, 0, 1, 0, 1),
    )
)

SIX_TRIANGLES = ZeroOnePolytope(
    (
        (1, 1, 0, 0, 0, 0, 0, 0),
        (1, 0, 1, 0, 0, 0, 0, 0),
        (0, 1, 1, 1, 0, 0, 0, 0),
        (0, 0, 0, 1, 1, 1, 0, 1),
        (0, 0, 0, 0, 1, 0, 1, 1),
        (0, 0, 0, 0, 0, 1, 1, 1),
    )
)


def bench_membership(backend) -> None:
    for poly in (TWO_TRIANGLES, COMPLETE_2_4):
        s = poly.num_vertices
        for degree in (2, 3, 4):
            for point in enumerate_lattice_points(poly, degree, backend=backend)[:40]:
                lp_membership(poly, point, degree, backend=backend)


def bench_enumerate(backend) -> None:
    enumerate_lattice_points(SIX_TRIANGLES, 4, backend=backend)


def bench_decide(backend) -> None:
    decide_normal_bruteforce(BRIDGED_HEXAGON, backend=backend)
    decide_normal_bruteforce(PRIME_THREE, backend=backend)


WORKLOADS = (
    ("membership", bench_membership),
    ("enumerate", bench_enumerate),
    ("decide", bench_decide),
)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--repeat", type=int, default=3, help="timed repetitions per cell"
    )
    args = parser.parse_args()

    backends = available_backends()
    timings: dict[tuple[str, str], float] = {}
    for label, fn in WORKLOADS:
        for backend in backends:
            fn(backend)  # warm caches before timing
            best = float("inf")
            for _ in range(args.repeat):
                start = time.perf_counter()
                fn(backend)
                best = min(best, time.perf_counter() - start)
            timings[(label, backend.name)] = best

    names = [b.name for b in backends]
    header = f"{'workload':<12}" + "".join(f"{n:>12}" for n in names)
    if len(names) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for label, _ in WORKLOADS:
        row = f"{label:<12}"
        for n in names:
            row += f"{timings[(label, n)] * 1000:>10.1f}ms"
        if len(names) == 2:
            slow = max(timings[(label, n)] for n in names)
            fast = min(timings[(label, n)] for n in names)
            row += f"{slow / fast:>9.2f}x"
        print(row)
    if len(names) == 1:
        print()
        print("only one backend available; install gmpy2 for the comparison")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
