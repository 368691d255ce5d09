#!/usr/bin/env python3
"""Compare the pure-Python and compiled search backends on fixed cells.

Usage:  python benchmarks/bench_search.py [--repeat N]

Each cell is decided with both backends; node counts must agree exactly
(the kernels are mirrors), so the interesting column is wall time.
"""

import argparse
import time

from circfam import _kernel
from circfam.search import SearchProblem, decide_embedding

CELLS = [
    # (k, t, p, q, expected status)
    (5, 2, 5, 1, "witness"),
    (6, 2, 5, 3, "witness"),
    (8, 2, 5, 2, "nonexistent"),
    (8, 2, 5, 4, "nonexistent"),
    (8, 2, 3, 6, "nonexistent"),
    (7, 2, 4, 5, "nonexistent"),
    (10, 3, 7, 5, "witness"),
    (10, 3, 5, 6, "nonexistent"),
]


def time_cell(problem, backend, repeat):
    best = float("inf")
    outcome = None
    for _ in range(repeat):
        start = time.perf_counter()
        outcome = decide_embedding(problem, backend=backend)
        best = min(best, time.perf_counter() - start)
    return outcome, best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = _kernel.available_backends()
    print(f"available backends: {', '.join(backends)}")
    header = f"{'cell':<24} {'status':<12} {'nodes':>8}"
    for name in backends:
        header += f" {name + ' (s)':>14}"
    if len(backends) == 2:
        header += f" {'speedup':>9}"
    print(header)
    print("-" * len(header))

    for k, t, p, q, expected in CELLS:
        problem = SearchProblem(k=k, t=t, p=p, q=q)
        label = f"C({p},{q}) in [{k}], t={t}"
        times = {}
        nodes = None
        status = None
        for name in backends:
            outcome, seconds = time_cell(problem, name, args.repeat)
            times[name] = seconds
            if nodes is None:
                nodes, status = outcome.nodes, outcome.status
            elif outcome.nodes != nodes:
                raise SystemExit(
                    f"backend disagreement on {label}: {outcome.nodes} != {nodes}"
                )
        assert status == expected, (label, status, expected)
        line = f"{label:<24} {status:<12} {nodes:>8}"
        for name in backends:
            line += f" {times[name]:>14.6f}"
        if len(backends) == 2:
            line += f" {times['pure'] / times['compiled']:>8.1f}x"
        print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
