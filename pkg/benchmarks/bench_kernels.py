#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Times each kernel on the full canonical table family for the given bounds,
plus an end-to-end quotient-and-analysis pass per implementation.  Run
after `pip install -e . --no-build-isolation`:

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --atoms 3 --tests 3 --max-entry 3
"""

import argparse
import time

from etkit import _kernels_py
from etkit.search import SearchConfig, enumerate_tables

try:
    from etkit import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def timed(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels(tables, impl):
    """One pass of every kernel over every table; returns per-kernel seconds."""
    cap = 10**6
    work = []
    for t in tables:
        events = impl.downward_closure(t.tests, cap)
        work.append((t.tests, events))

    def run_closure():
        for tests, _ in work:
            impl.downward_closure(tests, cap)

    def run_labels():
        for tests, events in work:
            impl.class_labels(events, tests)

    def run_witness():
        for tests, events in work:
            impl.algebraic_witness(events, tests)

    def run_leq():
        for tests, events in work:
            impl.leq_matrix(events, tests)

    def run_bounds():
        for tests, events in work:
            step = max(1, len(events) // 6)
            for f in events[::step]:
                for g in events[::step]:
                    impl.bound_candidates(f, g, tests, True)
                    impl.bound_candidates(f, g, tests, False)

    return {
        "downward_closure": timed(run_closure),
        "class_labels": timed(run_labels),
        "algebraic_witness": timed(run_witness),
        "leq_matrix": timed(run_leq),
        "bound_candidates": timed(run_bounds),
    }


def bench_end_to_end(tables):
    """Full build + analysis through whichever kernels are active."""
    from etkit.quotient import build_algebra
    from etkit.structure import analyze
    from etkit.testspace import is_algebraic

    def run():
        for t in tables:
            if is_algebraic(t):
                analyze(build_algebra(t))

    return timed(run, repeat=1)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--atoms", type=int, default=3)
    parser.add_argument("--tests", type=int, default=3)
    parser.add_argument("--max-entry", type=int, default=2)
    args = parser.parse_args()

    tables = list(
        enumerate_tables(SearchConfig(args.atoms, args.tests, args.max_entry))
    )
    print(
        f"family: {len(tables)} canonical tables "
        f"({args.atoms} outcomes, <={args.tests} tests, entries <={args.max_entry})"
    )

    pure = bench_kernels(tables, _kernels_py)
    if _kernels_c is not None:
        fast = bench_kernels(tables, _kernels_c)
        print(f"\n{'kernel':<20} {'python':>10} {'cython':>10} {'speedup':>9}")
        for name, p in pure.items():
            c = fast[name]
            print(f"{name:<20} {p * 1e3:>8.1f}ms {c * 1e3:>8.1f}ms {p / c:>8.1f}x")
    else:
        print("\ncompiled kernels unavailable; pure timings only")
        for name, p in pure.items():
            print(f"{name:<20} {p * 1e3:>8.1f}ms")

    wall = bench_end_to_end(tables)
    from etkit import KERNEL_IMPL

    print(f"\nend-to-end analysis via active kernels ({KERNEL_IMPL}): {wall * 1e3:.1f}ms")


if __name__ == "__main__":
    main()
