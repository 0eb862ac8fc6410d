#!/usr/bin/env python3
"""Benchmark the compiled search kernel against the pure-Python fallback.

Runs identical bad-coloring searches through both implementations and
reports nodes, wall time, and speedup.  Results must agree exactly; the
script fails loudly if they do not.

    python3 benchmarks/bench_kernel.py           # standard set
    python3 benchmarks/bench_kernel.py --heavy   # adds a multi-million-node find
"""

import argparse
import time
from array import array

from sdramsey import _kernel_py
from sdramsey.engine import _csr
from sdramsey.search import copy_family
from sdramsey.words import WordSpace, enumerate_lines

try:
    from sdramsey import _kernel
except ImportError:
    _kernel = None


def ramsey_instance(n, k, m, mode):
    fam = copy_family(n, k, m, mode)
    return len(fam.vertices), [e.vertices for e in fam.edges]


def hj_instance(alphabet, length):
    space = WordSpace(alphabet, length)
    index = {w: i for i, w in enumerate(space.elements())}
    edges = {}
    for _, line in enumerate_lines(length, alphabet):
        edges.setdefault(tuple(sorted({index[w] for w in line})), None)
    return len(index), list(edges)


def instances(heavy):
    yield "triangle 2-coloring, N=8 (prove none)", ramsey_instance(8, 2, 3, "injections_only"), 2
    yield "triangle 3-coloring, N=8 (find bad)", ramsey_instance(8, 2, 3, "injections_only"), 3
    yield "dual triples 2-coloring, N=6 (prove none)", ramsey_instance(6, 2, 3, "surjections_only"), 2
    yield "hj lines over 2 letters, N=5, 3 colors (prove none)", hj_instance(2, 5), 3
    if heavy:
        yield "triangle 3-coloring, N=9 (find bad)", ramsey_instance(9, 2, 3, "injections_only"), 3


def run(impl, n_vertices, edges, colors, repeat):
    csr = _csr(n_vertices, edges)
    best = None
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = impl.search_bad_coloring(
            n_vertices, colors, *csr, 10**12, array("i", [])
        )
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return result, best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--heavy", action="store_true", help="include the multi-million-node instance")
    parser.add_argument("--repeat", type=int, default=3, help="timing repetitions (best of)")
    args = parser.parse_args()

    if _kernel is None:
        print("compiled kernel unavailable; timing the pure kernel only")

    header = f"{'instance':50s} {'status':7s} {'nodes':>10s} {'pure s':>9s} {'comp s':>9s} {'speedup':>8s}"
    print(header)
    print("-" * len(header))
    for name, (n_vertices, edges), colors in instances(args.heavy):
        pure_result, pure_t = run(_kernel_py, n_vertices, edges, colors, args.repeat)
        row = f"{name:50s} "
        status = {0: "found", 1: "none", 2: "budget"}[pure_result[0]]
        row += f"{status:7s} {pure_result[1]:>10d} {pure_t:>9.3f}"
        if _kernel is not None:
            comp_result, comp_t = run(_kernel, n_vertices, edges, colors, args.repeat)
            if comp_result != pure_result:
                raise SystemExit(f"kernel mismatch on {name!r}: {comp_result} vs {pure_result}")
            row += f" {comp_t:>9.3f} {pure_t / comp_t:>7.1f}x"
        print(row)


if __name__ == "__main__":
    main()
