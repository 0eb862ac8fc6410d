"""Parity between the compiled kernel and its pure-Python twin."""

import random
from array import array

import pytest

from sdramsey import _kernel_py
from sdramsey.engine import BACKEND, _csr, _rg_prefixes, find_bad_assignment
from sdramsey.errors import BudgetExceededError

try:
    from sdramsey import _kernel
except ImportError:
    _kernel = None

needs_compiled = pytest.mark.skipif(_kernel is None, reason="compiled kernel unavailable")


def random_instance(rng):
    n = rng.randint(1, 11)
    n_edges = rng.randint(0, 14)
    edges = []
    for _ in range(n_edges):
        size = rng.randint(1, min(4, n))
        edges.append(tuple(sorted(rng.sample(range(n), size))))
    colors = rng.randint(1, 4)
    return n, edges, colors


def run(impl, n, edges, colors, budget, prefix=()):
    csr = _csr(n, edges)
    return impl.search_bad_coloring(n, colors, *csr, budget, array("i", prefix))


@needs_compiled
def test_kernels_agree_exactly():
    rng = random.Random(20240817)
    for _ in range(300):
        n, edges, colors = random_instance(rng)
        budget = rng.choice([1, 3, 10, 10**6])
        a = run(_kernel, n, edges, colors, budget)
        b = run(_kernel_py, n, edges, colors, budget)
        assert a == b, (n, edges, colors, budget)


@needs_compiled
def test_kernels_agree_with_prefixes():
    rng = random.Random(7)
    for _ in range(200):
        n, edges, colors = random_instance(rng)
        depth = rng.randint(0, min(2, n))
        for prefix in _rg_prefixes(depth, colors):
            a = run(_kernel, n, edges, colors, 10**6, prefix)
            b = run(_kernel_py, n, edges, colors, 10**6, prefix)
            assert a == b


def test_pure_kernel_finds_lex_least():
    import itertools

    rng = random.Random(99)
    for _ in range(200):
        n, edges, colors = random_instance(rng)
        if colors**n > 5000:
            continue
        status, _, assign = run(_kernel_py, n, edges, colors, 10**6)
        expected = None
        for cand in itertools.product(range(colors), repeat=n):
            if all(len({cand[v] for v in e}) != 1 for e in edges):
                expected = list(cand)
                break
        if expected is None:
            assert status == 1
        else:
            assert status == 0 and assign == expected


def test_budget_is_exact_count():
    # a single big edge over 3 vertices, 2 colors: nodes are color attempts
    n, edges, colors = 3, [(0, 1, 2)], 2
    status, nodes, _ = run(_kernel_py, n, edges, colors, 10**6)
    assert status == 0
    for budget in range(1, nodes):
        s, used, _ = run(_kernel_py, n, edges, colors, budget)
        assert s == 2 and used == budget + 1
    s, _, _ = run(_kernel_py, n, edges, colors, nodes)
    assert s == 0


def test_driver_empty_cases():
    assert find_bad_assignment(0, [], 2) == ()
    assert find_bad_assignment(3, [()], 2) is None  # empty edge: vacuously mono
    assert find_bad_assignment(2, [], 1) == (0, 0)


def test_driver_budget_raises():
    with pytest.raises(BudgetExceededError):
        find_bad_assignment(8, [(i, (i + 1) % 8) for i in range(8)], 2, node_budget=2)


def test_driver_threads_lex_merge():
    edges = [(i, (i + 1) % 5) for i in range(5)]  # 5-cycle, 2 colors: no bad
    assert find_bad_assignment(5, edges, 2, threads=3) is None
    edges = [(i, (i + 1) % 6) for i in range(6)]  # 6-cycle: bipartition
    seq = find_bad_assignment(6, edges, 2)
    par = find_bad_assignment(6, edges, 2, threads=3)
    assert seq == par == (0, 1, 0, 1, 0, 1)


def test_backend_reports():
    assert BACKEND in ("compiled", "python")
