"""Hypergraph bad-coloring engine.

A *bad coloring* assigns one of ``l`` colors to every vertex so that no edge
is monochromatic.  The search backtracks over vertices in index order with
colors ascending, restricted to canonical colorings (color names are
interchangeable, so vertex 0 is pinned to color 0 and each vertex may use at
most one more than the largest color seen so far); the first hit is the
lexicographically least bad coloring.

The inner loop lives in a compiled Cython kernel when available, with a
pure-Python twin as fallback; set ``SDRAMSEY_PURE=1`` to force the fallback.
Both produce identical results, node counts included.

With ``threads > 1`` the tree is split at a fixed depth into subtrees
processed concurrently and merged in lexicographic order, so the answer does
not depend on the thread count.  Each subtree then gets the full node budget
of its own; budget exhaustion in any subtree scanned before the first hit is
reported as exhaustion, which is the one way the multi-threaded budget
accounting can differ from the single global counter used at ``threads=1``.
"""

from __future__ import annotations

import os
from array import array
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

from .errors import BudgetExceededError, DomainError

if os.environ.get("SDRAMSEY_PURE"):
    from . import _kernel_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernel as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _kernel_py as _impl

        BACKEND = "python"

FOUND = 0
NONE = 1
BUDGET = 2

DEFAULT_NODE_BUDGET = 100_000_000
_SPLIT_DEPTH = 3


def backend_name() -> str:
    return BACKEND


def _csr(n_vertices: int, edges: Sequence[Sequence[int]]):
    edge_ptr = [0]
    edge_vtx: list[int] = []
    incidence: list[list[int]] = [[] for _ in range(n_vertices)]
    for idx, e in enumerate(edges):
        for v in e:
            if not 0 <= v < n_vertices:
                raise DomainError(f"edge {idx} names vertex {v} outside [0, {n_vertices})")
            edge_vtx.append(v)
            incidence[v].append(idx)
        edge_ptr.append(len(edge_vtx))
    vtx_ptr = [0]
    vtx_edge: list[int] = []
    for lst in incidence:
        vtx_edge.extend(lst)
        vtx_ptr.append(len(vtx_edge))
    return (
        array("i", edge_ptr),
        array("i", edge_vtx),
        array("i", vtx_ptr),
        array("i", vtx_edge),
    )


def _rg_prefixes(depth: int, colors: int) -> list[tuple[int, ...]]:
    """Canonical color prefixes of the given depth, lexicographically."""
    out: list[tuple[int, ...]] = [()]
    for _ in range(depth):
        nxt = []
        for p in out:
            mx = max(p, default=-1)
            for c in range(min(mx + 1, colors - 1) + 1):
                nxt.append(p + (c,))
        out = nxt
    return out


def find_bad_assignment(
    n_vertices: int,
    edges: Sequence[Sequence[int]],
    colors: int,
    node_budget: int = DEFAULT_NODE_BUDGET,
    threads: int = 1,
) -> tuple[int, ...] | None:
    """Lexicographically least bad coloring, or ``None`` when every coloring
    has a monochromatic edge.

    Raises :class:`BudgetExceededError` once the node budget is hit, never
    returning a wrong ``None``.
    """
    if colors < 1:
        raise DomainError("need at least one color")
    if node_budget < 1:
        raise DomainError("node budget must be positive")
    if any(len(e) == 0 for e in edges):
        # An empty edge is vacuously monochromatic under any coloring.
        return None
    if n_vertices == 0:
        return ()
    csr = _csr(n_vertices, edges)
    if threads <= 1:
        status, nodes, assign = _impl.search_bad_coloring(
            n_vertices, colors, *csr, node_budget, array("i", [])
        )
        if status == BUDGET:
            raise BudgetExceededError(nodes, node_budget)
        return tuple(assign) if status == FOUND else None

    depth = min(_SPLIT_DEPTH, n_vertices)
    prefixes = _rg_prefixes(depth, colors)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [
            pool.submit(
                _impl.search_bad_coloring,
                n_vertices,
                colors,
                *csr,
                node_budget,
                array("i", prefix),
            )
            for prefix in prefixes
        ]
        for fut in futures:  # lexicographic merge
            status, nodes, assign = fut.result()
            if status == BUDGET:
                raise BudgetExceededError(nodes, node_budget)
            if status == FOUND:
                return tuple(assign)
    return None


def first_mono_edge(edges: Sequence[Sequence[int]], assignment: Sequence[int]) -> tuple[int, int] | None:
    """Index and color of the first monochromatic edge, or ``None``."""
    for idx, e in enumerate(edges):
        seen = {assignment[v] for v in e}
        if len(seen) == 1:
            return idx, next(iter(seen))
    return None
