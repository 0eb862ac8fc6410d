# cython: language_level=3
# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled backtracking kernel for bad-coloring search.

Mirror of ``_kernel_py.py``; see that module for the shared contract.  The
hot loop runs without the GIL so worker threads can split the search tree.
"""

from cpython.mem cimport PyMem_Malloc, PyMem_Free
from libc.string cimport memset

FOUND = 0
NONE = 1
BUDGET = 2


cdef int _search(int n, int l, const int* edge_ptr, const int* edge_vtx,
                 const int* vtx_ptr, const int* vtx_edge, const int* esize,
                 long long budget, int p,
                 int* cnt, int* filled, int* color, int* trial, int* mus,
                 long long* nodes_out) noexcept nogil:
    cdef long long nodes = 0
    cdef int v, c, cp, e, e2, ei, j, start, stop, limit, mu, ok

    for v in range(p):
        c = color[v]
        for ei in range(vtx_ptr[v], vtx_ptr[v + 1]):
            e = vtx_edge[ei]
            filled[e] += 1
            cnt[e * l + c] += 1
            if filled[e] == esize[e] and cnt[e * l + c] == esize[e]:
                nodes_out[0] = 0
                return 1  # NONE

    mu = -1
    for v in range(p):
        if color[v] > mu:
            mu = color[v]
    if p == n:
        nodes_out[0] = 0
        return 0  # FOUND

    mus[p] = mu
    trial[p] = 0
    v = p
    while True:
        limit = mus[v] + 1
        if limit > l - 1:
            limit = l - 1
        c = trial[v]
        if c > limit:
            v -= 1
            if v < p:
                nodes_out[0] = nodes
                return 1  # NONE
            cp = color[v]
            for ei in range(vtx_ptr[v], vtx_ptr[v + 1]):
                e = vtx_edge[ei]
                filled[e] -= 1
                cnt[e * l + cp] -= 1
            trial[v] += 1
            continue
        nodes += 1
        if nodes > budget:
            nodes_out[0] = nodes
            return 2  # BUDGET
        ok = 1
        start = vtx_ptr[v]
        stop = vtx_ptr[v + 1]
        ei = start
        while ei < stop:
            e = vtx_edge[ei]
            filled[e] += 1
            cnt[e * l + c] += 1
            if filled[e] == esize[e] and cnt[e * l + c] == esize[e]:
                ok = 0
                j = start
                while j <= ei:
                    e2 = vtx_edge[j]
                    filled[e2] -= 1
                    cnt[e2 * l + c] -= 1
                    j += 1
                break
            ei += 1
        if not ok:
            trial[v] += 1
            continue
        color[v] = c
        if v + 1 == n:
            nodes_out[0] = nodes
            return 0  # FOUND
        mus[v + 1] = mus[v] if mus[v] >= c else c
        trial[v + 1] = 0
        v += 1


def search_bad_coloring(int n_vertices, int n_colors,
                        int[::1] edge_ptr, int[::1] edge_vtx,
                        int[::1] vtx_ptr, int[::1] vtx_edge,
                        long long node_budget, int[::1] prefix):
    cdef int n = n_vertices
    cdef int l = n_colors
    cdef int p = prefix.shape[0]
    cdef int n_edges = edge_ptr.shape[0] - 1
    cdef int e, v, status
    cdef long long nodes = 0
    cdef const int* ep = NULL
    cdef const int* ev = NULL
    cdef const int* vp = NULL
    cdef const int* ve = NULL
    cdef int* esize = NULL
    cdef int* cnt = NULL
    cdef int* filled = NULL
    cdef int* color = NULL
    cdef int* trial = NULL
    cdef int* mus = NULL

    if edge_ptr.shape[0] > 0:
        ep = &edge_ptr[0]
    if edge_vtx.shape[0] > 0:
        ev = &edge_vtx[0]
    if vtx_ptr.shape[0] > 0:
        vp = &vtx_ptr[0]
    if vtx_edge.shape[0] > 0:
        ve = &vtx_edge[0]

    esize = <int*> PyMem_Malloc(max(1, n_edges) * sizeof(int))
    cnt = <int*> PyMem_Malloc(max(1, n_edges * l) * sizeof(int))
    filled = <int*> PyMem_Malloc(max(1, n_edges) * sizeof(int))
    color = <int*> PyMem_Malloc(max(1, n) * sizeof(int))
    trial = <int*> PyMem_Malloc((n + 1) * sizeof(int))
    mus = <int*> PyMem_Malloc((n + 1) * sizeof(int))
    if not (esize and cnt and filled and color and trial and mus):
        PyMem_Free(esize); PyMem_Free(cnt); PyMem_Free(filled)
        PyMem_Free(color); PyMem_Free(trial); PyMem_Free(mus)
        raise MemoryError()
    try:
        memset(cnt, 0, max(1, n_edges * l) * sizeof(int))
        memset(filled, 0, max(1, n_edges) * sizeof(int))
        for e in range(n_edges):
            esize[e] = edge_ptr[e + 1] - edge_ptr[e]
        for v in range(p):
            color[v] = prefix[v]
        with nogil:
            status = _search(n, l, ep, ev, vp, ve, esize,
                             node_budget, p, cnt, filled, color, trial, mus, &nodes)
        if status == 0:
            return (0, nodes, [color[v] for v in range(n)])
        return (status, nodes, None)
    finally:
        PyMem_Free(esize)
        PyMem_Free(cnt)
        PyMem_Free(filled)
        PyMem_Free(color)
        PyMem_Free(trial)
        PyMem_Free(mus)
