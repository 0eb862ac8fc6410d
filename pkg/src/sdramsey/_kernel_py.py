"""Pure-Python backtracking kernel for bad-coloring search.

This is the fallback twin of the compiled kernel in ``_kernel.pyx``; the two
must stay in lockstep.  Shared contract:

  - vertices are colored in index order, colors ascending, restricted to the
    canonical (restricted-growth) representative of each color permutation
    class: vertex 0 takes color 0 and a vertex may use at most one more than
    the largest color used before it;
  - a partial assignment is rejected exactly when some edge becomes fully
    colored in a single color;
  - nodes count color attempts; the search stops with BUDGET once the count
    exceeds ``node_budget``;
  - with a nonempty ``prefix`` the search explores only completions of that
    assignment (the prefix itself is checked first);
  - the first complete assignment found is the lexicographically least bad
    coloring extending the prefix.

Returns ``(status, nodes, assignment_or_None)`` with status FOUND=0, NONE=1,
BUDGET=2.
"""

FOUND = 0
NONE = 1
BUDGET = 2


def search_bad_coloring(
    n_vertices,
    n_colors,
    edge_ptr,
    edge_vtx,
    vtx_ptr,
    vtx_edge,
    node_budget,
    prefix,
):
    edge_ptr = list(edge_ptr)
    edge_vtx = list(edge_vtx)
    vtx_ptr = list(vtx_ptr)
    vtx_edge = list(vtx_edge)
    prefix = list(prefix)

    n = n_vertices
    l = n_colors
    p = len(prefix)
    n_edges = len(edge_ptr) - 1
    esize = [edge_ptr[e + 1] - edge_ptr[e] for e in range(n_edges)]
    cnt = [0] * (n_edges * l)
    filled = [0] * n_edges
    color = list(prefix) + [0] * (n - p)

    for v in range(p):
        c = prefix[v]
        for ei in range(vtx_ptr[v], vtx_ptr[v + 1]):
            e = vtx_edge[ei]
            filled[e] += 1
            cnt[e * l + c] += 1
            if filled[e] == esize[e] and cnt[e * l + c] == esize[e]:
                return (NONE, 0, None)

    mu = max(prefix, default=-1)
    if p == n:
        return (FOUND, 0, color)

    mus = [0] * (n + 1)
    trial = [0] * (n + 1)
    mus[p] = mu
    trial[p] = 0
    nodes = 0
    v = p
    while True:
        limit = mus[v] + 1
        if limit > l - 1:
            limit = l - 1
        c = trial[v]
        if c > limit:
            v -= 1
            if v < p:
                return (NONE, nodes, None)
            cp = color[v]
            for ei in range(vtx_ptr[v], vtx_ptr[v + 1]):
                e = vtx_edge[ei]
                filled[e] -= 1
                cnt[e * l + cp] -= 1
            trial[v] += 1
            continue
        nodes += 1
        if nodes > node_budget:
            return (BUDGET, nodes, None)
        ok = True
        start = vtx_ptr[v]
        stop = vtx_ptr[v + 1]
        ei = start
        while ei < stop:
            e = vtx_edge[ei]
            filled[e] += 1
            cnt[e * l + c] += 1
            if filled[e] == esize[e] and cnt[e * l + c] == esize[e]:
                ok = False
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
            return (FOUND, nodes, color)
        mus[v + 1] = mus[v] if mus[v] >= c else c
        trial[v + 1] = 0
        v += 1
