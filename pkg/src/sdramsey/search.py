"""Copy hypergraphs and minimal-witness search.

Fix parameters K <= M <= N.  Vertices are the elements of a space at size N
and image K; every anchor at intermediate size M contributes one edge, the
*copy*: the set of all compositions of the anchor with the elements of the
small space.  A coloring with no monochromatic copy is *bad*; showing that
no bad coloring exists certifies N as a witness.

Three modes:

  - ``connections``: anchors range over F_{N,M}, copies over F_{M,K};
  - ``injections_only``: anchors are increasing injections M -> N, copies
    compose them with increasing injections K -> M (classical Ramsey);
  - ``surjections_only``: anchors are rigid surjections N -> M, copies
    post-compose rigid surjections M -> K (dual Ramsey).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import engine
from .core import (
    ChoiceInjection,
    MODE_CONNECTIONS,
    MODE_INJECTIONS,
    SpaceSpec,
    compose,
    compose_surjections,
    enumerate_space,
)
from .errors import DomainError

__all__ = [
    "Coloring",
    "CopyEdge",
    "CopyFamily",
    "copy_family",
    "find_mono_copy",
    "find_bad_coloring",
    "min_witness_n",
    "WitnessResult",
    "coloring_to_json",
]


@dataclass(frozen=True)
class Coloring:
    """A total assignment of one of ``colors`` colors to a space's elements,
    indexed by enumeration order."""

    space: object
    colors: int
    assignment: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(self.assignment))
        if self.colors < 1:
            raise DomainError("need at least one color")
        n = self.space.count()
        if len(self.assignment) != n:
            raise DomainError(f"{len(self.assignment)} colors assigned to {n} elements")
        for idx, c in enumerate(self.assignment):
            if not 0 <= c < self.colors:
                raise DomainError(f"color {c} at index {idx} outside [0, {self.colors})")


def coloring_to_json(coloring: Coloring) -> dict:
    return {
        "space": coloring.space.to_json(),
        "l": coloring.colors,
        "colors": list(coloring.assignment),
    }


@dataclass(frozen=True)
class CopyEdge:
    anchor: object
    vertices: tuple[int, ...]


@dataclass(frozen=True)
class CopyFamily:
    """The copy hypergraph: vertex space, intermediate size, and edges
    (anchor plus vertex-index set), deduplicated as vertex sets."""

    space: SpaceSpec
    M: int
    vertices: tuple
    edges: tuple[CopyEdge, ...]


def copy_family(N: int, K: int, M: int, mode: str = MODE_CONNECTIONS) -> CopyFamily:
    """Build the copy hypergraph for the given parameters and mode.

    Edges induced by distinct anchors may coincide as vertex sets; only the
    first anchor of each set is kept.  Order is deterministic throughout.
    """
    if not 1 <= K <= M <= N:
        raise DomainError(f"need 1 <= K <= M <= N, got K={K}, M={M}, N={N}")
    space = SpaceSpec(0, N, K, mode)
    vertices = tuple(enumerate_space(space))
    index = {v: i for i, v in enumerate(vertices)}

    if mode == MODE_CONNECTIONS:
        smalls = tuple(enumerate_space(SpaceSpec(0, M, K, mode)))
        anchors = enumerate_space(SpaceSpec(0, N, M, mode))

        def members(anchor):
            return (compose(x, anchor) for x in smalls)

    elif mode == MODE_INJECTIONS:
        smalls = tuple(enumerate_space(SpaceSpec(0, M, K, mode)))
        anchors = enumerate_space(SpaceSpec(0, N, M, mode))

        def members(anchor):
            return (
                ChoiceInjection(tuple(anchor.values[v] for v in x.values)) for x in smalls
            )

    else:
        smalls = tuple(enumerate_space(SpaceSpec(0, M, K, mode)))
        anchors = enumerate_space(SpaceSpec(0, N, M, mode))

        def members(anchor):
            return (compose_surjections(u, anchor) for u in smalls)

    edges: dict[tuple[int, ...], CopyEdge] = {}
    for anchor in anchors:
        vset = tuple(sorted(index[m] for m in members(anchor)))
        if vset not in edges:
            edges[vset] = CopyEdge(anchor, vset)
    return CopyFamily(space, M, vertices, tuple(edges.values()))


def find_mono_copy(coloring: Coloring, family: CopyFamily):
    """First edge whose vertices share one color, as ``(anchor, color)``."""
    if coloring.space != family.space:
        raise DomainError("coloring and family describe different spaces")
    assignment = coloring.assignment
    for edge in family.edges:
        colors = {assignment[i] for i in edge.vertices}
        if len(colors) == 1:
            return edge.anchor, next(iter(colors))
    return None


def find_bad_coloring(
    N: int,
    K: int,
    M: int,
    colors: int,
    mode: str = MODE_CONNECTIONS,
    node_budget: int = engine.DEFAULT_NODE_BUDGET,
    threads: int = 1,
) -> Coloring | None:
    """A coloring with no monochromatic copy, or ``None`` if there is none.

    ``None`` certifies N as a witness for (K, M, colors) in this mode.
    Raises :class:`BudgetExceededError` when the node budget runs out.
    """
    family = copy_family(N, K, M, mode)
    assignment = engine.find_bad_assignment(
        len(family.vertices),
        [edge.vertices for edge in family.edges],
        colors,
        node_budget=node_budget,
        threads=threads,
    )
    if assignment is None:
        return None
    return Coloring(family.space, colors, assignment)


@dataclass(frozen=True)
class WitnessResult:
    """Outcome of a minimal-witness scan.

    ``found`` is the least successful N, or ``None`` when every N up to
    ``max_checked`` admitted a bad coloring; ``last_bad`` is the bad
    coloring at the largest failing N examined (the certificate).
    """

    found: int | None
    max_checked: int
    last_bad: Coloring | None


def min_witness_n(
    K: int,
    M: int,
    colors: int,
    mode: str = MODE_CONNECTIONS,
    max_n: int = 8,
    node_budget: int = engine.DEFAULT_NODE_BUDGET,
    threads: int = 1,
) -> WitnessResult:
    """Least N in [M, max_n] with no bad coloring.

    Monotonicity in N is not assumed; every N is tested independently and
    the least success reported.
    """
    if not 1 <= K <= M:
        raise DomainError(f"need 1 <= K <= M, got K={K}, M={M}")
    if colors < 1:
        raise DomainError("need at least one color")
    last_bad = None
    for n in range(M, max_n + 1):
        bad = find_bad_coloring(n, K, M, colors, mode, node_budget=node_budget, threads=threads)
        if bad is None:
            return WitnessResult(found=n, max_checked=n, last_bad=last_bad)
        last_bad = bad
    return WitnessResult(found=None, max_checked=max_n, last_bad=last_bad)
