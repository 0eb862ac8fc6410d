"""Finite approximations and exhaustive structural-axiom checks.

Two truncation operators exist side by side: the segment truncation
(:func:`sdramsey.core.nth_initial_segment`), which cuts at class boundaries
and always yields a connection, and the positional truncation
(:func:`approximate`), which cuts the token string at an arbitrary position
and keeps every choice value of the surviving classes.  The latter may keep
a choice value pointing past the cut; such records carry ``tail_relaxed``
instead of being silently repaired.

:func:`check_axioms` verifies, over every enumerated space within the given
bounds, the finitized forms of the standard closure axioms of a space of
approximations (A.1 to A.3 in the usual numbering).  The checked statements
are spelled out clause by clause in ``_CLAUSES`` below; all quantifiers
range over the enumerated finite spaces.  :func:`verify_a4_instance` checks
single instances of the A.4 pigeonhole property, which finite truncations
may legitimately fail.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .core import (
    Connection,
    MODE_CONNECTIONS,
    SpaceSpec,
    compose,
    enumerate_space,
    format_connection,
    is_initial_segment,
    nth_initial_segment,
    nth_segment_set,
    reduct_witness,
)
from .errors import DomainError, EnumerationGuardError

__all__ = [
    "ApproximationRecord",
    "approximate",
    "fin_reducts",
    "ClauseReport",
    "AxiomsReport",
    "check_axioms",
    "verify_a4_instance",
    "SIDE_INSIDE",
    "SIDE_COMPLEMENT",
]

ENUMERATION_GUARD = 1_000_000


@dataclass(frozen=True)
class ApproximationRecord:
    """A positional truncation: token prefix, surviving choice values, and
    whether the last kept choice value points past the cut."""

    alphabet: int
    tokens: tuple[int, ...]
    choice_prefix: tuple[int, ...]
    tail_relaxed: bool


def approximate(conn: Connection, n: int) -> ApproximationRecord:
    """Cut the token string at position ``n``; keep the choice values of the
    classes that appear in the prefix."""
    if n < 0 or n > conn.length:
        raise DomainError(f"cut {n} outside [0, {conn.length}]")
    prefix = conn.tokens[:n]
    k = 0
    for tok in prefix:
        if tok >= 0 and tok + 1 > k:
            k = tok + 1
    values = conn.choice_values[:k]
    relaxed = bool(values) and values[-1] >= n
    return ApproximationRecord(conn.alphabet, prefix, values, relaxed)


def fin_reducts(conn: Connection) -> tuple[Connection, ...]:
    """All same-length connections that are reducts of ``conn``, smaller
    image sizes first, enumeration order within each size."""
    out = []
    for k in range(conn.image_k + 1):
        for cand in enumerate_space(SpaceSpec(conn.alphabet, conn.length, k, MODE_CONNECTIONS)):
            if reduct_witness(cand, conn) is not None:
                out.append(cand)
    return tuple(out)


@dataclass(frozen=True)
class ClauseReport:
    clause: str
    statement: str
    passed: bool
    instances: int
    counterexample: str | None = None


@dataclass(frozen=True)
class AxiomsReport:
    max_length: int
    max_alphabet: int
    total_elements: int
    clauses: tuple[ClauseReport, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.clauses)


def _pools(max_length: int, max_alphabet: int):
    """Connections grouped by (alphabet, length), under the global guard."""
    pools: dict[tuple[int, int], list[Connection]] = {}
    total = 0
    for a in range(max_alphabet + 1):
        for length in range(max_length + 1):
            pool: list[Connection] = []
            for k in range(length + 1):
                for conn in enumerate_space(SpaceSpec(a, length, k, MODE_CONNECTIONS)):
                    pool.append(conn)
                    total += 1
                    if total > ENUMERATION_GUARD:
                        raise EnumerationGuardError(
                            f"more than {ENUMERATION_GUARD} elements at max_length={max_length}"
                        )
            pools[(a, length)] = pool
    return pools, total


def _cx(*conns: Connection) -> str:
    return "  vs  ".join(format_connection(c) for c in conns)


def check_axioms(max_length: int = 4, max_alphabet: int = 1) -> AxiomsReport:
    """Exhaustively verify the finitized closure axioms.

    Checked statements, with all quantifiers over the enumerated connections
    of length at most ``max_length`` over alphabets up to ``max_alphabet``:

      A1.1  the 0-segment has no numeric content; over the empty alphabet it
            is the empty connection.
      A1.2  distinct connections in one space differ in some segment.
      A1.3  equal segments have equal indices and lengths and agree at every
            smaller index.
      A2.1  the set of same-length reducts of a connection is finite and
            every member passes the witness recheck.
      A2.2  a same-length pair is in the reduct relation exactly when every
            segment of the candidate is a same-length reduct of some segment
            of the base.
      A2.3  every segment of a reduct is a same-length reduct of some
            segment of the base (amalgamation over approximations; the
            approximation relation cuts at class boundaries).
      A3.1  a nonempty cylinder stays nonempty relativized to any member.
      A3.2  below a reduct, a nonempty cylinder contains one refining the
            corresponding cylinder of the coarser connection.
    """
    pools, total = _pools(max_length, max_alphabet)
    clauses: list[ClauseReport] = []

    # Per-pool reduct matrices and segment lists, shared by clauses.
    reducts: dict[tuple[int, int], dict[tuple[int, int], bool]] = {}
    segs: dict[Connection, tuple[Connection, ...]] = {}
    for key, pool in pools.items():
        mat = {}
        for i, cand in enumerate(pool):
            for j, base in enumerate(pool):
                mat[(i, j)] = reduct_witness(cand, base) is not None
        reducts[key] = mat
        for conn in pool:
            segs[conn] = tuple(nth_initial_segment(conn, n) for n in range(conn.image_k + 1))

    # A1.1
    count = 0
    bad = None
    for (a, _), pool in pools.items():
        for conn in pool:
            count += 1
            seg0 = segs[conn][0]
            if seg0.choice_values or any(t >= 0 for t in seg0.tokens):
                bad = _cx(conn)
                break
            if a == 0 and seg0.length != 0:
                bad = _cx(conn)
                break
        if bad:
            break
    clauses.append(
        ClauseReport("A1.1", "0-segments carry no numeric content", bad is None, count, bad)
    )

    # A1.2
    count = 0
    bad = None
    for key, pool in pools.items():
        by_space: dict[tuple[int, int], list[Connection]] = {}
        for conn in pool:
            by_space.setdefault((conn.alphabet, conn.image_k), []).append(conn)
        for group in by_space.values():
            for i, x in enumerate(group):
                for y in group[i + 1 :]:
                    count += 1
                    if all(
                        segs[x][n] == segs[y][n] for n in range(min(x.image_k, y.image_k) + 1)
                    ):
                        bad = _cx(x, y)
                        break
                if bad:
                    break
            if bad:
                break
        if bad:
            break
    clauses.append(
        ClauseReport("A1.2", "distinct connections differ in some segment", bad is None, count, bad)
    )

    # A1.3
    count = 0
    bad = None
    for pool in pools.values():
        for x in pool:
            for y in pool:
                for n in range(x.image_k + 1):
                    for m in range(y.image_k + 1):
                        if segs[x][n] != segs[y][m]:
                            continue
                        count += 1
                        if n != m or any(segs[x][k] != segs[y][k] for k in range(n)):
                            bad = _cx(x, y) + f" at segments {n}, {m}"
                            break
                    if bad:
                        break
                if bad:
                    break
            if bad:
                break
        if bad:
            break
    clauses.append(
        ClauseReport(
            "A1.3", "equal segments share the index and all earlier segments", bad is None, count, bad
        )
    )

    # A2.1
    count = 0
    bad = None
    largest = 0
    for pool in pools.values():
        for conn in pool:
            count += 1
            rset = fin_reducts(conn)
            largest = max(largest, len(rset))
            for cand in rset:
                wit = reduct_witness(cand, conn)
                if wit is None:
                    bad = _cx(cand, conn)
                    break
            if bad:
                break
        if bad:
            break
    clauses.append(
        ClauseReport(
            "A2.1",
            f"same-length reduct sets are finite and sound (largest {largest})",
            bad is None,
            count,
            bad,
        )
    )

    # A2.2
    count = 0
    bad = None
    for key, pool in pools.items():
        mat = reducts[key]
        for i, cand in enumerate(pool):
            for j, base in enumerate(pool):
                count += 1
                via_segments = all(
                    any(
                        sc.length == sb.length and reduct_witness(sc, sb) is not None
                        for sb in segs[base]
                    )
                    for sc in segs[cand]
                )
                if mat[(i, j)] != via_segments:
                    bad = _cx(cand, base)
                    break
            if bad:
                break
        if bad:
            break
    clauses.append(
        ClauseReport(
            "A2.2",
            "the reduct relation matches segmentwise same-length reducibility",
            bad is None,
            count,
            bad,
        )
    )

    # A2.3
    count = 0
    bad = None
    for key, pool in pools.items():
        mat = reducts[key]
        for i, mid in enumerate(pool):
            for j, big in enumerate(pool):
                if not mat[(i, j)]:
                    continue
                for small in segs[mid]:
                    count += 1
                    if not any(
                        small.length == tilde.length and reduct_witness(small, tilde) is not None
                        for tilde in segs[big]
                    ):
                        bad = _cx(small, mid, big)
                        break
                if bad:
                    break
            if bad:
                break
        if bad:
            break
    clauses.append(
        ClauseReport(
            "A2.3",
            "segments of reducts are reducts of segments",
            bad is None,
            count,
            bad,
        )
    )

    # Cylinders, memoized per (t, base).
    def cylinder(t: Connection, base_key, base_idx: int, pool) -> frozenset[int]:
        mat = reducts[base_key]
        return frozenset(
            i
            for i, x in enumerate(pool)
            if mat[(i, base_idx)]
            and t.length <= x.length
            and is_initial_segment(t, x)
        )

    # A3.1
    count = 0
    bad = None
    for key, pool in pools.items():
        a = key[0]
        ts = [t for p_key, p in pools.items() if p_key[0] == a for t in p]
        for j, base in enumerate(pool):
            for t in ts:
                cyl = cylinder(t, key, j, pool)
                if not cyl:
                    continue
                count += 1
                for i in cyl:
                    if not cylinder(t, key, i, pool):
                        bad = _cx(t, base, pool[i])
                        break
                if bad:
                    break
            if bad:
                break
        if bad:
            break
    clauses.append(
        ClauseReport(
            "A3.1", "nonempty cylinders stay nonempty at their members", bad is None, count, bad
        )
    )

    # A3.2
    count = 0
    bad = None
    for key, pool in pools.items():
        a = key[0]
        mat = reducts[key]
        ts = [t for p_key, p in pools.items() if p_key[0] == a for t in p]
        cyl_cache: dict[tuple[Connection, int], frozenset[int]] = {}

        def cyl(t, idx):
            got = cyl_cache.get((t, idx))
            if got is None:
                got = cylinder(t, key, idx, pool)
                cyl_cache[(t, idx)] = got
            return got

        for jr, rprime in enumerate(pool):
            for jb, base in enumerate(pool):
                if not mat[(jr, jb)]:
                    continue
                for t in ts:
                    inner = cyl(t, jr)
                    if not inner:
                        continue
                    count += 1
                    outer = cyl(t, jb)
                    if not any(cyl(t, i) and cyl(t, i) <= inner for i in outer):
                        bad = _cx(t, rprime, base)
                        break
                if bad:
                    break
            if bad:
                break
        if bad:
            break
    clauses.append(
        ClauseReport(
            "A3.2",
            "cylinders below a reduct refine cylinders below the base",
            bad is None,
            count,
            bad,
        )
    )

    return AxiomsReport(max_length, max_alphabet, total, tuple(clauses))


SIDE_INSIDE = "O"
SIDE_COMPLEMENT = "complement"


def verify_a4_instance(
    base: Connection,
    t_i: Connection,
    target_set: Iterable[Connection],
    search_depth: int | None = None,
):
    """Search the reducts of ``base`` extending ``t_i`` for one whose
    next-segment set sits wholly inside the target set or wholly outside.

    ``t_i`` fixes the segment index n through its image size.  Candidates
    are ordered with the base itself first (largest intermediate size down);
    ``search_depth`` caps how many are examined.  Returns ``(reduct, side)``
    or ``None``; finite truncations may honestly find nothing.
    """
    target = set(target_set)
    for member in target:
        if not isinstance(member, Connection):
            raise DomainError(f"target set member {member!r} is not a connection")
    n = t_i.image_k
    if n + 1 > base.image_k:
        return None
    examined = 0
    m = base.image_k
    for m_prime in range(m, n, -1):
        for outer in enumerate_space(SpaceSpec(base.alphabet, m, m_prime, MODE_CONNECTIONS)):
            candidate = compose(outer, base)
            if not is_initial_segment(t_i, candidate):
                continue
            if search_depth is not None and examined >= search_depth:
                return None
            examined += 1
            seg_set = [
                s
                for s in nth_segment_set(candidate, n + 1)
                if nth_initial_segment(s, n) == t_i
            ]
            if all(s in target for s in seg_set):
                return candidate, SIDE_INSIDE
            if all(s not in target for s in seg_set):
                return candidate, SIDE_COMPLEMENT
    return None
