"""Fine sets, minimal-module closure, the maximal Fine partition and the hat graph.

A vertex set ``A`` is Fine when every member has the same nonempty set of
neighbours outside ``A``.  Equivalently ``A`` is a module (no outside vertex
sees part but not all of it) with a nonempty external neighbourhood; in a
connected graph that means a proper module.  Once the diameter is at least 3
the maximal Fine sets are unique per vertex and partition the vertex set, and
contracting them yields the hat graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    DiameterTooSmall,
    EmptySet,
    InternalConsistencyError,
    PartitionMismatch,
    TooLarge,
)
from .graph import Graph, VertexSet, members, members_tuple
from .metrics import Partition, eccentricities


@dataclass(frozen=True)
class FineCheck:
    fine: bool
    external_neighborhood: VertexSet
    violation: tuple[int, int] | None = None


@dataclass(frozen=True)
class QuotientGraph:
    """A contraction: ``quotient`` has one vertex per class of ``partition``."""

    quotient: Graph
    partition: Partition
    class_of: tuple[int, ...]


def external_neighborhood(g: Graph, a: VertexSet) -> VertexSet:
    """N(A) minus A."""
    rows = g.rows
    ext = 0
    rest = a
    while rest:
        low = rest & -rest
        ext |= rows[low.bit_length() - 1]
        rest ^= low
    return ext & ~a


def is_fine(g: Graph, a: VertexSet) -> FineCheck:
    """Check the Fine predicate literally: N(x) \\ A == N(A) \\ A != {} for all x in A.

    On failure ``violation`` is ``(x, w)`` where ``w`` lies in N(A) \\ A but
    not in N(x); it is ``None`` when the external neighbourhood is empty.
    """
    if not a:
        raise EmptySet("Fine check of an empty set")
    rows = g.rows
    ext = external_neighborhood(g, a)
    if not ext:
        return FineCheck(False, 0)
    for x in members(a):
        own = rows[x] & ~a
        if own != ext:
            missing = ext & ~own
            return FineCheck(False, ext, (x, (missing & -missing).bit_length() - 1))
    return FineCheck(True, ext)


def splitters(g: Graph, s: VertexSet) -> VertexSet:
    """Vertices outside ``s`` adjacent to some, but not all, of ``s``."""
    out = 0
    rows = g.rows
    for z in members(g.all_vertices & ~s):
        hit = rows[z] & s
        if hit and hit != s:
            out |= 1 << z
    return out


def is_module(g: Graph, s: VertexSet) -> bool:
    return not splitters(g, s)


def _closure(rows: tuple[int, ...], full: int, s: int, doomed: int = 0) -> int:
    # Outside vertices seeing some of s are in `seen_by_some`, those seeing all
    # of s in `seen_by_all`; splitters are the difference.  Every splitter lies
    # in every module containing s, so all of them are added at once.
    # `doomed` holds vertices whose minimal module with some member of s is
    # already known to be everything; reaching one settles the answer.
    seen_by_some = 0
    seen_by_all = full
    grow = s
    while True:
        for v in members_tuple(grow):
            row = rows[v]
            seen_by_some |= row
            seen_by_all &= row
        grow = seen_by_some & ~seen_by_all & ~s
        if not grow:
            return s
        s |= grow
        if s == full or s & doomed:
            return full


def minimal_module(g: Graph, seed: VertexSet) -> VertexSet:
    """Smallest module of ``g`` containing ``seed``, by splitter closure."""
    if not seed:
        raise EmptySet("minimal module of an empty seed")
    return _closure(g.rows, g.all_vertices, seed & g.all_vertices)


def _fine_partition_masks(rows: tuple[int, ...], n: int) -> list[VertexSet]:
    # Pivot x absorbs every y whose minimal module with x is proper.  The
    # resulting class must itself be a proper module; otherwise the pairwise
    # "same class" relation was not transitive.  Pivots ascend and classes only
    # hold unassigned vertices, so the output is ordered by smallest member.
    # Earlier pivots, and vertices already found inseparable from the current
    # pivot only by the whole vertex set, short-circuit later closures.
    # The closure of {pivot, y} is inlined here; it is the hot loop of the
    # whole decision procedure.
    full = (1 << n) - 1
    unassigned = full
    pivots = 0
    classes = []
    while unassigned:
        pivot = unassigned & -unassigned
        prow = rows[pivot.bit_length() - 1]
        cls = pivot
        doomed = pivots
        for y in members_tuple(unassigned ^ pivot):
            low = 1 << y
            if cls & low:
                continue
            row = rows[y]
            some = prow | row
            every = prow & row
            s = pivot | low
            grow = some & ~every & ~s
            while grow:
                s |= grow
                if s == full or s & doomed:
                    s = full
                    break
                for v in members_tuple(grow):
                    row = rows[v]
                    some |= row
                    every &= row
                grow = some & ~every & ~s
            if s != full:
                cls |= s
            else:
                doomed |= low
        if cls != pivot and (
            cls == full or cls & ~unassigned or _closure(rows, full, cls) != cls
        ):
            raise InternalConsistencyError(
                f"same-class relation is not transitive around vertex {pivot.bit_length() - 1}"
            )
        classes.append(cls)
        pivots |= pivot
        unassigned &= ~cls
    return classes


def _require_diameter_3(g: Graph) -> None:
    # eccentricities raises Disconnected for us
    if g.n == 0 or max(eccentricities(g)) < 3:
        raise DiameterTooSmall(
            "maximal Fine sets are only unique for connected graphs of diameter >= 3"
        )


def maximal_fine_partition(g: Graph) -> Partition:
    """Partition of a connected, diameter >= 3 graph into its maximal Fine sets."""
    _require_diameter_3(g)
    return Partition.from_masks(_fine_partition_masks(g.rows, g.n))


def _contract_masks(g: Graph, masks: list[VertexSet]) -> Graph:
    rows = g.rows
    qrows = []
    for mask in masks:
        ext = 0
        for v in members_tuple(mask):
            ext |= rows[v]
        ext &= ~mask
        row = 0
        for j, other in enumerate(masks):
            if ext & other:
                row |= 1 << j
        qrows.append(row)
    return Graph.from_rows(qrows)


@lru_cache(maxsize=64)
def _singletons(n: int) -> Partition:
    return Partition(tuple((v,) for v in range(n)))


def _quotient_from_masks(g: Graph, masks: list[VertexSet]) -> QuotientGraph:
    # masks must already be in canonical order (ascending smallest member)
    if len(masks) == g.n:
        return QuotientGraph(g, _singletons(g.n), tuple(range(g.n)))
    partition = Partition(tuple(members_tuple(m) for m in masks))
    owner = [0] * g.n
    for i, c in enumerate(partition.classes):
        for v in c:
            owner[v] = i
    return QuotientGraph(_contract_masks(g, masks), partition, tuple(owner))


def contract(g: Graph, p: Partition) -> QuotientGraph:
    """Contracted graph: classes adjacent iff some cross edge joins them."""
    if p.n != g.n:
        raise PartitionMismatch(f"partition covers {p.n} vertices, graph has {g.n}")
    p = Partition.of(g.n, p.classes)
    return QuotientGraph(_contract_masks(g, p.masks), p, tuple(p.class_of()))


def hat_graph(g: Graph) -> QuotientGraph:
    """Contraction of ``g`` by its maximal Fine partition."""
    _require_diameter_3(g)
    return _quotient_from_masks(g, _fine_partition_masks(g.rows, g.n))


def fine_subsets(g: Graph) -> list[VertexSet]:
    """Every Fine subset, by direct evaluation of the predicate on all 2^n subsets.

    The union and intersection of member rows are built incrementally over
    subsets, so each subset costs O(1): A is Fine iff both, restricted to
    vertices outside A, coincide and are nonempty.
    """
    n = g.n
    rows = g.rows
    size = 1 << n
    union = [0] * size
    inter = [0] * size
    inter[0] = (1 << n) - 1
    out = []
    for a in range(1, size):
        low = a & -a
        prev = a ^ low
        row = rows[low.bit_length() - 1]
        u = union[a] = union[prev] | row
        i = inter[a] = inter[prev] & row
        ext = u & ~a
        if ext and ext == i & ~a:
            out.append(a)
    return out


def enumerate_fine_sets_bruteforce(g: Graph, max_n: int = 12) -> list[VertexSet]:
    """All maximal Fine sets, by scanning every vertex subset.

    Works for any diameter; below 3 a vertex may lie in several maximal Fine
    sets.  Result is ordered by sorted member list.
    """
    if g.n > max_n:
        raise TooLarge(f"{g.n} vertices exceeds the brute-force bound {max_n}")
    fine = fine_subsets(g)
    fine.sort(key=lambda a: -a.bit_count())
    maximal: list[int] = []
    for a in fine:
        if not any(a & b == a for b in maximal):
            maximal.append(a)
    return sorted(maximal, key=members)
