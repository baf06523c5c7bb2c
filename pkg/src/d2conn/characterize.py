"""Deciding connectivity of the 2-distance graph from the structure of G.

Branch table for ``decide_d2_connectivity``:

============================  ==========================================
input                         D2(G) connected iff
============================  ==========================================
single vertex                 always
disconnected                  never (D2 splits along the components)
complete, n >= 2              never (D2 is edgeless)
diameter 2                    complement of G is connected
diameter >= 3                 hat graph is not bipartite
============================  ==========================================

Every disconnected verdict carries a certificate that can be checked
against G directly, and every connected verdict on the diameter >= 3 branch
carries an odd closed walk in the hat graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .errors import (
    Disconnected,
    EmptyGraph,
    ImproperColoring,
    InternalConsistencyError,
    WrongDiameter,
)
from .fine import QuotientGraph, _fine_partition_masks, _quotient_from_masks
from .graph import Graph, VertexSet, build_graph
from .metrics import (
    BITSET_LIMIT,
    Partition,
    bipartite_certificate,
    complement_components,
    connected_components,
    _diameter_class,
    eccentricities,
    is_connected,
)

TRIVIAL = "trivial-K1"
DISCONNECTED_INPUT = "disconnected-input"
COMPLETE = "complete-graph"
DIAMETER_2 = "diameter-2"
DIAMETER_3_PLUS = "diameter-3-plus"
BRANCHES = (TRIVIAL, DISCONNECTED_INPUT, COMPLETE, DIAMETER_2, DIAMETER_3_PLUS)


@dataclass(frozen=True)
class ComponentSplit:
    partition: Partition


@dataclass(frozen=True)
class SpanningBipartite:
    """Every vertex of ``a`` is adjacent to every vertex of ``b``; ``a | b`` is V."""

    a: VertexSet
    b: VertexSet


@dataclass(frozen=True)
class LiftedColoring:
    """No pair at distance exactly 2 has its endpoints on different sides."""

    side0: VertexSet
    side1: VertexSet


@dataclass(frozen=True)
class OddWalkInQuotient:
    """Odd closed walk over hat-graph vertices (class indices)."""

    walk: tuple[int, ...]


Certificate = Union[ComponentSplit, SpanningBipartite, LiftedColoring, OddWalkInQuotient]


@dataclass(frozen=True)
class DecisionOutcome:
    branch: str
    d2_connected: bool
    certificate: Certificate | None = None
    quotient: QuotientGraph | None = None


@dataclass(frozen=True)
class HMembership:
    kind: str  # "odd-cycle", "bull", "house", "apex-graph" or "none"
    length: int | None = None

    def __bool__(self) -> bool:
        return self.kind != "none"


# The three finite members of the family; odd cycles of order >= 5 are the rest.
BULL = build_graph(5, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4)])
HOUSE = build_graph(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 1)])
APEX_GRAPH = build_graph(
    6, [(0, 1), (1, 2), (2, 3), (2, 4), (3, 4), (5, 0), (5, 1), (5, 2), (5, 3)]
)
H_TARGETS = {"bull": BULL, "house": HOUSE, "apex-graph": APEX_GRAPH}


def cycle_graph(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def is_isomorphic(g: Graph, h: Graph) -> bool:
    """Backtracking isomorphism test, meant for graphs with a handful of vertices."""
    if g.n != h.n or g.m != h.m:
        return False
    n = g.n
    gdeg = [g.degree(v) for v in range(n)]
    hdeg = [h.degree(v) for v in range(n)]
    if sorted(gdeg) != sorted(hdeg):
        return False
    grows, hrows = g.rows, h.rows
    order = sorted(range(n), key=lambda v: -gdeg[v])
    image = [-1] * n
    used = 0

    def extend(k: int) -> bool:
        nonlocal used
        if k == n:
            return True
        v = order[k]
        for w in range(n):
            if used >> w & 1 or hdeg[w] != gdeg[v]:
                continue
            if any((grows[v] >> order[i] & 1) != (hrows[w] >> image[order[i]] & 1) for i in range(k)):
                continue
            image[v] = w
            used |= 1 << w
            if extend(k + 1):
                return True
            used &= ~(1 << w)
        image[v] = -1
        return False

    return extend(0)


def classify_h_member(g: Graph) -> HMembership:
    """Which member of the family (odd cycles of order >= 5, bull, house, apex graph) ``g`` is."""
    n = g.n
    if n >= 5 and n % 2 == 1 and g.m == n and all(g.degree(v) == 2 for v in range(n)):
        if is_connected(g):
            return HMembership("odd-cycle", n)
    for kind, target in H_TARGETS.items():
        if is_isomorphic(g, target):
            return HMembership(kind)
    return HMembership("none")


def _spanning_bipartite(g: Graph) -> tuple[VertexSet, VertexSet] | None:
    parts = complement_components(g)
    if len(parts) < 2:
        return None
    side = parts.classes[0]
    inside = set(side)
    need = g.n - len(side)
    adj = g.adjacency
    for v in side:
        if sum(1 for w in adj[v] if w not in inside) != need:
            raise InternalConsistencyError(f"vertex {v} misses part of the opposite side")
    a = parts.masks[0]
    return a, g.all_vertices & ~a


def spanning_bipartite_witness(g: Graph) -> tuple[VertexSet, VertexSet] | None:
    """Sides ``(A, B)`` of a spanning complete bipartite subgraph of a diameter-2 graph, if any.

    ``A`` is one component of the complement and ``B`` the rest of the vertices.
    """
    try:
        diam = max(eccentricities(g)) if g.n else 0
    except Disconnected:
        raise WrongDiameter("spanning bipartite witness needs a connected graph of diameter 2")
    if diam != 2:
        raise WrongDiameter(f"spanning bipartite witness needs diameter 2, got {diam}")
    return _spanning_bipartite(g)


def lift_coloring(q: QuotientGraph, coloring: Sequence[int]) -> tuple[VertexSet, VertexSet]:
    """Pull a proper 2-colouring of the quotient back to the base vertices."""
    qrows = q.quotient.rows
    if len(coloring) != len(qrows) or any(c not in (0, 1) for c in coloring):
        raise ImproperColoring("colouring must give 0 or 1 to every class")
    for i, row in enumerate(qrows):
        j = 0
        while row:
            if row & 1 and coloring[i] == coloring[j]:
                raise ImproperColoring(f"classes {i} and {j} are adjacent and share a colour")
            row >>= 1
            j += 1
    sides = [0, 0]
    for mask, c in zip(q.partition.masks, coloring):
        sides[c] |= mask
    return sides[0], sides[1]


def decide_d2_connectivity(g: Graph) -> DecisionOutcome:
    """Decide whether the 2-distance graph of ``g`` is connected, with a certificate."""
    n = g.n
    if n == 0:
        raise EmptyGraph("decision on the empty graph")
    if n == 1:
        return DecisionOutcome(TRIVIAL, True)
    if n > BITSET_LIMIT:
        if not is_connected(g):
            return DecisionOutcome(DISCONNECTED_INPUT, False, ComponentSplit(connected_components(g)))
        diam = min(max(eccentricities(g)), 3)
    else:
        # diameter class 3 also covers disconnected input
        diam = _diameter_class(g.rows, n)
        if diam == 3 and not is_connected(g):
            return DecisionOutcome(DISCONNECTED_INPUT, False, ComponentSplit(connected_components(g)))
    if diam == 1:
        return DecisionOutcome(COMPLETE, False)
    if diam == 2:
        witness = _spanning_bipartite(g)
        if witness is None:
            return DecisionOutcome(DIAMETER_2, True)
        return DecisionOutcome(DIAMETER_2, False, SpanningBipartite(*witness))
    q = _quotient_from_masks(g, _fine_partition_masks(g.rows, n))
    bip = bipartite_certificate(q.quotient)
    if bip.is_bipartite:
        side0, side1 = lift_coloring(q, bip.coloring)
        if not side0 or not side1:
            raise InternalConsistencyError("lifted colouring has an empty side")
        return DecisionOutcome(DIAMETER_3_PLUS, False, LiftedColoring(side0, side1), q)
    return DecisionOutcome(DIAMETER_3_PLUS, True, OddWalkInQuotient(bip.odd_walk), q)
