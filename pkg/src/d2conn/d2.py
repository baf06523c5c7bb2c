"""The 2-distance graph, graph powers, and the brute-force connectivity oracle."""

from __future__ import annotations

from typing import NamedTuple

from .errors import EmptyGraph
from .graph import Graph, members_tuple
from .metrics import INF, BITSET_LIMIT, Partition, bfs_distances, connected_components


class OracleResult(NamedTuple):
    connected: bool
    components: Partition


def distance2_graph(g: Graph) -> Graph:
    """Graph on V(g) joining the pairs at distance exactly 2 in ``g``.

    Row ``v`` is the union of its neighbours' rows (vertices sharing a common
    neighbour with ``v``) minus ``v`` itself and its own neighbours.  Vertices
    in different components never share a neighbour, so the construction is
    total on disconnected input.
    """
    if g.n == 0:
        raise EmptyGraph("2-distance graph of the empty graph")
    if g.n > BITSET_LIMIT:
        sets = g.neighbor_sets
        out = []
        for v, nv in enumerate(g.adjacency):
            two = set()
            for u in nv:
                two.update(sets[u])
            two.difference_update(sets[v])
            two.discard(v)
            out.append(tuple(sorted(two)))
        return Graph.from_neighbors(out)
    rows = g.rows
    out = []
    for v, row in enumerate(rows):
        reach = 0
        for u in members_tuple(row):
            reach |= rows[u]
        out.append(reach & ~row & ~(1 << v))
    return Graph.from_rows(out)


def power_graph(g: Graph, k: int) -> Graph:
    """k-th power: pairs at distance at most ``k``, computed from BFS distances."""
    if g.n == 0:
        raise EmptyGraph("power of the empty graph")
    nbrs = []
    for s in range(g.n):
        dist = bfs_distances(g, s)
        nbrs.append(tuple(v for v, d in enumerate(dist) if v != s and d != INF and d <= k))
    return Graph.from_neighbors(nbrs)


def edge_difference(g: Graph, h: Graph) -> Graph:
    """Graph with the edges of ``g`` that are not edges of ``h`` (same vertex set)."""
    return Graph.from_rows([a & ~b for a, b in zip(g.rows, h.rows)])


def d2_connectivity_oracle(g: Graph) -> OracleResult:
    """Ground truth: components of the explicitly built 2-distance graph."""
    comps = connected_components(distance2_graph(g))
    return OracleResult(len(comps) == 1, comps)
