"""Distances, components, diameter and bipartiteness with certificates.

Small graphs go through bit-row kernels; above ``BITSET_LIMIT`` vertices the
adjacency-list routes are used so that sparse inputs stay linear.
"""

from __future__ import annotations

import math
from functools import cached_property
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import Disconnected, EmptyGraph, IndexOutOfRange, PartitionMismatch
from .graph import Graph, VertexSet, members_tuple

INF = math.inf
BITSET_LIMIT = 1024


@dataclass(frozen=True)
class Partition:
    """Disjoint, nonempty, sorted vertex classes covering ``0..n-1``.

    Classes are ordered by their smallest vertex, so equal partitions compare
    equal regardless of how they were produced.
    """

    classes: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, n: int, classes: Iterable[Iterable[int]]) -> Partition:
        """Validated, canonically ordered partition of ``0..n-1``."""
        norm = [tuple(sorted(c)) for c in classes]
        seen: set[int] = set()
        for c in norm:
            if not c:
                raise PartitionMismatch("empty class")
            for v in c:
                if not 0 <= v < n or v in seen:
                    raise PartitionMismatch(f"vertex {v} out of range or repeated")
                seen.add(v)
        if len(seen) != n:
            raise PartitionMismatch(f"classes cover {len(seen)} of {n} vertices")
        return cls(tuple(sorted(norm)))

    @classmethod
    def from_masks(cls, masks: Iterable[VertexSet]) -> Partition:
        # Trusted constructor for masks already known to partition the vertices.
        return cls(tuple(sorted(members_tuple(m) for m in masks)))

    @property
    def n(self) -> int:
        return sum(len(c) for c in self.classes)

    @cached_property
    def masks(self) -> list[VertexSet]:
        out = []
        for c in self.classes:
            mask = 0
            for v in c:
                mask |= 1 << v
            out.append(mask)
        return out

    def class_of(self) -> list[int]:
        """Per-vertex index of the containing class."""
        owner = [0] * self.n
        for i, c in enumerate(self.classes):
            for v in c:
                owner[v] = i
        return owner

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)


@dataclass(frozen=True)
class BipartitenessResult:
    """Either a proper 2-colouring or an odd closed walk (first == last)."""

    coloring: tuple[int, ...] | None = None
    odd_walk: tuple[int, ...] | None = None

    @property
    def is_bipartite(self) -> bool:
        return self.coloring is not None


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise IndexOutOfRange(f"vertex {v} outside 0..{g.n - 1}")


def bfs_distances(g: Graph, source: int) -> list[float]:
    """Shortest-path distances from ``source``; ``INF`` marks unreachable vertices."""
    _check_vertex(g, source)
    dist: list[float] = [INF] * g.n
    dist[source] = 0
    adj = g.adjacency
    frontier = [source]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if dist[w] is INF:
                    dist[w] = d
                    nxt.append(w)
        frontier = nxt
    return dist


def _component_masks(rows: Sequence[int], n: int) -> list[VertexSet]:
    remaining = (1 << n) - 1
    comps = []
    while remaining:
        comp = frontier = remaining & -remaining
        while frontier:
            reach = 0
            for u in members_tuple(frontier):
                reach |= rows[u]
            frontier = reach & ~comp
            comp |= frontier
        comps.append(comp)
        remaining &= ~comp
    return comps


def _component_lists(adj: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    seen = bytearray(n)
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = 1
        comp = [s]
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = 1
                    comp.append(w)
                    stack.append(w)
        comps.append(comp)
    return comps


def connected_components(g: Graph) -> Partition:
    if g.n == 0:
        raise EmptyGraph("connected components of the empty graph")
    if g.n <= BITSET_LIMIT:
        return Partition.from_masks(_component_masks(g.rows, g.n))
    return Partition(tuple(sorted(tuple(sorted(c)) for c in _component_lists(g.adjacency, g.n))))


def is_connected(g: Graph) -> bool:
    if g.n <= BITSET_LIMIT:
        full = g.all_vertices
        rows = g.rows
        comp = frontier = 1
        while frontier:
            reach = 0
            for u in members_tuple(frontier):
                reach |= rows[u]
            frontier = reach & ~comp
            comp |= frontier
        return comp == full
    return len(_component_lists(g.adjacency, g.n)) == 1


def eccentricities(g: Graph) -> list[int]:
    """Eccentricity of every vertex of a connected graph."""
    if g.n == 0:
        raise EmptyGraph("eccentricity of the empty graph")
    if g.n > BITSET_LIMIT:
        out = []
        for s in range(g.n):
            d = max(bfs_distances(g, s))
            if d == INF:
                raise Disconnected("graph is disconnected")
            out.append(int(d))
        return out
    rows = g.rows
    full = g.all_vertices
    out = []
    for s in range(g.n):
        seen = frontier = 1 << s
        ecc = 0
        while seen != full:
            reach = 0
            for u in members_tuple(frontier):
                reach |= rows[u]
            frontier = reach & ~seen
            if not frontier:
                raise Disconnected("graph is disconnected")
            seen |= frontier
            ecc += 1
        out.append(ecc)
    return out


def _diameter_class(rows: Sequence[int], n: int) -> int:
    # 1, 2, or 3 for "at least 3"; disconnected input also yields 3.
    full = (1 << n) - 1
    result = 1
    for v, row in enumerate(rows):
        closed = row | 1 << v
        if closed == full:
            continue
        reach = closed
        for u in members_tuple(row):
            reach |= rows[u]
        if reach != full:
            return 3
        result = 2
    return result


def diameter(g: Graph) -> int:
    """Largest distance between two vertices; raises ``Disconnected`` rather than return infinity."""
    return max(eccentricities(g))


def bipartite_certificate(g: Graph) -> BipartitenessResult:
    """Proper 2-colouring of a connected graph, or an odd cycle as a closed walk.

    The colouring is the BFS-layer parity from vertex 0.  An edge joining two
    vertices of equal depth closes an odd cycle through their lowest common
    BFS ancestor.
    """
    n = g.n
    if n == 0:
        raise EmptyGraph("bipartiteness of the empty graph")
    depth = [-1] * n
    parent = [-1] * n
    depth[0] = 0
    order = [0]
    if n <= BITSET_LIMIT:
        rows = g.rows
        seen = 1
        for u in order:
            new = rows[u] & ~seen
            if new:
                seen |= new
                du = depth[u] + 1
                for w in members_tuple(new):
                    depth[w] = du
                    parent[w] = u
                    order.append(w)
        if len(order) != n:
            raise Disconnected("bipartiteness certificate needs a connected graph")
        layers = [0] * (depth[order[-1]] + 1)
        for v in order:
            layers[depth[v]] |= 1 << v
        for u in order:
            clash = rows[u] & layers[depth[u]]
            if clash:
                w = (clash & -clash).bit_length() - 1
                return BipartitenessResult(odd_walk=_odd_cycle(parent, u, w))
        return BipartitenessResult(coloring=tuple(d & 1 for d in depth))
    adj = g.adjacency
    for u in order:
        for w in adj[u]:
            if depth[w] < 0:
                depth[w] = depth[u] + 1
                parent[w] = u
                order.append(w)
    if len(order) != n:
        raise Disconnected("bipartiteness certificate needs a connected graph")
    for u in order:
        for w in adj[u]:
            if depth[u] == depth[w]:
                return BipartitenessResult(odd_walk=_odd_cycle(parent, u, w))
    return BipartitenessResult(coloring=tuple(d & 1 for d in depth))


def _odd_cycle(parent: list[int], u: int, w: int) -> tuple[int, ...]:
    # u, w sit at the same BFS depth; climb in lockstep to their meeting point.
    left, right = [u], [w]
    while left[-1] != right[-1]:
        left.append(parent[left[-1]])
        right.append(parent[right[-1]])
    top = left[-1]
    # top -> ... -> u -> w -> ... -> top
    return (top, *reversed(left[:-1]), *right[:-1], top)


def complement_components(g: Graph) -> Partition:
    """Components of the complement of ``g`` without building the complement.

    Unvisited-set BFS: scanning vertex ``v`` splits the unvisited set into the
    non-neighbours of ``v`` (newly reached) and its neighbours (kept).  Every
    comparison either removes a vertex or is charged to an edge, so the total
    work is O(n + m).
    """
    n = g.n
    if n == 0:
        raise EmptyGraph("complement components of the empty graph")
    if n <= BITSET_LIMIT:
        rows = g.rows
        full = g.all_vertices
        remaining = full
        comps = []
        while remaining:
            comp = frontier = remaining & -remaining
            remaining ^= comp
            while frontier:
                low = frontier & -frontier
                frontier ^= low
                reached = remaining & ~rows[low.bit_length() - 1]
                remaining ^= reached
                frontier |= reached
                comp |= reached
            comps.append(comp)
        return Partition.from_masks(comps)
    nbrs = g.neighbor_sets
    unvisited = set(range(n))
    comps = []
    while unvisited:
        start = unvisited.pop()
        comp = [start]
        stack = [start]
        while stack and unvisited:
            v = stack.pop()
            adj_v = nbrs[v]
            reached = unvisited.difference(adj_v)
            if reached:
                unvisited.intersection_update(adj_v)
                comp.extend(reached)
                stack.extend(reached)
        comps.append(tuple(sorted(comp)))
    return Partition(tuple(sorted(comps)))
