"""Immutable simple undirected graphs over the vertices ``0..n-1``.

Vertex subsets (``VertexSet``) are plain ``int`` bit masks: bit ``v`` is set
iff vertex ``v`` belongs to the set.  Each graph exposes its adjacency both as
bit rows (``Graph.rows``) and as sorted neighbour tuples
(``Graph.neighbors``); whichever form a graph was built from is stored, the
other is derived on first use.  Bit rows are the fast path for small graphs;
neighbour tuples keep large sparse graphs linear in size.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import EmptySet, IndexOutOfRange, SelfLoop

VertexSet = int


def vset(vertices: Iterable[int]) -> VertexSet:
    """Bit mask holding ``vertices``."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def _members_slow(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


_SMALL = [tuple(_members_slow(m)) for m in range(1 << 10)]


def members(mask: VertexSet) -> list[int]:
    """Vertices of ``mask`` in ascending order."""
    if mask < 1024:
        return list(_SMALL[mask])
    return _members_slow(mask)


def members_tuple(mask: VertexSet) -> tuple[int, ...]:
    if mask < 1024:
        return _SMALL[mask]
    return tuple(_members_slow(mask))


class Graph:
    """A finite simple undirected graph; never mutated after construction."""

    __slots__ = ("n", "_rows", "_nbrs", "_sets", "_m")

    def __init__(
        self,
        n: int,
        rows: tuple[int, ...] | None = None,
        nbrs: tuple[tuple[int, ...], ...] | None = None,
    ):
        # Use build_graph / from_rows / from_neighbors; this trusts its input.
        self.n = n
        self._rows = rows
        self._nbrs = nbrs
        self._sets = None
        self._m = None

    @classmethod
    def from_rows(cls, rows: Sequence[int]) -> Graph:
        """Graph whose adjacency bit rows are ``rows`` (assumed symmetric, loop-free)."""
        return cls(len(rows), rows=tuple(rows))

    @classmethod
    def from_neighbors(cls, nbrs: Sequence[Sequence[int]]) -> Graph:
        """Graph from sorted, symmetric, loop-free neighbour lists."""
        return cls(len(nbrs), nbrs=tuple(tuple(row) for row in nbrs))

    @property
    def rows(self) -> tuple[int, ...]:
        if self._rows is None:
            self._rows = tuple(vset(row) for row in self._nbrs)
        return self._rows

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        if self._nbrs is None:
            self._nbrs = tuple(tuple(members(r)) for r in self._rows)
        return self._nbrs

    @property
    def neighbor_sets(self) -> tuple[frozenset[int], ...]:
        if self._sets is None:
            self._sets = tuple(frozenset(row) for row in self.adjacency)
        return self._sets

    @property
    def m(self) -> int:
        if self._m is None:
            if self._rows is not None:
                total = sum(r.bit_count() for r in self._rows)
            else:
                total = sum(len(row) for row in self._nbrs)
            self._m = total // 2
        return self._m

    @property
    def all_vertices(self) -> VertexSet:
        return (1 << self.n) - 1

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        if self._nbrs is not None:
            return len(self._nbrs[v])
        return self._rows[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        if self._rows is not None:
            return bool(self._rows[u] >> v & 1)
        return v in self.neighbor_sets[u]

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u, row in enumerate(self.adjacency) for v in row if u < v]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        if self.n != other.n:
            return False
        if self._rows is not None and other._rows is not None:
            return self._rows == other._rows
        return self.adjacency == other.adjacency

    def __hash__(self) -> int:
        return hash((self.n, self.adjacency))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Graph on ``n`` vertices with the given edges; duplicates are collapsed.

    Raises ``IndexOutOfRange`` for an endpoint outside ``0..n-1`` and
    ``SelfLoop`` for a pair ``(v, v)``.
    """
    if n < 0:
        raise IndexOutOfRange(f"negative vertex count {n}")
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise IndexOutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}")
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, nbrs=tuple(tuple(sorted(s)) for s in adj))


def complement(g: Graph) -> Graph:
    full = g.all_vertices
    return Graph(g.n, rows=tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.rows)))


def induced_subgraph(g: Graph, s: VertexSet) -> tuple[Graph, list[int]]:
    """Subgraph induced by ``s``, reindexed in ascending vertex order.

    Returns the subgraph and the index map: position ``i`` holds the original
    vertex that became vertex ``i``.
    """
    verts = members(s & g.all_vertices)
    if not verts:
        raise EmptySet("induced subgraph of an empty vertex set")
    pos = {v: i for i, v in enumerate(verts)}
    nbrs = tuple(tuple(pos[u] for u in g.adjacency[v] if u in pos) for v in verts)
    return Graph(len(verts), nbrs=nbrs), verts
