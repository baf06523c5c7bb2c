"""Fixtures and brute-force oracles shared by the test modules.

The oracles here deliberately avoid the library's kernels: distances come
from Floyd-Warshall over an adjacency matrix, components from union-find,
modules from checking every outside vertex against every member.
"""

from __future__ import annotations

from itertools import combinations

from hypothesis import strategies as st

from d2conn import LabeledGraph, build_graph, parse_edge_list

INF = float("inf")

F8_TEXT = """\
a b
a c
a d
b c
b d
c d
c x
x y
y d
x d
d u
u v
"""
C4_TEXT = "a b\nb c\nc d\nd a\n"
DIAMOND_TEXT = "a b\nb c\nc d\nd a\nb d\n"
P4_TEXT = "a b\nb c\nc d\n"


def labeled(text: str) -> LabeledGraph:
    return parse_edge_list(text)


def mask(lg: LabeledGraph, names: str) -> int:
    out = 0
    for name in names:
        out |= 1 << lg.index(name)
    return out


def names_of(lg: LabeledGraph, m: int) -> str:
    return "".join(sorted(lg.labels[v] for v in range(lg.graph.n) if m >> v & 1))


def cycle(n: int):
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int):
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int):
    return build_graph(n, combinations(range(n), 2))


def star(leaves: int):
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(10, outer + spokes + inner)


# -- oracles -----------------------------------------------------------------


def matrix(g) -> list[list[bool]]:
    n = g.n
    adj = [[False] * n for _ in range(n)]
    for u, v in g.edges():
        adj[u][v] = adj[v][u] = True
    return adj


def floyd(g) -> list[list[float]]:
    n = g.n
    adj = matrix(g)
    d = [[0 if i == j else (1 if adj[i][j] else INF) for j in range(n)] for i in range(n)]
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            if dik == INF:
                continue
            di = d[i]
            for j in range(n):
                if dik + dk[j] < di[j]:
                    di[j] = dik + dk[j]
    return d


def union_find_components(n: int, edges) -> set[frozenset[int]]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    groups: dict[int, set[int]] = {}
    for v in range(n):
        groups.setdefault(find(v), set()).add(v)
    return {frozenset(c) for c in groups.values()}


def d2_pairs(g) -> set[tuple[int, int]]:
    d = floyd(g)
    return {(u, v) for u in range(g.n) for v in range(u + 1, g.n) if d[u][v] == 2}


def is_module_brute(g, s: set[int]) -> bool:
    adj = matrix(g)
    return all(len({adj[x][a] for a in s}) == 1 for x in range(g.n) if x not in s)


def neighbourhood(g, s: set[int]) -> set[int]:
    return {w for v in s for w in g.neighbors(v)} - s


def has_odd_cycle_brute(g) -> bool:
    """True iff some vertex returns to itself by a walk of odd length."""
    n = g.n
    adj = matrix(g)
    for s in range(n):
        seen = {(s, 0)}
        stack = [(s, 0)]
        while stack:
            v, p = stack.pop()
            for w in range(n):
                if adj[v][w] and (w, 1 - p) not in seen:
                    seen.add((w, 1 - p))
                    stack.append((w, 1 - p))
        if (s, 1) in seen:
            return True
    return False


def partition_sets(p) -> set[frozenset[int]]:
    return {frozenset(c) for c in p.classes}


# -- hypothesis strategies ---------------------------------------------------


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 8):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return build_graph(n, [p for p, keep in zip(pairs, chosen) if keep])


@st.composite
def connected_graphs(draw, min_n: int = 1, max_n: int = 8):
    n = draw(st.integers(min_n, max_n))
    edges = set()
    for v in range(1, n):
        edges.add((draw(st.integers(0, v - 1)), v))
    pairs = list(combinations(range(n), 2))
    if pairs:
        edges.update(draw(st.lists(st.sampled_from(pairs), max_size=2 * n)))
    return build_graph(n, edges)
