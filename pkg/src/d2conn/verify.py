"""Exhaustive desk-scale verification of the structural characterization.

``check_theorems`` runs every applicable property on one connected graph
against brute-force ground truth; ``run_census`` folds those reports over a
stream of graphs, optionally across worker processes.
"""

from __future__ import annotations

import json
import multiprocessing
import time
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, islice
from operator import or_
from typing import Iterable, Iterator

from .characterize import (
    COMPLETE,
    DIAMETER_2,
    DIAMETER_3_PLUS,
    TRIVIAL,
    ComponentSplit,
    DecisionOutcome,
    LiftedColoring,
    OddWalkInQuotient,
    SpanningBipartite,
    classify_h_member,
    decide_d2_connectivity,
)
from .d2 import d2_connectivity_oracle, distance2_graph
from .errors import Disconnected, EmptyGraph, TooLarge
from .fine import _fine_partition_masks, enumerate_fine_sets_bruteforce, is_fine
from .formats import write_graph6
from .graph import Graph, induced_subgraph, members, members_tuple
from .metrics import INF, bfs_distances, bipartite_certificate, diameter, is_connected

MAX_ENUM_N = 7
H_SEARCH_MAX_N = 10

CHECKS = (
    "oracle-equivalence",
    "d2-edge-identity",
    "certificate-soundness",
    "bipartite-implies-disconnected",
    "small-order-bounds",
    "fine-partition-validity",
    "distance-preservation",
    "diam-equality",
    "idempotence",
    "quotient-d2-equivalence",
    "hat-bipartite-equivalence",
    "d2-diameter-equality",
)


# -- enumeration -------------------------------------------------------------


def _edge_pairs(n: int) -> list[tuple[int, int]]:
    # graph6 column order, which also fixes the bit order of edge masks
    return [(i, j) for j in range(1, n) for i in range(j)]


@lru_cache(maxsize=None)
def _chunk_tables(n: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    # Row contributions of each 8-bit slice of the edge mask, least significant first.
    pairs = _edge_pairs(n)
    tables = []
    for start in range(0, len(pairs), 8):
        chunk = pairs[start:start + 8]
        table = []
        for val in range(1 << len(chunk)):
            rows = [0] * n
            for b, (i, j) in enumerate(chunk):
                if val >> b & 1:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
            table.append(tuple(rows))
        tables.append(tuple(table))
    return tuple(tables)


def mask_count(n: int) -> int:
    return 1 << (n * (n - 1) // 2)


def graph_rows_in_range(n: int, lo: int, hi: int) -> Iterator[tuple[int, ...]]:
    """Adjacency rows of the labeled graphs whose edge masks lie in ``[lo, hi)``."""
    tables = _chunk_tables(n)
    if not tables:
        if lo <= 0 < hi:
            yield (0,) * n
        return
    low_table = tables[0]
    width = len(low_table)
    for block in range(lo // width, -(-hi // width)):
        partial = (0,) * n
        rest = block
        for table in tables[1:]:
            partial = tuple(map(or_, partial, table[rest & 255]))
            rest >>= 8
        start = max(lo - block * width, 0)
        stop = min(hi - block * width, width)
        for t in low_table[start:stop]:
            yield tuple(map(or_, partial, t))


def _check_order(n: int) -> None:
    if n < 1:
        raise EmptyGraph(f"cannot enumerate graphs on {n} vertices")
    if n > MAX_ENUM_N:
        raise TooLarge(f"built-in enumeration stops at n={MAX_ENUM_N}, got {n}")


def enumerate_graphs(n: int) -> Iterator[Graph]:
    """Every labeled graph on ``n`` vertices, in ascending edge-mask order."""
    _check_order(n)
    for rows in graph_rows_in_range(n, 0, mask_count(n)):
        yield Graph(n, rows=rows)


def _connected_in_range(n: int, lo: int, hi: int) -> Iterator[Graph]:
    full = (1 << n) - 1
    for rows in graph_rows_in_range(n, lo, hi):
        comp = frontier = 1
        while frontier:
            reach = 0
            for u in members_tuple(frontier):
                reach |= rows[u]
            frontier = reach & ~comp
            comp |= frontier
        if comp == full:
            yield Graph(n, rows=rows)


def enumerate_connected_graphs(n: int) -> Iterator[Graph]:
    """Every labeled connected graph on ``n`` vertices, in ascending edge-mask order."""
    _check_order(n)
    return _connected_in_range(n, 0, mask_count(n))


# -- independent validators --------------------------------------------------


def distance_matrix(g: Graph) -> list[list[float]]:
    return [bfs_distances(g, s) for s in range(g.n)]


def validate_certificate(g: Graph, outcome: DecisionOutcome, dist: list[list[float]] | None = None) -> bool:
    """Check a decision's certificate against ``g`` without reusing the decision path."""
    cert = outcome.certificate
    n = g.n
    full = g.all_vertices
    if cert is None:
        if outcome.branch == TRIVIAL:
            return n == 1 and outcome.d2_connected
        if outcome.branch == COMPLETE:
            return g.m == n * (n - 1) // 2 and not outcome.d2_connected
        return outcome.branch == DIAMETER_2 and outcome.d2_connected
    if isinstance(cert, ComponentSplit):
        classes = cert.partition.classes
        if len(classes) < 2 or outcome.d2_connected:
            return False
        owner = cert.partition.class_of()
        return all(owner[u] == owner[v] for u, v in g.edges())
    if isinstance(cert, SpanningBipartite):
        a, b = members(cert.a), members(cert.b)
        if not a or not b or cert.a & cert.b or cert.a | cert.b != full or outcome.d2_connected:
            return False
        return all(g.has_edge(x, y) for x in a for y in b)
    if isinstance(cert, LiftedColoring):
        if not cert.side0 or not cert.side1 or cert.side0 & cert.side1 or cert.side0 | cert.side1 != full:
            return False
        if outcome.d2_connected:
            return False
        dist = dist if dist is not None else distance_matrix(g)
        side = [cert.side1 >> v & 1 for v in range(n)]
        return all(
            side[u] == side[v] for u in range(n) for v in range(u + 1, n) if dist[u][v] == 2
        )
    if isinstance(cert, OddWalkInQuotient):
        walk = cert.walk
        q = outcome.quotient
        if q is None or not outcome.d2_connected or len(walk) < 2:
            return False
        if walk[0] != walk[-1] or (len(walk) - 1) % 2 == 0:
            return False
        return all(q.quotient.has_edge(x, y) for x, y in zip(walk, walk[1:]))
    return False


def _coloring_is_proper(g: Graph, coloring: tuple[int, ...]) -> bool:
    return all(coloring[u] != coloring[v] for u, v in g.edges())


def _walk_is_odd_closed(g: Graph, walk: tuple[int, ...]) -> bool:
    return (
        len(walk) >= 2
        and walk[0] == walk[-1]
        and (len(walk) - 1) % 2 == 1
        and all(g.has_edge(x, y) for x, y in zip(walk, walk[1:]))
    )


def _bipartite_verdict(g: Graph) -> bool | None:
    # Bipartiteness read from a certificate that is itself verified; None
    # when the certificate does not check out.
    cert = bipartite_certificate(g)
    if cert.is_bipartite:
        return True if _coloring_is_proper(g, cert.coloring) else None
    return False if _walk_is_odd_closed(g, cert.odd_walk) else None


# -- per-graph report --------------------------------------------------------


@dataclass
class TheoremReport:
    """Outcome of every applicable check on one graph; absent checks did not apply."""

    graph: Graph
    branch: str
    d2_connected: bool
    results: dict[str, bool] = field(default_factory=dict)

    @property
    def failed(self) -> list[str]:
        return [name for name, ok in self.results.items() if not ok]

    @property
    def ok(self) -> bool:
        return all(self.results.values())

    @property
    def counterexample(self) -> str | None:
        return None if self.ok else write_graph6(self.graph)


def check_theorems(g: Graph) -> TheoremReport:
    """Run every applicable check on a connected graph.

    Ground truth is the explicitly built 2-distance graph and BFS distances;
    nothing here trusts the decision procedure's own intermediate results
    except where a check is about them (the hat graph it builds).
    """
    if g.n == 0:
        raise EmptyGraph("check_theorems on the empty graph")
    if not is_connected(g):
        raise Disconnected("check_theorems needs a connected graph")
    n = g.n
    outcome = decide_d2_connectivity(g)
    oracle = d2_connectivity_oracle(g)
    truth = oracle.connected
    r: dict[str, bool] = {}
    report = TheoremReport(g, outcome.branch, truth, r)

    r["oracle-equivalence"] = outcome.d2_connected == truth

    dist = distance_matrix(g)
    rows = g.rows
    d2_rows = [0] * n
    square_minus_g = [0] * n
    for u, du in enumerate(dist):
        for v, d in enumerate(du):
            if d == 2:
                d2_rows[u] |= 1 << v
            if u != v and d <= 2 and not rows[u] >> v & 1:
                square_minus_g[u] |= 1 << v
    d2 = distance2_graph(g)
    r["d2-edge-identity"] = list(d2.rows) == square_minus_g == d2_rows

    r["certificate-soundness"] = validate_certificate(g, outcome, dist)

    if n >= 2:
        bipartite = _bipartite_verdict(g)
        if bipartite is None:
            r["bipartite-implies-disconnected"] = False
        elif bipartite:
            r["bipartite-implies-disconnected"] = not truth

    if 2 <= n <= 4:
        r["small-order-bounds"] = not truth
    elif n == 5:
        r["small-order-bounds"] = truth == bool(classify_h_member(g))
    elif classify_h_member(g):
        r["small-order-bounds"] = truth

    if outcome.branch == DIAMETER_3_PLUS:
        _check_hat(g, outcome, dist, truth, r)
    return report


def _check_hat(g: Graph, outcome: DecisionOutcome, dist, truth: bool, r: dict[str, bool]) -> None:
    q = outcome.quotient
    classes = q.partition.masks
    hat = q.quotient

    valid = all(is_fine(g, c).fine for c in classes)
    if valid and g.n <= 12:
        brute = enumerate_fine_sets_bruteforce(g)
        valid = sorted(brute) == sorted(classes)
    r["fine-partition-validity"] = valid

    hat_dist = distance_matrix(hat)
    owner = q.class_of
    preserved = True
    for x in range(g.n):
        for y in range(x + 1, g.n):
            if owner[x] == owner[y]:
                ok = dist[x][y] <= 2
            else:
                ok = dist[x][y] == hat_dist[owner[x]][owner[y]]
            if not ok:
                preserved = False
                break
        if not preserved:
            break
    r["distance-preservation"] = preserved

    diam_g = max(max(row) for row in dist)
    diam_hat = max(max(row) for row in hat_dist)
    r["diam-equality"] = diam_g == diam_hat and diam_g >= 3

    if diam_hat >= 3 and diam_hat != INF:
        r["idempotence"] = len(_fine_partition_masks(hat.rows, hat.n)) == hat.n
    else:
        r["idempotence"] = False

    hat_oracle = d2_connectivity_oracle(hat)
    r["quotient-d2-equivalence"] = hat_oracle.connected == truth
    hat_bipartite = _bipartite_verdict(hat)
    r["hat-bipartite-equivalence"] = hat_bipartite is not None and hat_bipartite == (not truth)

    if truth and hat_oracle.connected:
        r["d2-diameter-equality"] = diameter(distance2_graph(g)) == diameter(distance2_graph(hat))


# -- family H sufficiency ----------------------------------------------------

# (order, size) pairs of the finite family members searched for
_H_SHAPES = {(5, 5), (5, 6), (6, 9), (7, 7), (9, 9)}


def h_induced_sufficiency(g: Graph) -> bool:
    """Whether ``g`` has an induced family member that no single neighbourhood covers.

    Searches the members on at most 9 vertices (C5, C7, C9, bull, house, apex
    graph).  When the answer is true the 2-distance graph of ``g`` is
    connected.
    """
    if g.n > H_SEARCH_MAX_N:
        raise TooLarge(f"induced search is limited to {H_SEARCH_MAX_N} vertices")
    if not is_connected(g):
        raise Disconnected("h_induced_sufficiency needs a connected graph")
    rows = g.rows
    for size in range(5, min(9, g.n) + 1):
        for combo in combinations(range(g.n), size):
            s = 0
            for v in combo:
                s |= 1 << v
            m = sum((rows[v] & s).bit_count() for v in combo) // 2
            if (size, m) not in _H_SHAPES:
                continue
            if any(rows[x] & s == s for x in range(g.n) if not s >> x & 1):
                continue
            sub, _ = induced_subgraph(g, s)
            if classify_h_member(sub):
                return True
    return False


# -- census ------------------------------------------------------------------


@dataclass
class CensusReport:
    graphs: int = 0
    disconnected: int = 0
    branches: dict[str, int] = field(default_factory=dict)
    d2_connected: int = 0
    d2_disconnected: int = 0
    checks: dict[str, dict[str, int]] = field(default_factory=dict)
    failures: list[tuple[str, tuple[str, ...]]] = field(default_factory=list)
    wall_time: float = 0.0

    def add(self, report: TheoremReport) -> None:
        self.graphs += 1
        self.branches[report.branch] = self.branches.get(report.branch, 0) + 1
        if report.d2_connected:
            self.d2_connected += 1
        else:
            self.d2_disconnected += 1
        for name, ok in report.results.items():
            slot = self.checks.setdefault(name, {"passed": 0, "failed": 0})
            slot["passed" if ok else "failed"] += 1
        if not report.ok:
            self.failures.append((report.counterexample, tuple(report.failed)))

    def merge(self, other: CensusReport) -> CensusReport:
        out = CensusReport(
            graphs=self.graphs + other.graphs,
            disconnected=self.disconnected + other.disconnected,
            d2_connected=self.d2_connected + other.d2_connected,
            d2_disconnected=self.d2_disconnected + other.d2_disconnected,
            failures=sorted(self.failures + other.failures),
            wall_time=max(self.wall_time, other.wall_time),
        )
        for src in (self.branches, other.branches):
            for k, v in src.items():
                out.branches[k] = out.branches.get(k, 0) + v
        for src in (self.checks, other.checks):
            for name, slot in src.items():
                dst = out.checks.setdefault(name, {"passed": 0, "failed": 0})
                dst["passed"] += slot["passed"]
                dst["failed"] += slot["failed"]
        return out

    @property
    def failed(self) -> bool:
        return bool(self.failures)

    def to_dict(self, include_time: bool = True) -> dict:
        out = {
            "graphs": self.graphs,
            "disconnected_skipped": self.disconnected,
            "branches": dict(sorted(self.branches.items())),
            "d2_connected": self.d2_connected,
            "d2_disconnected": self.d2_disconnected,
            "checks": {k: self.checks[k] for k in sorted(self.checks)},
            "failures": [{"graph6": g6, "checks": list(names)} for g6, names in sorted(self.failures)],
        }
        if include_time:
            out["wall_time_s"] = round(self.wall_time, 3)
        return out

    def to_json(self, include_time: bool = True) -> str:
        return json.dumps(self.to_dict(include_time), indent=2, sort_keys=True)


def _census_of(graphs: Iterable[Graph]) -> CensusReport:
    report = CensusReport()
    for g in graphs:
        if not is_connected(g):
            report.disconnected += 1
            continue
        report.add(check_theorems(g))
    return report


def _census_rows(batch: list[tuple[int, ...]]) -> CensusReport:
    return _census_of(Graph(len(rows), rows=rows) for rows in batch)


def _census_range(task: tuple[int, int, int]) -> CensusReport:
    n, lo, hi = task
    return _census_of(_connected_in_range(n, lo, hi))


def _fold(parts: Iterable[CensusReport]) -> CensusReport:
    total = CensusReport()
    for part in parts:
        total = total.merge(part)
    return total


def run_census(source: Iterable[Graph], jobs: int = 1, batch: int = 2000) -> CensusReport:
    """Apply ``check_theorems`` to every connected graph of ``source``.

    Disconnected graphs are counted but not checked.  The aggregate does not
    depend on ``jobs``: partial reports merge by addition and failures are
    sorted.
    """
    start = time.perf_counter()
    if jobs <= 1:
        report = _census_of(source)
        report.failures.sort()
    else:
        it = iter(source)
        batches = iter(lambda: [g.rows for g in islice(it, batch)], [])
        with multiprocessing.Pool(jobs) as pool:
            report = _fold(pool.imap_unordered(_census_rows, batches))
    report.wall_time = time.perf_counter() - start
    return report


def census_exhaustive(max_n: int, jobs: int = 1, min_n: int = 1) -> CensusReport:
    """Census over every labeled connected graph with ``min_n <= n <= max_n``.

    Workers enumerate their own edge-mask ranges, so only reports cross
    process boundaries.
    """
    _check_order(max_n)
    start = time.perf_counter()
    tasks = []
    for n in range(max(min_n, 1), max_n + 1):
        total = mask_count(n)
        step = max(total // 64, 256)
        tasks += [(n, lo, min(lo + step, total)) for lo in range(0, total, step)]
    if jobs <= 1:
        report = _fold(map(_census_range, tasks))
    else:
        with multiprocessing.Pool(jobs) as pool:
            report = _fold(pool.imap_unordered(_census_range, tasks))
    report.wall_time = time.perf_counter() - start
    return report
