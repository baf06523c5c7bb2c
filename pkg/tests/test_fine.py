from itertools import combinations

import pytest
from hypothesis import assume, given, settings

from d2conn import (
    build_graph,
    contract,
    diameter,
    enumerate_fine_sets_bruteforce,
    hat_graph,
    is_fine,
    maximal_fine_partition,
    minimal_module,
    vset,
)
from d2conn.errors import DiameterTooSmall, Disconnected, EmptySet, PartitionMismatch, TooLarge
from d2conn.fine import is_module
from d2conn.metrics import Partition

from helpers import (
    connected_graphs,
    cycle,
    floyd,
    graphs,
    is_module_brute,
    mask,
    names_of,
    neighbourhood,
    path,
)


def test_diamond_bd_fine(diamond):
    check = is_fine(diamond.graph, mask(diamond, "bd"))
    assert check.fine
    assert names_of(diamond, check.external_neighborhood) == "ac"


def test_f8_ab_fine(f8):
    check = is_fine(f8.graph, mask(f8, "ab"))
    assert check.fine
    assert names_of(f8, check.external_neighborhood) == "cd"


def test_f8_abc_not_fine(f8):
    a = mask(f8, "abc")
    check = is_fine(f8.graph, a)
    assert not check.fine
    x, w = check.violation
    assert a >> x & 1 and not a >> w & 1
    assert not f8.graph.has_edge(x, w)
    assert names_of(f8, check.external_neighborhood) == "dx"
    g = f8.graph
    assert names_of(f8, g.rows[f8.index("c")] & ~a) == "dx"
    assert names_of(f8, g.rows[f8.index("a")] & ~a) == "d"


def test_whole_vertex_set_not_fine(f8):
    check = is_fine(f8.graph, f8.graph.all_vertices)
    assert not check.fine and check.violation is None


def test_fine_empty_set():
    with pytest.raises(EmptySet):
        is_fine(path(3), 0)


def test_minimal_module_p4(p4):
    assert minimal_module(p4.graph, mask(p4, "ac")) == p4.graph.all_vertices


def test_minimal_module_f8(f8):
    assert names_of(f8, minimal_module(f8.graph, mask(f8, "ax"))) == "abcxy"


def test_minimal_module_singleton(f8):
    v = mask(f8, "v")
    assert minimal_module(f8.graph, v) == v


def test_minimal_module_empty():
    with pytest.raises(EmptySet):
        minimal_module(path(3), 0)


def _class_names(lg, p):
    return sorted(names_of(lg, vset(c)) for c in p.classes)


def test_partition_p4(p4):
    assert maximal_fine_partition(p4.graph).classes == ((0,), (1,), (2,), (3,))


def test_partition_f8(f8):
    assert _class_names(f8, maximal_fine_partition(f8.graph)) == ["abcxy", "d", "u", "v"]


def test_partition_c6():
    assert len(maximal_fine_partition(cycle(6))) == 6


def test_partition_errors(c4):
    with pytest.raises(DiameterTooSmall):
        maximal_fine_partition(c4.graph)
    with pytest.raises(Disconnected):
        maximal_fine_partition(build_graph(4, [(0, 1), (2, 3)]))
    with pytest.raises(DiameterTooSmall):
        hat_graph(c4.graph)


def test_greedy_growth_fails_on_f8(f8):
    # {a,b} sits inside a 5-element maximal Fine set but no 3-element Fine set
    g = f8.graph
    ab = mask(f8, "ab")
    assert all(not is_fine(g, ab | 1 << w).fine for w in range(g.n) if not ab >> w & 1)


def test_contract_singletons_identity(f8):
    g = f8.graph
    q = contract(g, Partition.of(g.n, [[v] for v in range(g.n)]))
    assert q.quotient == g


def test_contract_f8_is_p4(f8):
    q = contract(f8.graph, maximal_fine_partition(f8.graph))
    assert q.quotient == path(4)
    assert q.class_of == (0, 0, 0, 1, 0, 0, 2, 3)


def test_contract_c4_single_edge(c4):
    q = contract(c4.graph, Partition.of(4, [[0, 2], [1, 3]]))
    assert q.quotient.n == 2 and q.quotient.edges() == [(0, 1)]


def test_contract_internal_edges_no_loop():
    q = contract(path(3), Partition.of(3, [[0, 1], [2]]))
    assert q.quotient.edges() == [(0, 1)]


def test_contract_mismatch(c4):
    with pytest.raises(PartitionMismatch):
        contract(c4.graph, Partition.of(3, [[0, 1, 2]]))


def test_hat_examples(p4, f8):
    assert hat_graph(p4.graph).quotient == path(4)
    assert hat_graph(f8.graph).quotient == path(4)
    assert hat_graph(cycle(7)).quotient == cycle(7)


def test_bruteforce_c4(c4):
    found = [names_of(c4, a) for a in enumerate_fine_sets_bruteforce(c4.graph)]
    assert sorted(found) == ["ac", "bd"]


def test_bruteforce_diamond(diamond):
    found = [names_of(diamond, a) for a in enumerate_fine_sets_bruteforce(diamond.graph)]
    assert sorted(found) == ["abc", "acd", "bd"]


def test_bruteforce_f8(f8):
    found = enumerate_fine_sets_bruteforce(f8.graph)
    assert mask(f8, "abcxy") in found
    ab = mask(f8, "ab")
    from d2conn.fine import fine_subsets

    triples = [a for a in fine_subsets(f8.graph) if a & ab == ab and a.bit_count() == 3]
    assert triples == []


def test_bruteforce_too_large():
    with pytest.raises(TooLarge):
        enumerate_fine_sets_bruteforce(path(13))
    assert len(enumerate_fine_sets_bruteforce(path(13), max_n=13)) == 13


@settings(max_examples=60)
@given(graphs(min_n=1, max_n=8))
def test_fine_iff_module_with_external_neighbour(g):
    n = g.n
    for a in range(1, 1 << n):
        s = {v for v in range(n) if a >> v & 1}
        ext = neighbourhood(g, s)
        literal = bool(ext) and all(set(g.neighbors(x)) - s == ext for x in s)
        bridge = is_module_brute(g, s) and bool(ext)
        assert literal == bridge
        assert is_fine(g, a).fine == literal
        assert is_module(g, a) == is_module_brute(g, s)


@given(graphs(min_n=2, max_n=8))
def test_minimal_module_is_minimal(g):
    n = g.n
    for x, y in combinations(range(min(n, 5)), 2):
        seed = 1 << x | 1 << y
        out = minimal_module(g, seed)
        assert out & seed == seed
        assert is_module_brute(g, {v for v in range(n) if out >> v & 1})
        extra = [v for v in range(n) if out >> v & 1 and not seed >> v & 1]
        for k in range(len(extra)):
            for sub in combinations(extra, k):
                s = {x, y, *sub}
                assert not is_module_brute(g, s)


def _diam3(g):
    if g.n < 4:
        return False
    d = floyd(g)
    return max(max(r) for r in d) >= 3


@given(connected_graphs(min_n=4, max_n=10))
def test_partition_matches_bruteforce(g):
    assume(_diam3(g))
    p = maximal_fine_partition(g)
    brute = enumerate_fine_sets_bruteforce(g)
    assert sorted(p.masks) == sorted(brute)
    owners = [sum(1 for b in brute if b >> v & 1) for v in range(g.n)]
    assert owners == [1] * g.n


@given(connected_graphs(min_n=4, max_n=10))
def test_quotient_preserves_distances(g):
    assume(_diam3(g))
    q = hat_graph(g)
    d, dq = floyd(g), floyd(q.quotient)
    own = q.class_of
    for x in range(g.n):
        for y in range(g.n):
            if own[x] == own[y]:
                assert d[x][y] <= 2
            else:
                assert d[x][y] == dq[own[x]][own[y]]
    assert diameter(q.quotient) == diameter(g)


@given(connected_graphs(min_n=4, max_n=10))
def test_hat_is_idempotent(g):
    assume(_diam3(g))
    hat = hat_graph(g).quotient
    assert len(maximal_fine_partition(hat)) == hat.n
    assert hat_graph(hat).quotient == hat


@given(connected_graphs(min_n=4, max_n=10))
def test_quotient_adjacency_is_uniform(g):
    assume(_diam3(g))
    q = hat_graph(g)
    own = q.class_of
    for x in range(g.n):
        for y in range(g.n):
            if own[x] != own[y]:
                assert g.has_edge(x, y) == q.quotient.has_edge(own[x], own[y])
