from itertools import combinations

import pytest

from d2conn import (
    build_graph,
    check_theorems,
    d2_connectivity_oracle,
    enumerate_connected_graphs,
    h_induced_sufficiency,
    read_graph6_stream,
    run_census,
    write_graph6,
)
from d2conn.characterize import BULL, decide_d2_connectivity
from d2conn.errors import ByteOutOfRange, Disconnected, TooLarge
from d2conn.verify import CHECKS, CensusReport, census_exhaustive, enumerate_graphs, validate_certificate

from helpers import cycle, path, petersen, union_find_components


def _count_connected(n):
    pairs = list(combinations(range(n), 2))
    total = 0
    for m in range(1 << len(pairs)):
        edges = [p for b, p in enumerate(pairs) if m >> b & 1]
        total += len(union_find_components(n, edges)) == 1
    return total


@pytest.mark.parametrize("n, count", [(1, 1), (2, 1), (3, 4), (4, 38), (5, 728)])
def test_connected_counts(n, count):
    assert sum(1 for _ in enumerate_connected_graphs(n)) == count
    assert _count_connected(n) == count


def test_enumeration_order_is_ascending_edge_mask():
    # bit k of the mask is the k-th pair in graph6 column order
    pairs = [(i, j) for j in range(1, 4) for i in range(j)]
    masks = [
        sum(1 << k for k, (i, j) in enumerate(pairs) if g.has_edge(i, j))
        for g in enumerate_graphs(4)
    ]
    assert masks == list(range(64))
    connected = [
        sum(1 << k for k, (i, j) in enumerate(pairs) if g.has_edge(i, j))
        for g in enumerate_connected_graphs(4)
    ]
    assert connected == sorted(connected)


def test_enumeration_bounds():
    with pytest.raises(TooLarge):
        list(enumerate_connected_graphs(8))


def test_check_theorems_c6():
    report = check_theorems(cycle(6))
    assert report.ok and report.counterexample is None
    assert "idempotence" in report.results


def test_check_theorems_f8(f8):
    report = check_theorems(f8.graph)
    assert report.ok
    assert report.results["idempotence"]
    assert report.results["fine-partition-validity"]


def test_check_theorems_c5():
    report = check_theorems(cycle(5))
    assert report.ok and report.branch == "diameter-2" and report.d2_connected
    assert "idempotence" not in report.results


def test_check_theorems_requires_connected():
    with pytest.raises(Disconnected):
        check_theorems(build_graph(3, [(0, 1)]))


def test_failed_report_carries_graph6():
    from d2conn.verify import TheoremReport

    report = TheoremReport(path(4), "diameter-3-plus", False, {"oracle-equivalence": False})
    assert report.counterexample == "Ch"
    assert report.failed == ["oracle-equivalence"]


def test_tampered_certificates_rejected(c4):
    from dataclasses import replace

    from d2conn.characterize import LiftedColoring, SpanningBipartite

    out = decide_d2_connectivity(c4.graph)
    assert validate_certificate(c4.graph, out)
    bad = replace(out, certificate=SpanningBipartite(0b0011, 0b1100))
    assert not validate_certificate(c4.graph, bad)
    out6 = decide_d2_connectivity(cycle(6))
    bad6 = replace(out6, certificate=LiftedColoring(0b000111, 0b111000))
    assert not validate_certificate(cycle(6), bad6)
    out7 = decide_d2_connectivity(cycle(7))
    walk = out7.certificate.walk
    from d2conn.characterize import OddWalkInQuotient

    assert not validate_certificate(cycle(7), replace(out7, certificate=OddWalkInQuotient(walk[:-1])))


def test_h_sufficiency_bull_with_pendant():
    g = build_graph(6, BULL.edges() + [(3, 5)])
    assert h_induced_sufficiency(g)
    assert d2_connectivity_oracle(g).connected


def test_h_sufficiency_examples():
    assert not h_induced_sufficiency(cycle(4))
    assert h_induced_sufficiency(cycle(7))
    assert h_induced_sufficiency(petersen())
    with pytest.raises(TooLarge):
        h_induced_sufficiency(path(11))


def test_h_sufficiency_dominated_member_ignored():
    # a C5 plus a vertex adjacent to all of it: the only induced member is covered
    g = build_graph(6, cycle(5).edges() + [(5, v) for v in range(5)])
    assert not h_induced_sufficiency(g)


def test_h_sufficiency_implies_connected_on_6_vertices():
    for g in enumerate_connected_graphs(6):
        if g.m > 9:
            continue
        if h_induced_sufficiency(g):
            assert d2_connectivity_oracle(g).connected


def test_census_up_to_five():
    report = census_exhaustive(5)
    assert report.graphs == 1 + 1 + 4 + 38 + 728
    assert not report.failed
    assert sum(report.branches.values()) == report.graphs
    assert set(report.checks) <= set(CHECKS)


def test_census_stream_branches():
    lines = [write_graph6(cycle(k)) for k in (5, 6, 7)]
    report = run_census(read_graph6_stream(lines))
    assert report.branches == {"diameter-2": 1, "diameter-3-plus": 2}
    assert not report.failed


def test_census_empty_stream():
    report = run_census(iter(()))
    assert report.to_dict(include_time=False) == CensusReport().to_dict(include_time=False)
    assert report.graphs == 0


def test_census_counts_disconnected_separately():
    report = run_census([build_graph(3, [(0, 1)]), path(3)])
    assert report.graphs == 1 and report.disconnected == 1


def test_census_jobs_independent():
    one = census_exhaustive(5, jobs=1)
    two = census_exhaustive(5, jobs=2)
    assert one.to_json(include_time=False) == two.to_json(include_time=False)
    graphs = list(enumerate_connected_graphs(5))
    a = run_census(graphs, jobs=1)
    b = run_census(graphs, jobs=2, batch=100)
    assert a.to_json(include_time=False) == b.to_json(include_time=False)


def test_census_parse_error_has_line():
    with pytest.raises(ByteOutOfRange) as info:
        run_census(read_graph6_stream(["Ch", "C~", "C !"]))
    assert info.value.line == 3
