"""Connectivity of 2-distance graphs, decided structurally and checked by brute force."""

from .characterize import (
    BRANCHES,
    ComponentSplit,
    DecisionOutcome,
    HMembership,
    LiftedColoring,
    OddWalkInQuotient,
    SpanningBipartite,
    classify_h_member,
    decide_d2_connectivity,
    lift_coloring,
    spanning_bipartite_witness,
)
from .d2 import d2_connectivity_oracle, distance2_graph, power_graph
from .errors import GraphError, InternalConsistencyError, ParseError
from .fine import (
    FineCheck,
    QuotientGraph,
    contract,
    enumerate_fine_sets_bruteforce,
    hat_graph,
    is_fine,
    maximal_fine_partition,
    minimal_module,
)
from .formats import (
    LabeledGraph,
    parse_edge_list,
    parse_graph6,
    read_graph6_stream,
    write_dot,
    write_edge_list,
    write_graph6,
)
from .graph import Graph, VertexSet, build_graph, complement, induced_subgraph, members, vset
from .metrics import (
    INF,
    BipartitenessResult,
    Partition,
    bfs_distances,
    bipartite_certificate,
    complement_components,
    connected_components,
    diameter,
    is_connected,
)
from .verify import (
    CensusReport,
    TheoremReport,
    census_exhaustive,
    check_theorems,
    enumerate_connected_graphs,
    h_induced_sufficiency,
    run_census,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
