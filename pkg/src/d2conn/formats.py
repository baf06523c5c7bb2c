"""graph6, whitespace edge lists, and DOT export.

graph6 layout: the vertex count N(n) (one byte ``n + 63`` for n <= 62,
otherwise ``~`` followed by three 6-bit bytes), then the upper triangle of
the adjacency matrix in column order x(0,1), x(0,2), x(1,2), x(0,3), ...,
six bits per byte, most significant first, each byte offset by 63 and the
last one zero-padded.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import (
    BadHeader,
    ByteOutOfRange,
    PartitionMismatch,
    SelfLoop,
    TooLarge,
    TooManyTokens,
    TrailingGarbage,
    TruncatedBitstream,
)
from .graph import Graph, build_graph
from .metrics import Partition

GRAPH6_HEADER = ">>graph6<<"
GRAPH6_MAX_N = 258047

# ColorBrewer Set3
PALETTE = (
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
    "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f",
)


@dataclass(frozen=True)
class LabeledGraph:
    """A graph plus distinct string names; ``labels[i]`` names vertex ``i``."""

    graph: Graph
    labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.labels) != self.graph.n:
            raise ValueError(f"{len(self.labels)} labels for {self.graph.n} vertices")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("vertex labels must be distinct")

    @classmethod
    def numbered(cls, g: Graph) -> LabeledGraph:
        return cls(g, tuple(str(v) for v in range(g.n)))

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def names(self, vertices: Iterable[int]) -> list[str]:
        return [self.labels[v] for v in vertices]


def parse_graph6(text: str) -> Graph:
    line = text.rstrip("\r\n")
    if line.startswith(GRAPH6_HEADER):
        line = line[len(GRAPH6_HEADER):]
    elif line.startswith(">>"):
        raise BadHeader(f"unrecognised header in {line[:12]!r}")
    bad = next((c for c in line if not 63 <= ord(c) <= 126), None)
    if bad is not None:
        raise ByteOutOfRange(f"character {bad!r} outside the graph6 range 63..126")
    data = line.encode("ascii")
    if not data:
        raise TruncatedBitstream("missing vertex count")
    if data[0] < 126:
        n = data[0] - 63
        body = data[1:]
    else:
        if len(data) >= 2 and data[1] == 126:
            raise TooLarge(f"graph6 sizes above {GRAPH6_MAX_N} are not supported")
        if len(data) < 4:
            raise TruncatedBitstream("vertex count field is cut short")
        n = (data[1] - 63) << 12 | (data[2] - 63) << 6 | (data[3] - 63)
        body = data[4:]
    nbits = n * (n - 1) // 2
    need = -(-nbits // 6)
    if len(body) < need:
        raise TruncatedBitstream(f"expected {need} adjacency bytes for n={n}, got {len(body)}")
    if len(body) > need:
        raise TrailingGarbage(f"{len(body) - need} bytes beyond the adjacency data")
    bits = "".join(format(b - 63, "06b") for b in body)
    if "1" in bits[nbits:]:
        raise TrailingGarbage("nonzero padding bits")
    rows = [0] * n
    offset = 0
    for j in range(1, n):
        column = bits[offset:offset + j]
        offset += j
        if "1" not in column:
            continue
        col = int(column[::-1], 2)
        rows[j] |= col
        i = 0
        while col:
            if col & 1:
                rows[i] |= 1 << j
            col >>= 1
            i += 1
    return Graph.from_rows(rows)


def write_graph6(g: Graph) -> str:
    n = g.n
    if n > GRAPH6_MAX_N:
        raise TooLarge(f"graph6 supports at most {GRAPH6_MAX_N} vertices, got {n}")
    if n <= 62:
        head = chr(n + 63)
    else:
        head = "~" + "".join(chr((n >> shift & 63) + 63) for shift in (12, 6, 0))
    rows = g.rows
    bits = "".join(format(rows[j] & ((1 << j) - 1), f"0{j}b")[::-1] for j in range(1, n))
    bits += "0" * (-len(bits) % 6)
    return head + "".join(chr(int(bits[k:k + 6], 2) + 63) for k in range(0, len(bits), 6))


def read_graph6_stream(lines: Iterable[str]) -> Iterator[Graph]:
    """One graph per non-blank line; the header may only open the first line."""
    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line:
            continue
        if lineno > 1 and line.startswith(">>"):
            raise BadHeader("header allowed on the first line only", line=lineno)
        try:
            yield parse_graph6(line)
        except (BadHeader, ByteOutOfRange, TruncatedBitstream, TrailingGarbage, TooLarge) as exc:
            raise type(exc)(str(exc), line=lineno) from None


def parse_edge_list(text: str) -> LabeledGraph:
    """Whitespace edge list; one-token lines declare isolated vertices.

    Vertices are numbered by first appearance.  Blank lines and lines
    starting with ``#`` are ignored.
    """
    index: dict[str, int] = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0].startswith("#"):
            continue
        if len(tokens) > 2:
            raise TooManyTokens(f"expected 1 or 2 tokens, got {len(tokens)}", line=lineno)
        ids = []
        for tok in tokens:
            v = index.get(tok)
            if v is None:
                v = index[tok] = len(index)
            ids.append(v)
        if len(ids) == 2:
            if ids[0] == ids[1]:
                raise SelfLoop(f"line {lineno}: self-loop at {tokens[0]!r}")
            edges.append((ids[0], ids[1]))
    return LabeledGraph(build_graph(len(index), edges), tuple(index))


def write_edge_list(lg: LabeledGraph) -> str:
    """Edge lines in index order, then one line per isolated vertex."""
    g = lg.graph
    lab = lg.labels
    out = [f"{lab[u]} {lab[v]}" for u, v in g.edges()]
    out += [lab[v] for v in range(g.n) if g.degree(v) == 0]
    return "\n".join(out) + "\n" if out else ""


def _quote(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def write_dot(lg: LabeledGraph, partition: Partition | None = None) -> str:
    """Deterministic DOT text; partition classes become coloured clusters."""
    g = lg.graph
    out = ["graph G {"]
    if partition is not None:
        if partition.n != g.n:
            raise PartitionMismatch(f"partition covers {partition.n} vertices, graph has {g.n}")
        partition = Partition.of(g.n, partition.classes)
        for k, cls in enumerate(partition.classes):
            color = PALETTE[k % len(PALETTE)]
            out.append(f"  subgraph cluster_{k} {{")
            out.append(f'    style=filled; fillcolor="{color}"; color="{color}";')
            for v in cls:
                out.append(f"    n{v} [label={_quote(lg.labels[v])}];")
            out.append("  }")
    else:
        for v in range(g.n):
            out.append(f"  n{v} [label={_quote(lg.labels[v])}];")
    for u, v in g.edges():
        out.append(f"  n{u} -- n{v};")
    out.append("}")
    return "\n".join(out) + "\n"
