"""Command-line front end: ``d2conn analyze | d2 | contract | convert | verify``.

Exit codes: 0 success, 1 usage/IO/parse error, 2 verification failure
(a counterexample from ``verify`` or an oracle disagreement in ``analyze``).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .characterize import (
    DIAMETER_3_PLUS,
    ComponentSplit,
    DecisionOutcome,
    LiftedColoring,
    OddWalkInQuotient,
    SpanningBipartite,
    decide_d2_connectivity,
)
from .d2 import d2_connectivity_oracle, distance2_graph
from .errors import DiameterTooSmall, Disconnected, EmptyGraph, GraphError
from .fine import hat_graph
from .formats import (
    LabeledGraph,
    parse_edge_list,
    read_graph6_stream,
    write_dot,
    write_edge_list,
    write_graph6,
)
from .graph import members
from .metrics import diameter, is_connected
from .verify import census_exhaustive, run_census

FORMATS = ("graph6", "edges", "dot")
INPUT_FORMATS = ("graph6", "edges")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _color_enabled() -> bool:
    return os.environ.get("D2_COLOR", "auto") != "never" and sys.stdout.isatty()


def _style(text: str, code: str) -> str:
    return f"\033[{code}m{text}\033[0m" if _color_enabled() else text


def detect_format(path: str, explicit: str | None) -> str:
    if explicit:
        return explicit
    return "graph6" if path.endswith(".g6") else "edges"


def read_labeled(path: str, fmt: str | None = None) -> LabeledGraph:
    fmt = detect_format(path, fmt)
    text = Path(path).read_text(encoding="utf-8")
    if fmt == "edges":
        return parse_edge_list(text)
    graphs = list(read_graph6_stream(text.splitlines()))
    if len(graphs) != 1:
        raise UsageError(f"{path}: expected exactly one graph6 line, found {len(graphs)}")
    return LabeledGraph.numbered(graphs[0])


def render(lg: LabeledGraph, fmt: str, partition=None) -> str:
    if fmt == "graph6":
        return write_graph6(lg.graph) + "\n"
    if fmt == "edges":
        return write_edge_list(lg)
    return write_dot(lg, partition)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# -- analyze -----------------------------------------------------------------


@dataclass
class AnalysisReport:
    n: int
    m: int
    connected: bool
    diameter: int | None
    branch: str
    d2_connected: bool
    certificate: dict | None
    fine_partition: list[list[str]] | None = None
    quotient_edges: list[list[str]] | None = None
    oracle_agreement: bool | None = None

    def to_dict(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if v is not None or k == "certificate"}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        verdict = (
            _style("connected", "32") if self.d2_connected else _style("disconnected", "31")
        )
        lines = [
            f"vertices: {self.n}",
            f"edges: {self.m}",
            f"connected: {'yes' if self.connected else 'no'}",
        ]
        if self.diameter is not None:
            lines.append(f"diameter: {self.diameter}")
        lines += [f"branch: {self.branch}", f"D2 is {verdict}"]
        cert = self.certificate
        if cert is not None:
            kind = cert["type"]
            body = {k: v for k, v in cert.items() if k != "type"}
            lines.append(f"certificate: {kind}")
            for key in sorted(body):
                lines.append(f"  {key}: {_fmt(body[key])}")
        if self.fine_partition is not None:
            lines.append("maximal Fine sets: " + " ".join(_fmt(c) for c in self.fine_partition))
            lines.append("quotient edges: " + " ".join(f"{a}-{b}" for a, b in self.quotient_edges))
        if self.oracle_agreement is not None:
            lines.append(f"oracle agrees: {'yes' if self.oracle_agreement else 'NO'}")
        return "\n".join(lines) + "\n"


def _fmt(value) -> str:
    if isinstance(value, list):
        return "{" + ",".join(_fmt(v) for v in value) + "}"
    return str(value)


def _class_name(cls: Sequence[str]) -> str:
    return "+".join(cls)


def certificate_dict(lg: LabeledGraph, outcome: DecisionOutcome) -> dict | None:
    cert = outcome.certificate
    names = lg.names
    if cert is None:
        return None
    if isinstance(cert, ComponentSplit):
        return {"type": "component-split", "components": [names(c) for c in cert.partition.classes]}
    if isinstance(cert, SpanningBipartite):
        return {"type": "spanning-bipartite", "a": names(members(cert.a)), "b": names(members(cert.b))}
    if isinstance(cert, LiftedColoring):
        return {
            "type": "lifted-coloring",
            "side0": names(members(cert.side0)),
            "side1": names(members(cert.side1)),
        }
    if isinstance(cert, OddWalkInQuotient):
        classes = outcome.quotient.partition.classes
        return {
            "type": "odd-walk-in-quotient",
            "walk": [_class_name(names(classes[i])) for i in cert.walk],
        }
    raise TypeError(f"unknown certificate {cert!r}")


def analyze(lg: LabeledGraph, with_oracle: bool = False) -> AnalysisReport:
    g = lg.graph
    if g.n == 0:
        raise EmptyGraph("input graph has no vertices")
    outcome = decide_d2_connectivity(g)
    connected = is_connected(g)
    report = AnalysisReport(
        n=g.n,
        m=g.m,
        connected=connected,
        diameter=diameter(g) if connected else None,
        branch=outcome.branch,
        d2_connected=outcome.d2_connected,
        certificate=certificate_dict(lg, outcome),
    )
    if outcome.branch == DIAMETER_3_PLUS:
        q = outcome.quotient
        classes = [lg.names(c) for c in q.partition.classes]
        report.fine_partition = classes
        report.quotient_edges = [
            [_class_name(classes[i]), _class_name(classes[j])] for i, j in q.quotient.edges()
        ]
    if with_oracle:
        report.oracle_agreement = d2_connectivity_oracle(g).connected == outcome.d2_connected
    return report


def cmd_analyze(args) -> int:
    lg = read_labeled(args.file, args.format)
    report = analyze(lg, args.oracle)
    sys.stdout.write(report.to_json() if args.json else report.to_text())
    if report.oracle_agreement is False:
        print("oracle disagrees with the structural decision", file=sys.stderr)
        return 2
    return 0


# -- d2 / contract / convert ---------------------------------------------------


def _default_output_format(path: str, explicit: str | None, input_format: str | None) -> str:
    return explicit or detect_format(path, input_format)


def cmd_d2(args) -> int:
    lg = read_labeled(args.file, args.input_format)
    d2 = LabeledGraph(distance2_graph(lg.graph), lg.labels)
    _emit(render(d2, _default_output_format(args.file, args.format, args.input_format)), args.output)
    return 0


def cmd_contract(args) -> int:
    lg = read_labeled(args.file, args.input_format)
    g = lg.graph
    if g.n == 0 or not is_connected(g):
        raise Disconnected("contract needs a connected graph")
    diam = diameter(g)
    if diam < 3:
        raise DiameterTooSmall(
            f"diameter is {diam}; maximal Fine sets are only unique from diameter 3 on, "
            "so the quotient is undefined"
        )
    q = hat_graph(g)
    classes = [lg.names(c) for c in q.partition.classes]
    fmt = _default_output_format(args.file, args.format, args.input_format)
    if fmt == "dot":
        _emit(write_dot(lg, q.partition), args.output)
        return 0
    quotient = LabeledGraph(q.quotient, tuple(_class_name(c) for c in classes))
    _emit(render(quotient, fmt), args.output)
    if args.output:
        sidecar = {"classes": classes, "quotient_labels": list(quotient.labels)}
        Path(args.output + ".partition.json").write_text(
            json.dumps(sidecar, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    return 0


def cmd_convert(args) -> int:
    if args.from_format not in INPUT_FORMATS:
        raise UsageError(f"cannot read format {args.from_format!r}")
    lg = read_labeled(args.input, args.from_format)
    _emit(render(lg, args.to_format), args.output)
    return 0


# -- verify --------------------------------------------------------------------


def cmd_verify(args) -> int:
    if args.graph6:
        with open(args.graph6, encoding="utf-8") as fh:
            report = run_census(read_graph6_stream(fh), jobs=args.jobs)
    else:
        report = census_exhaustive(args.max_n, jobs=args.jobs)
    if args.json:
        sys.stdout.write(report.to_json() + "\n")
    else:
        lines = [f"graphs checked: {report.graphs}"]
        if report.disconnected:
            lines.append(f"disconnected inputs skipped: {report.disconnected}")
        for branch, count in sorted(report.branches.items()):
            lines.append(f"  {branch}: {count}")
        lines.append(f"D2 connected: {report.d2_connected}  disconnected: {report.d2_disconnected}")
        for name in sorted(report.checks):
            slot = report.checks[name]
            lines.append(f"  {name}: {slot['passed']} passed, {slot['failed']} failed")
        status = _style("FAIL", "31") if report.failed else _style("ok", "32")
        lines.append(f"failures: {len(report.failures)} [{status}]")
        for g6, names in report.failures[:20]:
            lines.append(f"  {g6}: {', '.join(names)}")
        lines.append(f"wall time: {report.wall_time:.2f}s")
        sys.stdout.write("\n".join(lines) + "\n")
    return 2 if report.failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="d2conn", description="Connectivity of 2-distance graphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="decide whether D2(G) is connected, with a certificate")
    p.add_argument("--format", choices=INPUT_FORMATS)
    p.add_argument("--json", action="store_true")
    p.add_argument("--oracle", action="store_true", help="cross-check against the explicit D2 graph")
    p.add_argument("file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("d2", help="write the 2-distance graph")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.add_argument("--format", choices=FORMATS, help="output format")
    p.add_argument("--input-format", choices=INPUT_FORMATS)
    p.set_defaults(func=cmd_d2)

    p = sub.add_parser("contract", help="write the quotient by maximal Fine sets")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.add_argument("--format", choices=FORMATS, help="output format")
    p.add_argument("--input-format", choices=INPUT_FORMATS)
    p.set_defaults(func=cmd_contract)

    p = sub.add_parser("convert", help="convert between graph formats")
    p.add_argument("--from", dest="from_format", required=True, choices=INPUT_FORMATS)
    p.add_argument("--to", dest="to_format", required=True, choices=FORMATS)
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("verify", help="exhaustive theorem census")
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--graph6", help="check the graphs of a graph6 file instead of enumerating")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, UsageError, OSError, UnicodeDecodeError) as exc:
        print(f"d2conn {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
