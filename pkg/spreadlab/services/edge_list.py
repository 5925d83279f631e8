"""
Edge-list text format.

    # comments and blank lines are ignored
    n m
    u v        (m lines, 0-indexed ids, whitespace separated)

Duplicate or reversed edges are rejected; every error carries its line number.
"""
import logging
from pathlib import Path
from typing import List, Optional, Set, Tuple

from spreadlab.core.errors import GraphFormatError
from spreadlab.models.graph import Graph
from spreadlab.services.graph_builder import make_graph

logger = logging.getLogger(__name__)


def _parse_pair(tokens: List[str], line_no: int, what: str, code: str) -> Tuple[int, int]:
    if len(tokens) != 2:
        raise GraphFormatError(f"line {line_no}: expected two integers for {what}", code, line=line_no)
    try:
        return int(tokens[0]), int(tokens[1])
    except ValueError:
        raise GraphFormatError(f"line {line_no}: {what} must be integers", code, line=line_no)


def parse_edge_list(text: str) -> Graph:
    header: Optional[Tuple[int, int]] = None
    edges: List[Tuple[int, int]] = []
    seen: Set[Tuple[int, int]] = set()

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if header is None:
            n, m = _parse_pair(tokens, line_no, "header 'n m'", "malformed_header")
            if n < 0 or m < 0:
                raise GraphFormatError(f"line {line_no}: negative header value", "malformed_header", line=line_no)
            header = (n, m)
            continue

        n, m = header
        if len(edges) == m:
            raise GraphFormatError(f"line {line_no}: more than the {m} declared edges", "edge_count_mismatch", line=line_no)
        u, v = _parse_pair(tokens, line_no, "edge 'u v'", "malformed_edge")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"line {line_no}: id out of range 0..{n - 1}", "id_out_of_range", line=line_no)
        if u == v:
            raise GraphFormatError(f"line {line_no}: self-loop at {u}", "self_loop", line=line_no)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"line {line_no}: duplicate edge {u} {v}", "duplicate_edge", line=line_no)
        seen.add(key)
        edges.append((u, v))

    if header is None:
        raise GraphFormatError("missing header line 'n m'", "malformed_header", line=1)
    if len(edges) != header[1]:
        raise GraphFormatError(
            f"declared {header[1]} edges but found {len(edges)}", "edge_count_mismatch",
        )
    return make_graph(header[0], edges)


def parse_graph_file(path: str | Path) -> Graph:
    path = Path(path)
    logger.info(f"Reading edge list from {path}")
    return parse_edge_list(path.read_text())


def format_edge_list(graph: Graph) -> str:
    lines = [f"{graph.n} {graph.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in graph.edges)
    return "\n".join(lines) + "\n"
