"""
Resolution of raw command-line values into domain objects.
"""
from typing import List

from spreadlab.core.errors import InvalidParameterError
from spreadlab.models.graph import Graph
from spreadlab.models.rule import Rule
from spreadlab.models.run_config import RunConfig
from spreadlab.models.vertex_set import VertexSet
from spreadlab.services.edge_list import parse_graph_file
from spreadlab.services.graph_builder import parse_family


def parse_rule(text: str) -> Rule:
    raw = text.strip().lower()
    if raw == "majority":
        return Rule.majority()
    if raw.startswith("k:"):
        raw = raw[2:]
    try:
        k = int(raw)
    except ValueError:
        raise InvalidParameterError(f"rule must be 'majority', 'k:K' or 'K'; got {text!r}", "invalid_rule")
    if k < 1:
        raise InvalidParameterError(f"k must be at least 1, got {k}", "invalid_rule")
    return Rule.k_threshold(k)


def parse_id_list(text: str) -> VertexSet:
    """Comma list of ids and inclusive ranges, e.g. ``0,2-4``. Empty text is the empty set."""
    ids: List[int] = []
    for token in (t.strip() for t in text.split(",")):
        if not token:
            continue
        try:
            if "-" in token:
                lo, hi = (int(x) for x in token.split("-", 1))
                if lo > hi:
                    raise ValueError
                ids.extend(range(lo, hi + 1))
            else:
                ids.append(int(token))
        except ValueError:
            raise InvalidParameterError(f"bad id or range {token!r} in {text!r}", "invalid_seed_set")
        if ids and min(ids) < 0:
            raise InvalidParameterError(f"negative id in {text!r}", "invalid_seed_set")
    return VertexSet.of(ids)


def load_graph_source(text: str) -> Graph:
    """A family spec (``cycle:4``) or ``file:PATH``."""
    if text.startswith("file:"):
        return parse_graph_file(text[len("file:"):])
    return parse_family(text)


def get_graph(config: RunConfig) -> Graph:
    if config.graph_file is not None:
        return parse_graph_file(config.graph_file)
    return parse_family(config.family)


def check_ids(graph: Graph, vertices: VertexSet, flag: str) -> VertexSet:
    if not vertices.within(graph.n):
        raise InvalidParameterError(
            f"{flag} {vertices.ids()} has ids outside 0..{graph.n - 1}", "invalid_seed_set"
        )
    return vertices
