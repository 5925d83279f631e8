import logging
from typing import Dict, List, Optional

import networkx as nx

from spreadlab.models.graph import DoubleCoverReport, Graph, StructureReport
from spreadlab.services.graph_builder import complete, tensor_product

logger = logging.getLogger(__name__)


def _odd_cycle(nxg: nx.Graph, component: List[int]) -> Optional[List[int]]:
    """
    Odd cycle through the first same-level edge of a BFS from the smallest
    vertex, or None when the component is bipartite.
    """
    root = component[0]
    level = nx.single_source_shortest_path_length(nxg, root)
    parent = dict(nx.bfs_predecessors(nxg, root))
    clash = next(
        ((u, v) for u in component for v in sorted(nxg[u]) if u < v and level[u] == level[v]),
        None,
    )
    if clash is None:
        return None
    u, v = clash
    left, right = [u], [v]
    while left[-1] != right[-1]:
        left.append(parent[left[-1]])
        right.append(parent[right[-1]])
    return left + right[-2::-1]


def analyze(graph: Graph) -> StructureReport:
    nxg = graph.to_networkx()
    components = sorted(sorted(c) for c in nx.connected_components(nxg))

    bipartite = nx.is_bipartite(nxg)
    coloring = None
    odd_cycle = None
    if bipartite:
        raw: Dict[int, int] = nx.bipartite.color(nxg)
        coloring = [0] * graph.n
        for comp in components:
            base = raw[comp[0]]
            for v in comp:
                coloring[v] = raw[v] ^ base
    else:
        for comp in components:
            odd_cycle = _odd_cycle(nxg, comp)
            if odd_cycle is not None:
                break

    return StructureReport(
        degrees=list(graph.degrees),
        isolated=graph.isolated,
        components=components,
        connected=len(components) <= 1,
        bipartite=bipartite,
        coloring=coloring,
        odd_cycle=odd_cycle,
    )


def check_double_cover(graph: Graph) -> DoubleCoverReport:
    """
    Structural check that G x K2 splits into two copies of a connected
    bipartite G: component count, sizes, edge counts and degree multisets.
    """
    report = analyze(graph)
    applicable = graph.n >= 1 and report.connected and report.bipartite

    cover = tensor_product(graph, complete(2))
    nxc = cover.to_networkx()
    comps = sorted(sorted(c) for c in nx.connected_components(nxc))
    sizes = [len(c) for c in comps]
    edges = [nxc.subgraph(c).number_of_edges() for c in comps]
    target = sorted(graph.degrees)
    match = all(sorted(cover.degree(v) for v in c) == target for c in comps)

    holds = (
        applicable
        and len(comps) == 2
        and all(s == graph.n for s in sizes)
        and all(e == graph.edge_count for e in edges)
        and match
    )
    if applicable and not holds:
        logger.warning(f"double cover check failed: components={sizes} edges={edges}")
    return DoubleCoverReport(
        applicable=applicable,
        components=len(comps),
        component_sizes=sizes,
        component_edges=edges,
        degree_multisets_match=match,
        holds=holds,
    )
