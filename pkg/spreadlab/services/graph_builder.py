import logging
import random
from enum import Enum
from typing import Dict, Iterable, List, Sequence, Set, Tuple

import networkx as nx

from spreadlab.core.errors import GraphFormatError, InvalidParameterError
from spreadlab.models.graph import Graph, MultipartiteSpec, ProductVertex

logger = logging.getLogger(__name__)


class GraphFamily(str, Enum):
    PATH = "path"
    CYCLE = "cycle"
    COMPLETE = "complete"
    STAR = "star"
    COMPLETE_MULTIPARTITE = "complete_multipartite"
    GNP = "gnp"
    EMPTY = "empty"
    TREE = "tree"


# CLI spelling -> family
FAMILY_ALIASES: Dict[str, GraphFamily] = {
    "multipartite": GraphFamily.COMPLETE_MULTIPARTITE,
    **{f.value: f for f in GraphFamily},
}


def make_graph(n: int, edges: Iterable[Tuple[int, int]]) -> Graph:
    """
    Build a simple graph on ids 0..n-1. Duplicate and reversed pairs collapse
    into one edge; out-of-range ids and self-loops are rejected with the index
    of the offending pair.
    """
    if n < 0:
        raise InvalidParameterError(f"vertex count must be non-negative, got {n}")
    rows: List[Set[int]] = [set() for _ in range(n)]
    for i, (u, v) in enumerate(edges):
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(
                f"edge {i} ({u}, {v}) has an id outside 0..{n - 1}",
                "id_out_of_range", edge_index=i,
            )
        if u == v:
            raise GraphFormatError(f"edge {i} ({u}, {v}) is a self-loop", "self_loop", edge_index=i)
        rows[u].add(v)
        rows[v].add(u)
    return Graph(n=n, adj=tuple(tuple(sorted(r)) for r in rows))


def path(n: int) -> Graph:
    if n < 1:
        raise InvalidParameterError(f"path needs n >= 1, got {n}")
    return make_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidParameterError(f"cycle needs n >= 3, got {n}")
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    if n < 1:
        raise InvalidParameterError(f"complete graph needs n >= 1, got {n}")
    return make_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def star(n: int) -> Graph:
    """Centre 0 joined to leaves 1..n-1."""
    if n < 2:
        raise InvalidParameterError(f"star needs n >= 2, got {n}")
    return make_graph(n, [(0, v) for v in range(1, n)])


def empty(n: int) -> Graph:
    if n < 0:
        raise InvalidParameterError(f"empty graph needs n >= 0, got {n}")
    return make_graph(n, [])


def complete_multipartite(spec: MultipartiteSpec) -> Graph:
    edges = []
    for i in range(spec.m):
        for j in range(i + 1, spec.m):
            edges.extend((u, v) for u in spec.block(i) for v in spec.block(j))
    return make_graph(spec.n, edges)


def gnp(n: int, p_num: int, p_den: int, seed: int) -> Graph:
    """
    G(n, p) with p = p_num / p_den.

    Pairs (u, v), u < v, are visited in lexicographic order and each is kept
    iff ``random.Random(seed).randrange(p_den) < p_num`` for the next draw.
    """
    if n < 0:
        raise InvalidParameterError(f"gnp needs n >= 0, got {n}")
    if p_den < 1 or not 0 <= p_num <= p_den:
        raise InvalidParameterError(f"gnp needs 0 <= p_num <= p_den, p_den >= 1; got {p_num}/{p_den}")
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.randrange(p_den) < p_num]
    return make_graph(n, edges)


def random_tree(n: int, seed: int) -> Graph:
    """Uniform labelled tree decoded from a seeded Prufer sequence."""
    if n < 1:
        raise InvalidParameterError(f"tree needs n >= 1, got {n}")
    if n == 1:
        return make_graph(1, [])
    rng = random.Random(seed)
    sequence = [rng.randrange(n) for _ in range(n - 2)]
    tree = nx.from_prufer_sequence(sequence)
    return make_graph(n, tree.edges())


def _ints(raw: str, family: str) -> List[int]:
    try:
        return [int(x) for x in raw.split(",") if x.strip()]
    except ValueError:
        raise InvalidParameterError(f"bad parameters for {family}: {raw!r}", "invalid_params")


def generate(family: GraphFamily | str, params: Sequence[int] | str | MultipartiteSpec) -> Graph:
    """
    Named-family generator.

    ``params`` is either the already-split integer list or the raw parameter
    text of the family grammar (``"4"``, ``"3,2,1"``, ``"8,1/2,7"``).
    """
    fam = FAMILY_ALIASES.get(family.value if isinstance(family, GraphFamily) else str(family).strip().lower())
    if fam is None:
        raise InvalidParameterError(f"unknown graph family {family!r}", "invalid_family")

    if fam == GraphFamily.COMPLETE_MULTIPARTITE:
        if isinstance(params, MultipartiteSpec):
            spec = params
        else:
            sizes = _ints(params, fam.value) if isinstance(params, str) else list(params)
            try:
                spec = MultipartiteSpec(parts=tuple(sizes))
            except ValueError as e:
                raise InvalidParameterError(f"invalid multipartite spec {sizes}: {e}", "invalid_params")
        return complete_multipartite(spec)

    if fam == GraphFamily.GNP:
        if isinstance(params, str):
            parts = [x.strip() for x in params.split(",")]
            if len(parts) != 3 or "/" not in parts[1]:
                raise InvalidParameterError(f"gnp expects N,p_num/p_den,seed; got {params!r}", "invalid_params")
            num, _, den = parts[1].partition("/")
            values = _ints(f"{parts[0]},{num},{den},{parts[2]}", fam.value)
        else:
            values = list(params)
        if len(values) != 4:
            raise InvalidParameterError("gnp expects (n, p_num, p_den, seed)", "invalid_params")
        return gnp(*values)

    values = _ints(params, fam.value) if isinstance(params, str) else list(params)
    expected = 2 if fam == GraphFamily.TREE else 1
    if len(values) != expected:
        raise InvalidParameterError(f"{fam.value} expects {expected} integer parameter(s), got {values}", "invalid_params")
    builders = {
        GraphFamily.PATH: path,
        GraphFamily.CYCLE: cycle,
        GraphFamily.COMPLETE: complete,
        GraphFamily.STAR: star,
        GraphFamily.EMPTY: empty,
        GraphFamily.TREE: random_tree,
    }
    return builders[fam](*values)


def parse_family(text: str) -> Graph:
    """Family grammar: ``name:params``, e.g. ``cycle:4`` or ``multipartite:3,2,1``."""
    name, sep, params = text.partition(":")
    if not sep or not params.strip():
        raise InvalidParameterError(f"family must look like name:params, got {text!r}", "invalid_family")
    return generate(name, params)


def _flatten_product(product: nx.Graph, g: Graph, h: Graph) -> Graph:
    """Relabel a networkx product on (g, h) pairs to flattened ids g * |V(H)| + h."""
    edges = [
        (ProductVertex.flatten(a, b, h.n), ProductVertex.flatten(c, d, h.n))
        for (a, b), (c, d) in product.edges()
    ]
    return make_graph(g.n * h.n, edges)


def cartesian_product(g: Graph, h: Graph) -> Graph:
    product = _flatten_product(nx.cartesian_product(g.to_networkx(), h.to_networkx()), g, h)
    logger.debug(f"cartesian product {g.n}x{h.n} built with {product.edge_count} edges")
    return product


def tensor_product(g: Graph, h: Graph) -> Graph:
    product = _flatten_product(nx.tensor_product(g.to_networkx(), h.to_networkx()), g, h)
    logger.debug(f"tensor product {g.n}x{h.n} built with {product.edge_count} edges")
    return product


def product_pairs(vertices: Iterable[int], right_order: int) -> List[Tuple[int, int]]:
    out = []
    for vid in vertices:
        pv = ProductVertex.unflatten(vid, right_order)
        out.append((pv.g, pv.h))
    return out


def induced_subgraph(g: Graph, keep: Iterable[int]) -> Tuple[Graph, List[int]]:
    """Subgraph on ``keep`` relabelled 0..r-1 in increasing id order; returns (graph, new->old)."""
    mapping = sorted(set(keep))
    index = {old: new for new, old in enumerate(mapping)}
    edges = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    return make_graph(len(mapping), edges), mapping
