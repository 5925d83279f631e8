"""
Exact minimum conversion sets by exhaustive search.

Candidates are enumerated by cardinality and, within a cardinality, in
lexicographic order of their sorted ids; forced vertices are part of every
candidate. Batches of candidates are simulated together as boolean matrices.
"""
import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from spreadlab.core.config import settings
from spreadlab.core.errors import PreconditionError, SolverLimitError
from spreadlab.models.graph import Graph
from spreadlab.models.results import SolveResult
from spreadlab.models.rule import Rule
from spreadlab.models.vertex_set import VertexSet
from spreadlab.services import conversion_engine as engine

logger = logging.getLogger(__name__)


def forced_vertices(graph: Graph, rule: Rule) -> VertexSet:
    """Vertices that can never be converted and so belong to every conversion set."""
    if rule.is_majority:
        return graph.isolated
    return VertexSet.of(v for v, d in enumerate(graph.degrees) if d < rule.k)


def threshold_lower_bound(graph: Graph, rule: Rule) -> int:
    forced = forced_vertices(graph, rule)
    thr = engine.thresholds(graph, rule)
    free = [thr[v] for v in range(graph.n) if v not in forced]
    if not free:
        return len(forced)
    return max(len(forced), min(graph.n, min(free)))


def _batch_converts(adj: np.ndarray, thr: np.ndarray, black: np.ndarray) -> np.ndarray:
    """Row-wise: does each seed row of ``black`` convert the whole graph?"""
    while True:
        counts = black.astype(np.int32) @ adj
        nxt = black | (counts >= thr)
        if np.array_equal(nxt, black):
            return black.all(axis=1)
        black = nxt


def _chunks(free: Sequence[int], r: int, size: int) -> Iterator[List[Tuple[int, ...]]]:
    combos = itertools.combinations(free, r)
    while True:
        chunk = list(itertools.islice(combos, size))
        if not chunk:
            return
        yield chunk


class ExactSolver:
    def __init__(self, limit: Optional[int] = None, workers: Optional[int] = None,
                 chunk_size: Optional[int] = None):
        self.limit = settings.SOLVER_LIMIT if limit is None else limit
        self.workers = settings.WORKERS if workers is None else workers
        self.chunk_size = settings.SOLVER_CHUNK_SIZE if chunk_size is None else chunk_size

    def _first_hit(self, adj: np.ndarray, thr: np.ndarray, n: int, forced: List[int],
                   chunk: List[Tuple[int, ...]]) -> Optional[int]:
        black = np.zeros((len(chunk), n), dtype=bool)
        if forced:
            black[:, forced] = True
        if chunk and chunk[0]:
            idx = np.array(chunk, dtype=np.intp)
            black[np.arange(len(chunk))[:, None], idx] = True
        hits = _batch_converts(adj, thr, black)
        return int(np.argmax(hits)) if hits.any() else None

    def min_conversion(self, graph: Graph, rule: Rule, budget: Optional[int] = None) -> SolveResult:
        """
        Minimum conversion set (dynamo under majority) with the lexicographically
        least witness. ``budget`` caps the cardinality searched.
        """
        if graph.n > self.limit:
            raise SolverLimitError(
                f"graph has {graph.n} vertices, solver limit is {self.limit}",
                "solver_limit",
            )
        forced = forced_vertices(graph, rule)
        forced_ids = forced.ids()
        free = [v for v in range(graph.n) if v not in forced]
        adj = graph.adjacency_matrix
        thr = np.array(engine.thresholds(graph, rule), dtype=np.int32)
        top = graph.n if budget is None else min(graph.n, budget)

        explored = 0
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            for size in range(len(forced), top + 1):
                logger.info(f"searching cardinality {size} ({rule})")
                chunks = _chunks(free, size - len(forced), self.chunk_size)
                while True:
                    group = list(itertools.islice(chunks, self.workers))
                    if not group:
                        break
                    results = pool.map(
                        lambda c: self._first_hit(adj, thr, graph.n, forced_ids, c), group
                    )
                    for chunk, hit in zip(group, results):
                        if hit is None:
                            explored += len(chunk)
                            continue
                        witness = forced | VertexSet.of(chunk[hit])
                        explored += hit + 1
                        logger.info(f"minimum {size} found after {explored} candidates")
                        return SolveResult(
                            rule=rule, found=True, size=size, witness=witness, forced=forced,
                            explored=explored, budget=budget, limit=self.limit,
                        )
                    logger.debug(f"cardinality {size}: {explored} candidates so far")

        logger.info(f"no conversion set within budget {budget}")
        return SolveResult(
            rule=rule, found=False, forced=forced, explored=explored, budget=budget, limit=self.limit,
        )

    def minimum_witness(self, graph: Graph, rule: Rule) -> VertexSet:
        result = self.min_conversion(graph, rule)
        # the full vertex set always converts, so an unbudgeted search succeeds
        return result.witness


def shrink_to_minimal(graph: Graph, rule: Rule, vertices: VertexSet) -> VertexSet:
    """
    Greedy minimalisation: scan ids upwards, drop the first vertex whose removal
    still converts, and restart the scan after every deletion.
    """
    if not engine.converts(graph, rule, vertices):
        raise PreconditionError(
            f"{vertices.ids()} is not a conversion set under {rule}", "not_conversion_set", subject="set"
        )
    masks = graph.masks
    thr = engine.thresholds(graph, rule)
    full = graph.vertices.mask
    current = vertices.mask
    shrinking = True
    while shrinking:
        shrinking = False
        for v in VertexSet(current):
            trial = current & ~(1 << v)
            final, _ = engine.closure(masks, thr, full, trial)
            if final == full:
                current = trial
                shrinking = True
                break
    return VertexSet(current)


def min_conversion(graph: Graph, rule: Rule, budget: Optional[int] = None) -> SolveResult:
    return ExactSolver().min_conversion(graph, rule, budget)
