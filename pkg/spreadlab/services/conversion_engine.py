"""
Synchronous irreversible conversion processes.

At every step each white vertex with at least ``threshold(v)`` black
neighbours turns black; all flips of a step happen simultaneously and black
vertices stay black.
"""
import logging
from typing import List, Optional, Sequence, Tuple

from spreadlab.core.errors import InvalidParameterError, PreconditionError
from spreadlab.models.graph import Graph
from spreadlab.models.rule import Rule
from spreadlab.models.trace import ConversionTimes, Trace
from spreadlab.models.vertex_set import VertexSet

logger = logging.getLogger(__name__)


def thresholds(graph: Graph, rule: Rule) -> Tuple[int, ...]:
    return tuple(rule.threshold(d) for d in graph.degrees)


def _check_seed(graph: Graph, seed: VertexSet) -> None:
    if not seed.within(graph.n):
        raise InvalidParameterError(
            f"seed set {seed.ids()} has ids outside 0..{graph.n - 1}", "invalid_seed_set"
        )


def _advance(masks: Sequence[int], thr: Sequence[int], full: int, black: int) -> int:
    """One synchronous step on raw bit masks."""
    out = black
    white = full & ~black
    while white:
        low = white & -white
        v = low.bit_length() - 1
        if (masks[v] & black).bit_count() >= thr[v]:
            out |= low
        white ^= low
    return out


def closure(masks: Sequence[int], thr: Sequence[int], full: int, black: int) -> Tuple[int, int]:
    """Fixpoint of the process from ``black``; returns (final mask, non-empty steps)."""
    steps = 0
    while True:
        nxt = _advance(masks, thr, full, black)
        if nxt == black:
            return black, steps
        black = nxt
        steps += 1


def step(graph: Graph, rule: Rule, black: VertexSet) -> VertexSet:
    _check_seed(graph, black)
    full = graph.vertices.mask
    return VertexSet(_advance(graph.masks, thresholds(graph, rule), full, black.mask))


def run(graph: Graph, rule: Rule, seed: VertexSet) -> Trace:
    _check_seed(graph, seed)
    masks = graph.masks
    thr = thresholds(graph, rule)
    full = graph.vertices.mask

    waves: List[VertexSet] = []
    black = seed.mask
    while True:
        nxt = _advance(masks, thr, full, black)
        if nxt == black:
            break
        waves.append(VertexSet(nxt & ~black))
        logger.debug(f"step {len(waves)}: {len(waves[-1])} new black vertices")
        black = nxt

    return Trace(n=graph.n, rule=rule, seed=seed, waves=waves, converted=black == full)


def converts(graph: Graph, rule: Rule, seed: VertexSet) -> bool:
    _check_seed(graph, seed)
    full = graph.vertices.mask
    final, _ = closure(graph.masks, thresholds(graph, rule), full, seed.mask)
    return final == full


def is_conversion_set(graph: Graph, rule: Rule, seed: VertexSet) -> Tuple[bool, Optional[int]]:
    """(converted, steps); steps is None when the seed does not convert."""
    trace = run(graph, rule, seed)
    return trace.converted, (trace.steps if trace.converted else None)


def conversion_times(graph: Graph, rule: Rule, seed: VertexSet) -> ConversionTimes:
    trace = run(graph, rule, seed)
    times: List[Optional[int]] = [None] * graph.n
    for v in trace.seed:
        times[v] = 0
    for t, wave in enumerate(trace.waves, start=1):
        for v in wave:
            times[v] = t
    return ConversionTimes(times=times)


def is_minimal(graph: Graph, rule: Rule, vertices: VertexSet) -> bool:
    """True iff ``vertices`` converts and no single deletion still converts."""
    if not converts(graph, rule, vertices):
        raise PreconditionError(
            f"{vertices.ids()} is not a conversion set under {rule}", "not_conversion_set", subject="set"
        )
    masks = graph.masks
    thr = thresholds(graph, rule)
    full = graph.vertices.mask
    for v in vertices:
        final, _ = closure(masks, thr, full, vertices.without(v).mask)
        if final == full:
            return False
    return True
