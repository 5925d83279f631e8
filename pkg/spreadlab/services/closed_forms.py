"""
Exact minimum conversion sets of complete multipartite graphs.

Witness sets use the contiguous block layout of ``MultipartiteSpec``; where a
choice exists, blocks are taken in block-index order and partial blocks as an
id prefix.
"""
import logging
from typing import List

from spreadlab.core.errors import InvalidParameterError
from spreadlab.models.graph import MultipartiteSpec
from spreadlab.models.results import MultipartiteAnswer
from spreadlab.models.vertex_set import VertexSet

logger = logging.getLogger(__name__)


def _check_k(k: int) -> None:
    if k < 1:
        raise InvalidParameterError(f"k must be at least 1, got {k}", "invalid_rule")


def low_degree_blocks(spec: MultipartiteSpec, k: int) -> List[int]:
    """Indices of blocks whose vertices have degree below k."""
    return [i for i in range(spec.m) if spec.block_degree(i) < k]


def degree_partition(spec: MultipartiteSpec, k: int) -> VertexSet:
    """X: every vertex of degree less than k, always a union of whole blocks."""
    _check_k(k)
    out = VertexSet()
    for i in low_degree_blocks(spec, k):
        out = out | spec.block_set(i)
    return out


def multipartite_min_k(spec: MultipartiteSpec, k: int) -> int:
    _check_k(k)
    if spec.n <= k:
        return spec.n
    return max(len(degree_partition(spec, k)), k)


def multipartite_min_k_witness(spec: MultipartiteSpec, k: int) -> MultipartiteAnswer:
    _check_k(k)
    n = spec.n
    if n <= k:
        return MultipartiteAnswer(value=n, witness=VertexSet.full(n), predicted_T=0)

    x = degree_partition(spec, k)
    if k <= len(x):
        return MultipartiteAnswer(value=len(x), witness=x, predicted_T=1)

    # n > k > |X|: top X up with whole blocks, then a strict prefix of the first misfit
    witness = x
    remaining = k - len(x)
    low = set(low_degree_blocks(spec, k))
    for i in range(spec.m):
        if remaining == 0:
            break
        if i in low:
            continue
        block = spec.block(i)
        if len(block) <= remaining:
            witness = witness | spec.block_set(i)
            remaining -= len(block)
        else:
            witness = witness | VertexSet.of(block[:remaining])
            remaining = 0
    logger.debug(f"min_k witness for {spec.parts}, k={k}: {witness.ids()}")
    return MultipartiteAnswer(value=k, witness=witness, predicted_T=2)


def multipartite_dynamo(spec: MultipartiteSpec) -> MultipartiteAnswer:
    value = (spec.n - spec.parts[0] + 1) // 2
    start = spec.offsets[1]
    witness = VertexSet.of(range(start, start + value))
    return MultipartiteAnswer(value=value, witness=witness, predicted_T=2)
