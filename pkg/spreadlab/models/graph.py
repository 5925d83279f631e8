from functools import cached_property
from typing import List, Optional, Tuple

import networkx as nx
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from spreadlab.models.vertex_set import VertexSet


class Graph(BaseModel):
    """
    Immutable simple undirected graph on vertex ids 0..n-1.

    ``adj[u]`` is the strictly increasing tuple of neighbours of ``u``.
    Build instances through ``graph_builder.make_graph`` rather than by hand.
    """
    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=0)
    adj: Tuple[Tuple[int, ...], ...]

    @model_validator(mode="after")
    def check_simple(self) -> "Graph":
        if len(self.adj) != self.n:
            raise ValueError(f"adjacency has {len(self.adj)} rows for {self.n} vertices")
        for u, row in enumerate(self.adj):
            for i, v in enumerate(row):
                if not 0 <= v < self.n:
                    raise ValueError(f"neighbour {v} of {u} out of range")
                if v == u:
                    raise ValueError(f"self-loop at {u}")
                if i and row[i - 1] >= v:
                    raise ValueError(f"adjacency of {u} not strictly increasing")
        for u, row in enumerate(self.adj):
            for v in row:
                if u not in self.masks_of(v):
                    raise ValueError(f"edge {u}-{v} is not symmetric")
        return self

    def masks_of(self, v: int) -> VertexSet:
        return VertexSet(self.masks[v])

    @cached_property
    def masks(self) -> Tuple[int, ...]:
        """Neighbourhood of every vertex as a bit mask."""
        out = []
        for row in self.adj:
            m = 0
            for v in row:
                m |= 1 << v
            out.append(m)
        return tuple(out)

    @cached_property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(len(row) for row in self.adj)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @cached_property
    def edges(self) -> Tuple[Tuple[int, int], ...]:
        return tuple((u, v) for u, row in enumerate(self.adj) for v in row if u < v)

    @property
    def edge_count(self) -> int:
        return sum(self.degrees) // 2

    @property
    def vertices(self) -> VertexSet:
        return VertexSet.full(self.n)

    @cached_property
    def isolated(self) -> VertexSet:
        return VertexSet.of(v for v, d in enumerate(self.degrees) if d == 0)

    @cached_property
    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int32)
        for u, v in self.edges:
            a[u, v] = 1
            a[v, u] = 1
        return a

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g


class MultipartiteSpec(BaseModel):
    """
    Part sizes of a complete multipartite graph, kept in non-increasing order.

    Part ``i`` occupies the contiguous id block ``offsets[i] .. offsets[i+1]-1``.
    """
    model_config = ConfigDict(frozen=True)

    parts: Tuple[int, ...]

    @field_validator("parts")
    def check_parts(cls, v: Tuple[int, ...]) -> Tuple[int, ...]:
        if len(v) < 2:
            raise ValueError("a complete multipartite graph needs at least 2 parts")
        if any(p < 1 for p in v):
            raise ValueError("every part must contain at least one vertex")
        return tuple(sorted(v, reverse=True))

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def m(self) -> int:
        return len(self.parts)

    @cached_property
    def offsets(self) -> Tuple[int, ...]:
        out = [0]
        for p in self.parts:
            out.append(out[-1] + p)
        return tuple(out)

    def block(self, i: int) -> range:
        return range(self.offsets[i], self.offsets[i + 1])

    def block_set(self, i: int) -> VertexSet:
        return VertexSet.of(self.block(i))

    def part_of(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range")
        for i in range(self.m):
            if v < self.offsets[i + 1]:
                return i
        raise AssertionError("unreachable")

    def block_degree(self, i: int) -> int:
        return self.n - self.parts[i]


class ProductVertex(BaseModel):
    """Vertex (g, h) of a product graph; flattened id is g * |V(H)| + h."""
    model_config = ConfigDict(frozen=True)

    g: int = Field(ge=0)
    h: int = Field(ge=0)

    def flat(self, right_order: int) -> int:
        return self.g * right_order + self.h

    @staticmethod
    def flatten(g: int, h: int, right_order: int) -> int:
        return g * right_order + h

    @classmethod
    def unflatten(cls, vid: int, right_order: int) -> "ProductVertex":
        g, h = divmod(vid, right_order)
        return cls(g=g, h=h)


class StructureReport(BaseModel):
    degrees: List[int]
    isolated: VertexSet
    components: List[List[int]]
    connected: bool
    bipartite: bool
    # 0/1 colour per vertex when bipartite
    coloring: Optional[List[int]] = None
    # odd cycle v0..v_2l when not bipartite; consecutive ids and (v_2l, v0) are edges
    odd_cycle: Optional[List[int]] = None


class DoubleCoverReport(BaseModel):
    applicable: bool
    components: int
    component_sizes: List[int]
    component_edges: List[int]
    degree_multisets_match: bool
    holds: bool
