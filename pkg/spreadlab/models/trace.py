from typing import List, Optional

from pydantic import BaseModel, computed_field

from spreadlab.models.rule import Rule
from spreadlab.models.vertex_set import VertexSet


class Trace(BaseModel):
    """
    Evolution of the black set from ``seed`` to the fixpoint.

    ``waves[t-1]`` holds the vertices newly coloured at step ``t``; only
    non-empty waves are stored, so ``steps == len(waves)``.
    """
    n: int
    rule: Rule
    seed: VertexSet
    waves: List[VertexSet]
    converted: bool

    @computed_field
    @property
    def steps(self) -> int:
        return len(self.waves)

    @property
    def final(self) -> VertexSet:
        black = self.seed
        for wave in self.waves:
            black = black | wave
        return black


class ConversionTimes(BaseModel):
    # step at which each vertex turns black, 0 for the seed, None for never
    times: List[Optional[int]]

    def level_sets(self) -> List[VertexSet]:
        """Vertices grouped by conversion time, index 0 being the seed."""
        finite = [t for t in self.times if t is not None]
        top = max(finite) if finite else -1
        levels = [VertexSet() for _ in range(top + 1)]
        for v, t in enumerate(self.times):
            if t is not None:
                levels[t] = levels[t].with_vertex(v)
        return levels

    @property
    def never(self) -> VertexSet:
        return VertexSet.of(v for v, t in enumerate(self.times) if t is None)
