from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field, model_validator

from spreadlab.models.results import ProductKind
from spreadlab.models.rule import Rule
from spreadlab.models.vertex_set import VertexSet


class Command(str, Enum):
    GEN = "gen"
    SIMULATE = "simulate"
    SOLVE = "solve"
    BOUND = "bound"
    VERIFY = "verify"


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"


class BoundChoice(str, Enum):
    K_PRODUCT = "k-product"
    SLAB_UNION = "slab-union"
    SLAB_UNION_REDUCED = "slab-union-reduced"
    SIDE = "side"
    GENERAL = "general"


class RunConfig(BaseModel):
    command: Command
    format: OutputFormat = OutputFormat.TEXT
    rule: Optional[Rule] = None

    # single-graph source
    graph_file: Optional[str] = None
    family: Optional[str] = None
    seed: Optional[VertexSet] = None
    times: bool = False

    # solver
    budget: Optional[int] = Field(default=None, ge=0)
    limit: Optional[int] = Field(default=None, ge=0)
    workers: Optional[int] = Field(default=None, ge=1)

    # products
    product: Optional[ProductKind] = None
    left: Optional[str] = None
    right: Optional[str] = None
    construction: Optional[BoundChoice] = None
    left_set: Optional[VertexSet] = None
    right_set: Optional[VertexSet] = None

    # verify sweep
    scope: Optional[str] = None
    max_n: int = Field(default=8, ge=2)
    max_product: int = Field(default=36, ge=1)
    solver_cap: int = Field(default=20, ge=0)
    trials: int = Field(default=200, ge=0)
    rng_seed: int = 1

    timing: bool = False

    @model_validator(mode="after")
    def check_sources(self) -> "RunConfig":
        single = self.command in (Command.GEN, Command.SIMULATE, Command.SOLVE)
        if single and (self.graph_file is None) == (self.family is None):
            raise ValueError("exactly one graph source (--graph or --family) is required")
        if self.command in (Command.SIMULATE, Command.SOLVE, Command.BOUND) and self.rule is None:
            raise ValueError(f"--rule is required for {self.command.value}")
        if self.command == Command.SIMULATE and self.seed is None:
            raise ValueError("--seed is required for simulate")
        if self.command == Command.BOUND:
            if self.product is None:
                raise ValueError("one of --cartesian or --tensor is required")
            if not self.left or not self.right:
                raise ValueError("--left and --right are required for bound")
        return self
