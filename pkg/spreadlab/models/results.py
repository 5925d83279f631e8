from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, Field

from spreadlab.models.rule import Rule
from spreadlab.models.vertex_set import VertexSet


class SolveResult(BaseModel):
    rule: Rule
    found: bool
    size: Optional[int] = None
    witness: Optional[VertexSet] = None
    forced: VertexSet
    # rank of the witness in cardinality-then-lexicographic order
    explored: int = 0
    budget: Optional[int] = None
    limit: int


class MultipartiteAnswer(BaseModel):
    value: int
    witness: VertexSet
    predicted_T: int = Field(ge=0)


class ProductKind(str, Enum):
    CARTESIAN = "cartesian"
    TENSOR = "tensor"


class Construction(str, Enum):
    CARTESIAN_K_PRODUCT = "cartesian_k_product"
    CARTESIAN_SLAB_UNION = "cartesian_slab_union"
    CARTESIAN_SLAB_UNION_REDUCED = "cartesian_slab_union_reduced"
    TENSOR_K_SIDE = "tensor_k_side"
    TENSOR_DYNAMO_SIDE = "tensor_dynamo_side"
    TENSOR_WITH_ISOLATED = "tensor_with_isolated"


class FactorSide(str, Enum):
    LEFT = "left"
    RIGHT = "right"


class BoundReport(BaseModel):
    construction: Construction
    product: ProductKind
    rule: Rule
    bound: int
    witness: VertexSet
    verified: bool
    T: int
    order: int
    right_order: int
    side: Optional[FactorSide] = None
    isolated: int = 0
    layers: Optional[List[VertexSet]] = None


class CheckResult(BaseModel):
    key: str
    name: str
    passed: bool
    detail: str = ""


class SuiteReport(BaseModel):
    scope: str
    parameters: dict
    checks: List[CheckResult]
    passed: int
    failed: int
    first_counterexample: Optional[CheckResult] = None
