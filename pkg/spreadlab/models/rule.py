from enum import Enum
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, model_serializer, model_validator


class RuleKind(str, Enum):
    K_THRESHOLD = "k_threshold"
    MAJORITY = "majority"


class Rule(BaseModel):
    """
    Conversion rule: a white vertex turns black once at least ``threshold(deg)``
    of its neighbours are black.
    """
    model_config = ConfigDict(frozen=True)

    kind: RuleKind
    k: Optional[int] = None

    @model_validator(mode="before")
    @classmethod
    def from_label(cls, data: Any) -> Any:
        if isinstance(data, str):
            if data == "majority":
                return {"kind": RuleKind.MAJORITY}
            if data.startswith("k:") and data[2:].isdigit():
                return {"kind": RuleKind.K_THRESHOLD, "k": int(data[2:])}
            raise ValueError(f"unknown rule label {data!r}")
        return data

    @model_validator(mode="after")
    def check_k(self) -> "Rule":
        if self.kind == RuleKind.K_THRESHOLD:
            if self.k is None or self.k < 1:
                raise ValueError("k_threshold requires an integer k >= 1")
        elif self.k is not None:
            raise ValueError("majority takes no k")
        return self

    @classmethod
    def k_threshold(cls, k: int) -> "Rule":
        return cls(kind=RuleKind.K_THRESHOLD, k=k)

    @classmethod
    def majority(cls) -> "Rule":
        return cls(kind=RuleKind.MAJORITY)

    @property
    def is_majority(self) -> bool:
        return self.kind == RuleKind.MAJORITY

    def threshold(self, degree: int) -> int:
        """Black neighbours needed to convert; an isolated vertex gets 1 and so never converts."""
        if self.kind == RuleKind.K_THRESHOLD:
            return self.k
        if degree == 0:
            return 1
        return (degree + 1) // 2

    def label(self) -> str:
        return "majority" if self.is_majority else f"k:{self.k}"

    @model_serializer
    def serialize(self) -> str:
        return self.label()

    def __str__(self) -> str:
        return self.label()
