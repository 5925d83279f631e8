from typing import Any, Iterable, Iterator, List

from pydantic_core import core_schema


class VertexSet:
    """
    Immutable set of vertex ids backed by an integer bit mask.

    Bit ``v`` of ``mask`` is set iff vertex ``v`` belongs to the set. Serialises
    to (and validates from) a sorted list of ids.
    """
    __slots__ = ("_mask",)

    def __init__(self, mask: int = 0):
        if mask < 0:
            raise ValueError("vertex set mask must be non-negative")
        self._mask = mask

    @classmethod
    def of(cls, ids: Iterable[int]) -> "VertexSet":
        mask = 0
        for v in ids:
            if v < 0:
                raise ValueError(f"negative vertex id {v}")
            mask |= 1 << v
        return cls(mask)

    @classmethod
    def full(cls, n: int) -> "VertexSet":
        return cls((1 << n) - 1)

    @property
    def mask(self) -> int:
        return self._mask

    def ids(self) -> List[int]:
        return list(self)

    def complement(self, n: int) -> "VertexSet":
        return VertexSet(((1 << n) - 1) & ~self._mask)

    def with_vertex(self, v: int) -> "VertexSet":
        return VertexSet(self._mask | (1 << v))

    def without(self, v: int) -> "VertexSet":
        return VertexSet(self._mask & ~(1 << v))

    def issubset(self, other: "VertexSet") -> bool:
        return self._mask & ~other._mask == 0

    def within(self, n: int) -> bool:
        return self._mask >> n == 0

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and v >= 0 and (self._mask >> v) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        m = self._mask
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    def __len__(self) -> int:
        return self._mask.bit_count()

    def __bool__(self) -> bool:
        return self._mask != 0

    def __or__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self._mask | other._mask)

    def __and__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self._mask & other._mask)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self._mask & ~other._mask)

    def __le__(self, other: "VertexSet") -> bool:
        return self.issubset(other)

    def __ge__(self, other: "VertexSet") -> bool:
        return other.issubset(self)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, VertexSet):
            return self._mask == other._mask
        if isinstance(other, (set, frozenset)):
            return set(self) == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._mask)

    def __repr__(self) -> str:
        return f"VertexSet({self.ids()})"

    @classmethod
    def _validate(cls, value: Any) -> "VertexSet":
        if isinstance(value, VertexSet):
            return value
        if isinstance(value, (str, bytes)):
            raise ValueError("vertex set must be a list of ids")
        try:
            ids = [int(v) for v in value]
        except (TypeError, ValueError) as e:
            raise ValueError(f"invalid vertex set: {value!r}") from e
        return cls.of(ids)

    @classmethod
    def __get_pydantic_core_schema__(cls, source: Any, handler: Any) -> core_schema.CoreSchema:
        return core_schema.no_info_plain_validator_function(
            cls._validate,
            serialization=core_schema.plain_serializer_function_ser_schema(
                lambda s: s.ids(), when_used="always"
            ),
        )
