from fractions import Fraction
from typing import Annotated

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..graphs.core import Graph


def parse_rational(value: str | int) -> Fraction:
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as err:
        raise ValueError(f"{value!r} is not a rational number") from err


class GraphBase(BaseModel):
    n: Annotated[int, Field(ge=0, le=256, examples=[5])]
    edges: Annotated[list[tuple[int, int]], Field(examples=[[[1, 2], [2, 3], [3, 4], [4, 5], [5, 1]]])]
    names: Annotated[list[str] | None, Field(default=None, examples=[["a", "b", "c", "d", "e"]])]


class GraphIn(GraphBase):
    """Graph with 1-based node ids, as in DIMACS files."""

    model_config = ConfigDict(extra="forbid")

    @model_validator(mode="after")
    def check_edges(self) -> "GraphIn":
        for u, v in self.edges:
            if not (1 <= u <= self.n and 1 <= v <= self.n) or u == v:
                raise ValueError(f"edge ({u}, {v}) is a loop or out of range")
        if self.names is not None and len(self.names) != self.n:
            raise ValueError("one name per node is required")
        return self

    def to_graph(self) -> Graph:
        names = self.names or [str(v + 1) for v in range(self.n)]
        edges = {(min(u, v) - 1, max(u, v) - 1) for u, v in self.edges}
        return Graph.from_edges(self.n, sorted(edges), names=names)


class WeightedGraphIn(GraphIn):
    weights: Annotated[
        list[str | int] | None,
        Field(default=None, description="One rational per node, default 1.", examples=[["1", "3/2", "2", "1", "1"]]),
    ]

    @field_validator("weights")
    @classmethod
    def check_weights(cls, value: list[str | int] | None) -> list[str | int] | None:
        if value is not None:
            for w in value:
                parse_rational(w)
        return value

    @model_validator(mode="after")
    def check_weight_count(self) -> "WeightedGraphIn":
        if self.weights is not None and len(self.weights) != self.n:
            raise ValueError("one weight per node is required")
        return self

    def to_weights(self) -> tuple[Fraction, ...]:
        if self.weights is None:
            return (Fraction(1),) * self.n
        return tuple(parse_rational(w) for w in self.weights)
