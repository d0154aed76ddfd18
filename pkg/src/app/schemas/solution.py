from fractions import Fraction
from typing import Annotated

from pydantic import BaseModel, Field

from ..decomposition.pipeline import Solution
from ..graphs.core import Graph
from .trace import TraceRead, trace_of


class SolutionRead(BaseModel):
    value: Annotated[str, Field(examples=["2"])]
    witness: Annotated[list[str], Field(examples=[["1", "3"]])]
    history: list[str] = Field(default_factory=list)
    trace: TraceRead | None = None


def rational(value: Fraction) -> str:
    return str(value)


def solution_of(g: Graph, solution: Solution, with_trace: bool = True) -> SolutionRead:
    return SolutionRead(
        value=rational(solution.value),
        witness=g.names(solution.witness),
        history=list(solution.history),
        trace=trace_of(solution.lists) if with_trace else None,
    )
