from collections.abc import Sequence
from typing import Annotated, Any, Literal

from pydantic import BaseModel, Field

from ..decomposition.engine import DecompList, assert_bounds, trace

TRACE_VERSION = "trace_v1"


class SeparationTrace(BaseModel):
    kind: str
    V1: list[str]
    U: list[str]
    V2: list[str]
    grouping: list[list[str]]


class StepTrace(BaseModel):
    step: int
    kind: str
    idx: int
    sep: SeparationTrace
    master_area: list[str]
    servant_area: list[str]
    potentials: dict[str, int] | None = None


class BoundsRead(BaseModel):
    mode: str
    length: int
    nontrivial: int
    trivial: int
    potentials: list[dict[str, int]]


class ListTrace(BaseModel):
    steps: list[StepTrace]
    bounds: BoundsRead


class TraceRead(BaseModel):
    version: Annotated[Literal["trace_v1"], Field(default=TRACE_VERSION)]
    lists: list[ListTrace] = Field(default_factory=list)


def list_trace(lst: DecompList) -> ListTrace:
    steps: list[dict[str, Any]] = trace(lst)
    return ListTrace(
        steps=[StepTrace.model_validate(step) for step in steps],
        bounds=BoundsRead.model_validate(assert_bounds(lst).to_dict()),
    )


def trace_of(lists: Sequence[DecompList]) -> TraceRead:
    return TraceRead(lists=[list_trace(lst) for lst in lists])


class DecompositionRead(BaseModel):
    value: Annotated[str, Field(examples=["4"])]
    history: list[str] = Field(default_factory=list)
    trace: TraceRead
