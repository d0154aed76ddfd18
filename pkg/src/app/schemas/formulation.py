from typing import Annotated

from pydantic import BaseModel, Field

from .graph import GraphIn


class FormulationRequest(GraphIn):
    emit_lp: Annotated[bool, Field(default=False, description="Include the LP text in the response.")]


class FormulationSummary(BaseModel):
    variables: int
    rows: int
    original: int
    auxiliary: int
    node_extra: Annotated[int, Field(description="Added node variables: records, lifts, power nodes.")]
    size: int
    log: list[str] = Field(default_factory=list)
    history: list[str] = Field(default_factory=list)
    lp: str | None = None
