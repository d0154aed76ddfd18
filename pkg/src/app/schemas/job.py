from typing import Annotated

from pydantic import BaseModel, ConfigDict, Field

from .graph import GraphIn


class Job(BaseModel):
    id: str


class VerifyJobCreate(BaseModel):
    model_config = ConfigDict(extra="forbid")

    graph: GraphIn
    samples: Annotated[int, Field(ge=0, le=1000, default=20)]
    seed: Annotated[int, Field(ge=0, default=42)]
