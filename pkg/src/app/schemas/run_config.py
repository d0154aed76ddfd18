from enum import Enum
from pathlib import Path
from typing import Annotated

from pydantic import BaseModel, ConfigDict, Field

from ..core.config import Limits, settings


class Command(str, Enum):
    SOLVE = "solve"
    EMIT_LP = "emit-lp"
    VERIFY = "verify"
    RECOGNIZE = "recognize"
    DECOMPOSE = "decompose"


class RunConfig(BaseModel):
    """One command line invocation with its caps resolved."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    command: Command
    graph: Path
    weights: Path | None = None
    out: Path | None = None
    trace: Path | None = None
    samples: Annotated[int, Field(ge=0)] = settings.DEFAULT_SAMPLES
    seed: Annotated[int, Field(ge=0)] = settings.DEFAULT_SEED
    leaf_cap: Annotated[int | None, Field(gt=0)] = None
    record_cap: Annotated[int | None, Field(gt=0)] = None
    fm_guard: Annotated[int | None, Field(gt=0)] = None

    def limits(self, base: Limits) -> Limits:
        overrides = {
            key: value
            for key, value in (
                ("leaf_cap", self.leaf_cap),
                ("record_cap", self.record_cap),
                ("fm_guard", self.fm_guard),
            )
            if value is not None
        }
        return base.model_copy(update=overrides)
