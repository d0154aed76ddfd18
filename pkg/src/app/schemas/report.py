from typing import Annotated

from pydantic import BaseModel, Field

from ..graphs.core import Graph
from ..graphs.recognition import ClassReport


class CapRead(BaseModel):
    hole: list[str]
    node: str


class ClassReportRead(BaseModel):
    in_class: bool
    has_triangle: bool
    even_hole: list[str] | None = None
    cap: CapRead | None = None
    is_cube: bool
    universal_node: str | None = None
    is_near_clique: bool


def class_report_of(g: Graph, report: ClassReport) -> ClassReportRead:
    cap = None
    if report.cap is not None:
        hole, node = report.cap
        cap = CapRead(hole=[g.name(v) for v in hole], node=g.name(node))
    return ClassReportRead(
        in_class=report.in_class,
        has_triangle=report.has_triangle,
        even_hole=[g.name(v) for v in report.even_hole] if report.even_hole is not None else None,
        cap=cap,
        is_cube=report.is_cube,
        universal_node=g.name(report.universal_node) if report.universal_node is not None else None,
        is_near_clique=report.is_near_clique,
    )


class Mismatch(BaseModel):
    check: Annotated[str, Field(examples=["lp"])]
    weights: list[str]
    expected: str
    got: str


class VerificationReport(BaseModel):
    nodes: int
    samples: int
    seed: int
    pipeline_checked: int = 0
    lp_checked: int = 0
    formulation_size: int | None = None
    mismatches: list[Mismatch] = Field(default_factory=list)
    skipped: list[str] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches
