from typing import Annotated

from fastapi import APIRouter, Depends

from ...api.dependencies import domain_errors, get_limits
from ...core.config import Limits
from ...decomposition.pipeline import solve_pipeline
from ...graphs.recognition import recognize
from ...schemas.graph import GraphIn, WeightedGraphIn
from ...schemas.report import ClassReportRead, class_report_of
from ...schemas.solution import SolutionRead, rational, solution_of
from ...schemas.trace import DecompositionRead, trace_of

router = APIRouter(tags=["stable sets"])


@router.post("/solve", response_model=SolutionRead)
def solve(graph: WeightedGraphIn, limits: Annotated[Limits, Depends(get_limits)]) -> SolutionRead:
    """Maximum weight stable set with the decisions taken and the decomposition trace."""
    with domain_errors():
        g = graph.to_graph()
        return solution_of(g, solve_pipeline(g, graph.to_weights(), limits))


@router.post("/recognize", response_model=ClassReportRead)
def recognize_graph(graph: GraphIn, limits: Annotated[Limits, Depends(get_limits)]) -> ClassReportRead:
    with domain_errors():
        g = graph.to_graph()
        return class_report_of(g, recognize(g, limits))


@router.post("/decompose", response_model=DecompositionRead)
def decompose(graph: WeightedGraphIn, limits: Annotated[Limits, Depends(get_limits)]) -> DecompositionRead:
    """Trace and bound report of every decomposition list built while solving."""
    with domain_errors():
        g = graph.to_graph()
        solution = solve_pipeline(g, graph.to_weights(), limits)
        return DecompositionRead(
            value=rational(solution.value), history=list(solution.history), trace=trace_of(solution.lists)
        )
