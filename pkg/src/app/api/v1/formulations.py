from typing import Annotated

from fastapi import APIRouter, Depends

from ...api.dependencies import domain_errors, get_limits
from ...core.config import Limits
from ...polytope.builder import FormulationRun, build_formulation, summary
from ...polytope.emit import emit_lp
from ...schemas.formulation import FormulationRequest, FormulationSummary

router = APIRouter(tags=["formulations"])


@router.post("/formulations", response_model=FormulationSummary)
def write_formulation(
    request: FormulationRequest, limits: Annotated[Limits, Depends(get_limits)]
) -> FormulationSummary:
    """Extended formulation of the stable set polytope, summarized.

    Parameters
    ----------
    request: FormulationRequest
        The graph, and whether the LP text should be returned.

    Returns
    -------
    FormulationSummary
        Variable and row counts, the composition log and optionally the LP text.
    """
    with domain_errors():
        g = request.to_graph()
        run = FormulationRun(limits)
        f = build_formulation(g, limits, run)
    lp = emit_lp(f) if request.emit_lp else None
    return FormulationSummary(**summary(f), history=run.history, lp=lp)
