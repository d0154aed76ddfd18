"""Compact formulations of pol(G) for cap-free graphs without even holes.

The rules are tried in order: near-cliques and the cube as leaves, a
universal node, a clique cutset, an amalgam when a triangle exists, and the
fan-template list for triangle-free graphs. A graph with triangles within the
leaf cap and no amalgam is enumerated.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from ..core.config import Limits, default_limits
from ..core.exceptions.decomposition_exceptions import InvalidSeparation, NotInClass
from ..core.exceptions.graph_exceptions import CapExceeded
from ..core.logger import logging
from ..decomposition.pipeline import PipelineRun, fan_template_list
from ..graphs.core import Graph, delete, induced_subgraph
from ..graphs.recognition import has_triangle, is_cube, near_clique, universal_node
from ..graphs.separation import find_amalgam, find_clique_cutset
from .composition import amalgam_blocks, amalgam_compose, universal_formulation
from .formulation import ExtendedFormulation, intersect, is_auxiliary, leaf_formulation, node_variables
from .templates import template_formulation, template_leaves

logger = logging.getLogger(__name__)


@dataclass
class FormulationRun:
    """Caps, the rules applied so far and a counter for fresh name prefixes."""

    limits: Limits
    history: list[str] = field(default_factory=list)
    counter: int = 0

    def note(self, message: str) -> None:
        self.history.append(message)
        logger.info(message)

    def fail(self, message: str) -> NotInClass:
        logger.warning(message)
        return NotInClass(message, list(self.history))

    def tag(self) -> str:
        self.counter += 1
        return f"t{self.counter}"


def _build(g: Graph, run: FormulationRun) -> ExtendedFormulation:
    limits = run.limits
    if near_clique(g) or is_cube(g):
        if g.n > limits.leaf_cap:
            run.note(f"{g.n}-node {'cube' if is_cube(g) else 'near-clique'} enumerated")
        return leaf_formulation(g, limits, cap=max(g.n, limits.leaf_cap))
    u = universal_node(g)
    if u is not None:
        run.note(f"universal node {g.name(u)}")
        return universal_formulation(g, u, _build(delete(g, 1 << u), run))
    cut = find_clique_cutset(g)
    if cut is not None:
        run.note(f"clique cutset {g.names(cut.u)}")
        parts = [_build(induced_subgraph(g, side | cut.u), run) for side in (cut.v1, cut.v2)]
        return intersect(parts, node_variables(g), "clique cutset")
    if has_triangle(g):
        try:
            sep = find_amalgam(g, limits)
        except (CapExceeded, InvalidSeparation) as err:
            if g.n <= limits.leaf_cap:
                return leaf_formulation(g, limits)
            raise run.fail(f"amalgam search failed: {err}") from err
        if sep is None:
            if g.n <= limits.leaf_cap:
                return leaf_formulation(g, limits)
            raise run.fail(f"no rule applies to a {g.n}-node graph with triangles")
        blocks = amalgam_blocks(g, sep, run.tag())
        run.note(f"amalgam with K = {g.names(sep.k)}")
        return amalgam_compose(_build(blocks.g1, run), _build(blocks.g2, run), blocks, g)
    pipeline = PipelineRun(limits)
    try:
        lst = fan_template_list(g, 0, [Fraction(1)] * g.n, pipeline)
    except NotInClass as err:
        run.history += pipeline.history
        raise run.fail(f"fan decomposition failed: {err.message}") from err
    run.history += pipeline.history
    prefix = run.tag()
    run.note(f"template list of length {len(lst)} on {g.n} nodes")
    return template_formulation(lst, template_leaves(lst, limits, prefix), g, limits, prefix)


def build_formulation(g: Graph, limits: Limits | None = None, run: FormulationRun | None = None) -> ExtendedFormulation:
    """Extended formulation of pol(G) over the node variables of G.

    Raises
    ------
    NotInClass
        If some piece admits no rule; the exception carries the rules applied.
    """
    run = run or FormulationRun(limits or default_limits())
    f = _build(g, run)
    logger.info(f"formulation of pol on {g.n} nodes: {len(f.variables)} variables, {len(f.rows)} rows")
    return f


def summary(f: ExtendedFormulation) -> dict[str, Any]:
    auxiliary = sum(1 for v in f.variables if is_auxiliary(v))
    return {
        "variables": len(f.variables),
        "rows": len(f.rows),
        "original": len(f.original),
        "auxiliary": auxiliary,
        "node_extra": len(f.extra) - auxiliary,
        "size": f.size,
        "log": list(f.meta),
    }
