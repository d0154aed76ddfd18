"""Good fan-templates: a u..v path plus an apex c, root inside the base, triple regions.

Regions are replaced by records weighted with their value function. Stable
sets are split on whether they hold the apex, and what remains of the path
with its records falls apart along 2-node clique cutsets into small pieces.
"""

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from ..core.config import Limits, default_limits
from ..core.exceptions.decomposition_exceptions import NotGoodFan, UnresolvedSigma
from ..core.logger import logging
from ..graphs.core import (
    Graph,
    NodeSet,
    add_record,
    bits,
    induced_subgraph,
    mask_of,
    popcount,
    spread,
    stable_subsets,
    weight_of,
)
from ..graphs.recognition import fan_holes, fan_path, induced_path
from ..graphs.templates import Region, RootedTemplate, ServiceTable
from .linearize import toggle_parts
from .solver import chvatal_list, solve_chvatal

logger = logging.getLogger(__name__)


def _good_region(g: Graph, region: Region, holes: Sequence[NodeSet]) -> bool:
    x = region.support
    if popcount(x) != 3 or not region.grouping.is_trivial() or induced_path(g, x) is None:
        return False
    return any(x & ~hole == 0 for hole in holes)


def good_fan_base(t: RootedTemplate) -> tuple[int, int, int] | None:
    """Base (u, c, v) holding the root under which every region is a 3-node subpath of a hole."""
    g = t.graph
    for c in range(g.n):
        path = fan_path(g, c)
        if path is None:
            continue
        base = (path[0], c, path[-1])
        if t.root & ~mask_of(base):
            continue
        holes = fan_holes(g, base)
        if all(_good_region(g, region, holes) for region in t.regions):
            return base
    return None


def is_good_fan_template(t: RootedTemplate) -> bool:
    return good_fan_base(t) is not None


@dataclass(frozen=True)
class RecordedFan:
    """The fan with one record per region; fan nodes keep their ids, records follow."""

    graph: Graph
    weights: tuple[Fraction, ...]
    offset: Fraction
    base: tuple[int, int, int]
    fan: NodeSet

    @property
    def apex(self) -> int:
        return self.base[1]


def record_fan(t: RootedTemplate, w: Sequence[Fraction], limits: Limits | None = None) -> RecordedFan:
    """Attach a record per region weighted by its values.

    Monotone values go straight onto the record nodes; other values are
    toggled first, moving their linear part onto the region nodes and their
    constant into the offset.

    Raises
    ------
    NotGoodFan
        If the template is not a good fan-template.
    """
    base = good_fan_base(t)
    if base is None:
        raise NotGoodFan()
    h = t.graph
    weights = list(w)
    offset = Fraction(0)
    for i, region in enumerate(t.regions):
        if region.sigma is None:
            raise UnresolvedSigma()
        values = {s: region.value(s) for s in stable_subsets(h, region.support, 1 << 3)}
        if region.sigma.is_monotone():
            delta: dict[int, Fraction] = {}
            constant, rest = Fraction(0), values
        else:
            delta, constant, rest = toggle_parts(values)
        record = add_record(h, region.support, tag=f"{region.tag or 'w'}{i}", limits=limits)
        h = record.graph
        weights += [Fraction(0)] * (h.n - len(weights))
        for s, node in record.nodes.items():
            weights[node] = rest[s]
        for v, value in delta.items():
            weights[v] += value
        offset += constant
    return RecordedFan(h, tuple(weights), offset, base, t.graph.full)


def _chain(h: Graph, keep: NodeSet, weights: Sequence[Fraction], limits: Limits) -> tuple[Fraction, NodeSet]:
    if not keep:
        return Fraction(0), 0
    order = list(bits(keep))
    solution = solve_chvatal(induced_subgraph(h, keep), [weights[v] for v in order], limits=limits)
    return solution.value(), spread(solution.witness(), order)


def apex_free_pieces(recorded: RecordedFan) -> list[int]:
    """Node counts of the clique cutset pieces of the record graph without its apex."""
    h = recorded.graph
    keep = h.full & ~(1 << recorded.apex)
    order = list(bits(keep))
    lst = chvatal_list(induced_subgraph(h, keep), [recorded.weights[v] for v in order])
    return [node.template.graph.n for node in lst.nodes]


def solve_fan_template(t: RootedTemplate, w: Sequence[Fraction], limits: Limits | None = None) -> ServiceTable:
    """Table over the stable sets of the root (at most five) with witnesses in fan ids.

    Raises
    ------
    NotGoodFan
        If the template is not a good fan-template.
    """
    limits = limits or default_limits()
    recorded = record_fan(t, w, limits)
    h, weights, c = recorded.graph, recorded.weights, recorded.apex
    values: dict[NodeSet, Fraction] = {}
    witnesses: dict[NodeSet, NodeSet] = {}
    for r in stable_subsets(t.graph, t.root, 1 << 3):
        options = [bool(r >> c & 1)] if t.root >> c & 1 else [False, True]
        best: tuple[Fraction, NodeSet] | None = None
        for with_apex in options:
            chosen = r | (1 << c if with_apex else 0)
            if not h.is_stable(chosen):
                continue
            keep = h.full & ~t.root & ~(1 << c) & ~h.neighborhood(chosen)
            value, inner = _chain(h, keep, weights, limits)
            total = weight_of(weights, chosen) + value
            if best is None or total > best[0]:
                best = (total, chosen | inner)
        if best is None:
            raise NotGoodFan(f"Root set {t.graph.names(r)} admits no stable set.")
        values[r] = best[0] + recorded.offset
        witnesses[r] = best[1] & recorded.fan
    logger.debug(f"fan template with base {t.graph.names(mask_of(recorded.base))} solved")
    return ServiceTable(t.graph, t.root, values, witnesses)
