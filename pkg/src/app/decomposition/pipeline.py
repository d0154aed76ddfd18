"""End-to-end maximum weight stable set for cap-free graphs without even holes.

Universal nodes are set aside, clique cutsets, adjacent twins and amalgams
feed a 0/1-linearized list, and triangle-free leaves go through a template
list of good fan-templates.
"""

from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from ..core.config import Limits, default_limits
from ..core.exceptions.decomposition_exceptions import BoundViolated, InvalidSeparation, NotGoodFan, NotInClass
from ..core.exceptions.graph_exceptions import CapExceeded
from ..core.logger import logging
from ..graphs.core import (
    Graph,
    NodeSet,
    bits,
    induced_subgraph,
    spread,
    squeeze,
    stable_subsets,
    weight_of,
)
from ..graphs.oracle import template_mwss_brute
from ..graphs.recognition import has_triangle, is_cube, near_clique, recognize, universal_node
from ..graphs.separation import (
    Separation,
    find_adjacent_twins,
    find_clique_cutset,
    find_fan_base,
    find_one_linearizable,
    fits,
)
from ..graphs.templates import RootedTemplate, ServiceTable
from .engine import DecompList, ListMode, assert_bounds, decompose_linearized, decompose_template, start
from .fans import good_fan_base, solve_fan_template
from .solver import ListSolution, solve_list

logger = logging.getLogger(__name__)


@dataclass
class PipelineRun:
    """Mutable bookkeeping of one solve: caps, decisions taken and lists built."""

    limits: Limits
    history: list[str] = field(default_factory=list)
    lists: list[DecompList] = field(default_factory=list)

    def note(self, message: str) -> None:
        self.history.append(message)
        logger.info(message)

    def fail(self, message: str) -> NotInClass:
        logger.warning(message)
        return NotInClass(message, list(self.history))


@dataclass(frozen=True)
class Solution:
    value: Fraction
    witness: NodeSet
    history: tuple[str, ...]
    lists: tuple[DecompList, ...]


def _enumerated(g: Graph, z: NodeSet, w: Sequence[Fraction], limits: Limits) -> ServiceTable:
    """Rooted table by listing the stable sets, capped by their number rather than the node count."""
    values: dict[NodeSet, Fraction] = {}
    witnesses: dict[NodeSet, NodeSet] = {}
    for s in stable_subsets(g, g.full, limits.record_cap):
        r = s & z
        value = weight_of(w, s)
        if r not in values or value > values[r]:
            values[r], witnesses[r] = value, s
    return ServiceTable(g, z, values, witnesses)


def _rooted_table(solution: ListSolution, g: Graph, z: NodeSet) -> ServiceTable:
    top = solution.tables[0]
    return ServiceTable(g, z, dict(top.values), {key: solution.witness(key) for key in top})


def _strip_universal(g: Graph, z: NodeSet, w: Sequence[Fraction], u: int, run: PipelineRun) -> ServiceTable:
    run.note(f"universal node {g.name(u)} set aside")
    order = list(bits(g.full & ~(1 << u)))
    sub = solve_rooted(induced_subgraph(g, g.full & ~(1 << u)), squeeze(z, order), [w[v] for v in order], run)
    sub_witnesses = sub.witnesses or {}
    values: dict[NodeSet, Fraction] = {}
    witnesses: dict[NodeSet, NodeSet] = {}
    for r in stable_subsets(g, z, run.limits.record_cap):
        if r >> u & 1:
            values[r], witnesses[r] = w[u], r
            continue
        key = squeeze(r, order)
        values[r], witnesses[r] = sub[key], spread(sub_witnesses[key], order)
        if r == 0 and not z >> u & 1 and w[u] > values[r]:
            values[r], witnesses[r] = w[u], 1 << u
    return ServiceTable(g, z, values, witnesses)


def _split_root(g: Graph, z: NodeSet, w: Sequence[Fraction], run: PipelineRun) -> ServiceTable:
    """One unrooted solve on G − Z − N(R) per stable R in Z."""
    run.note(f"root {g.names(z)} split into its stable sets")
    values: dict[NodeSet, Fraction] = {}
    witnesses: dict[NodeSet, NodeSet] = {}
    for r in stable_subsets(g, z, run.limits.record_cap):
        keep = g.full & ~z & ~g.neighborhood(r)
        order = list(bits(keep))
        sub = solve_rooted(induced_subgraph(g, keep), 0, [w[v] for v in order], run)
        values[r] = weight_of(w, r) + sub[0]
        witnesses[r] = r | spread((sub.witnesses or {})[0], order)
    return ServiceTable(g, z, values, witnesses)


# -------------- 0/1-linearized lists --------------
def _linearizable(t: RootedTemplate, run: PipelineRun) -> Separation | None:
    g, z = t.graph, t.root
    if not t.area or near_clique(g) or not g.is_clique(z):
        return None
    cut = find_clique_cutset(g, avoid=z)
    if cut is not None:
        return cut
    twins = find_adjacent_twins(g, z)
    if twins is not None:
        return twins
    if not has_triangle(g):
        return None
    try:
        return find_one_linearizable(g, z, run.limits)
    except InvalidSeparation as err:
        run.note(f"amalgam rejected: {err.message}")
        return None


def linearized_list(g: Graph, z: NodeSet, w: Sequence[Fraction], run: PipelineRun) -> DecompList:
    """Decompose until no node of the list has a clique cutset, twins or a usable amalgam."""
    lst = start(RootedTemplate(g, z), w, ListMode.LINEARIZED01)
    i = 0
    while i < len(lst):
        t = lst.nodes[i].template
        sep = _linearizable(t, run)
        if sep is None:
            i += 1
            continue
        run.note(f"{sep.kind.value} at position {i} on {t.graph.names(sep.u)}")
        lst = decompose_linearized(lst, i, sep)
    return lst


def _linearized_leaf(t: RootedTemplate, w: tuple[Fraction, ...], run: PipelineRun) -> ServiceTable:
    g, z = t.graph, t.root
    limits = run.limits
    if g.n <= limits.leaf_cap or near_clique(g) or is_cube(g):
        return _enumerated(g, z, w, limits)
    u = universal_node(g)
    if u is not None:
        return _strip_universal(g, z, w, u, run)
    if not has_triangle(g):
        return _triangle_free(g, z, w, run)
    raise run.fail(f"no rule applies to a {g.n}-node leaf with triangles")


# -------------- fan-template lists --------------
def _template_separation(t: RootedTemplate) -> Separation | None:
    sep = find_fan_base(t.graph, t.root, t.regions)
    if sep is not None:
        return sep
    cut = find_clique_cutset(t.graph, avoid=t.root)
    if cut is not None and cut.u and fits(cut, t.regions):
        return cut
    return None


def fan_template_list(g: Graph, z: NodeSet, w: Sequence[Fraction], run: PipelineRun) -> DecompList:
    lst = start(RootedTemplate(g, z), w, ListMode.TEMPLATE)
    i = 0
    while i < len(lst):
        t = lst.nodes[i].template
        if not t.area or good_fan_base(t) is not None or (is_cube(t.graph) and not t.regions):
            i += 1
            continue
        sep = _template_separation(t)
        if sep is None:
            # stays a leaf; its size is bounded later by the enumeration caps
            run.note(f"{t.graph.n}-node template at position {i} kept as an enumerated leaf")
            i += 1
            continue
        run.note(f"{sep.kind.value} at position {i} on {t.graph.names(sep.u)}")
        lst = decompose_template(lst, i, sep)
    return lst


def _template_leaf(t: RootedTemplate, w: tuple[Fraction, ...], run: PipelineRun) -> ServiceTable:
    if t.area and good_fan_base(t) is not None:
        try:
            return solve_fan_template(t, w, run.limits)
        except NotGoodFan as err:
            run.note(f"fan solver declined: {err.message}")
    try:
        return template_mwss_brute(t, w, run.limits)
    except CapExceeded as err:
        raise run.fail(f"template leaf on {t.graph.n} nodes is too large to enumerate") from err


def _fan_route(g: Graph, z: NodeSet, w: Sequence[Fraction], run: PipelineRun) -> ServiceTable:
    lst = fan_template_list(g, z, w, run)
    run.lists.append(lst)
    report = assert_bounds(lst)
    run.note(f"template list with {report.nontrivial} non-trivial and {report.trivial} trivial nodes")
    solution = solve_list(lst, lambda t, x: _template_leaf(t, x, run), run.limits)
    return _rooted_table(solution, g, z)


def _triangle_free(g: Graph, z: NodeSet, w: Sequence[Fraction], run: PipelineRun) -> ServiceTable:
    try:
        return _fan_route(g, z, w, run)
    except NotInClass:
        if not z:
            raise
        return _split_root(g, z, w, run)


# -------------- entry points --------------
def solve_rooted(g: Graph, z: NodeSet, w: Sequence[Fraction], run: PipelineRun) -> ServiceTable:
    """Rooted table of G at Z with witnesses, by the first rule that applies."""
    limits = run.limits
    if near_clique(g) or is_cube(g):
        return _enumerated(g, z, w, limits)
    u = universal_node(g)
    if u is not None:
        return _strip_universal(g, z, w, u, run)
    if not g.is_clique(z):
        return _split_root(g, z, w, run)
    lst = linearized_list(g, z, w, run)
    run.lists.append(lst)
    report = assert_bounds(lst)
    run.note(f"linearized list of length {report.length} for {g.n} nodes")
    solution = solve_list(lst, lambda t, x: _linearized_leaf(t, x, run), limits)
    return _rooted_table(solution, g, z)


def solve_pipeline(g: Graph, w: Sequence[Fraction | int], limits: Limits | None = None) -> Solution:
    """Maximum weight stable set of G and an optimal witness.

    Raises
    ------
    NotInClass
        If some leaf admits no rule; the exception carries the decisions taken.
    BoundViolated
        If the reconstructed witness is not stable or misses the value.
    """
    limits = limits or default_limits()
    weights = tuple(Fraction(x) for x in w)
    run = PipelineRun(limits)
    if g.n <= limits.hole_search_cap:
        report = recognize(g, limits)
        if not report.in_class:
            run.note("graph has an even hole or a cap; proceeding without guarantees")
    table = solve_rooted(g, 0, weights, run)
    value, witness = table[0], (table.witnesses or {})[0]
    if not g.is_stable(witness) or weight_of(weights, witness) != value:
        raise BoundViolated(f"Witness {g.names(witness)} does not attain {value}.")
    logger.info(f"maximum weight {value} on {g.n} nodes with {len(run.lists)} decomposition lists")
    return Solution(value, witness, tuple(run.history), tuple(run.lists))
