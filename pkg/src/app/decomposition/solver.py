"""Right-to-left evaluation of decomposition lists and witness reconstruction."""

from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass, replace
from fractions import Fraction

from ..core.config import Limits, default_limits
from ..core.exceptions.decomposition_exceptions import DNotMonotone, DomainMismatch, UnresolvedSigma
from ..core.logger import logging
from ..graphs.core import Graph, Grouping, NodeSet, bits, enumerate_stable_sets, hom, mask_of, spread
from ..graphs.oracle import template_mwss_brute
from ..graphs.recognition import near_clique
from ..graphs.separation import find_clique_cutset
from ..graphs.templates import RootedTemplate, ServiceTable
from .engine import DecompList, ListMode, Origin, decompose_linearized, start

logger = logging.getLogger(__name__)

LeafSolver = Callable[[RootedTemplate, tuple[Fraction, ...]], ServiceTable]


def brute_leaf(limits: Limits | None = None) -> LeafSolver:
    def solve(t: RootedTemplate, w: tuple[Fraction, ...]) -> ServiceTable:
        return template_mwss_brute(t, w, limits)

    return solve


def check_service_table(table: ServiceTable, label: str = "") -> None:
    if not table.is_monotone():
        raise DNotMonotone(f"Service table {label} is not nonnegative and non-increasing.")


def patch_master_template(master: RootedTemplate, servant_table: ServiceTable, link: int) -> RootedTemplate:
    """Set the value of the region waiting on ``link`` to the servant table read through its targets.

    Raises
    ------
    DomainMismatch
        If the table is not keyed by the stable sets of the region's transversal.
    """
    regions = list(master.regions)
    for i, region in enumerate(regions):
        if region.link != link or region.sigma is not None:
            continue
        if servant_table.support != mask_of(region.targets):
            raise DomainMismatch(f"Servant {link} is rooted elsewhere than the region transversal.")
        keys = enumerate_stable_sets(region.pattern, cap=len(region.grouping))
        values = {t: servant_table[spread(t, region.targets)] for t in keys}
        regions[i] = replace(region, sigma=ServiceTable(region.pattern, region.pattern.full, values))
        return replace(master, regions=tuple(regions))
    raise DomainMismatch(f"No region is waiting on servant {link}.")


def resolve_regions(t: RootedTemplate, tables: Mapping[int, ServiceTable]) -> RootedTemplate:
    for region in t.regions:
        if region.sigma is None and region.link is not None and region.link in tables:
            t = patch_master_template(t, tables[region.link], region.link)
    return t


def solve_servant(t: RootedTemplate, w: Sequence[Fraction], leaf: LeafSolver) -> ServiceTable:
    """Table over the stable sets of the root, with witnesses.

    Raises
    ------
    UnresolvedSigma
        If a region still waits for its servant.
    """
    if any(region.sigma is None for region in t.regions):
        raise UnresolvedSigma()
    return leaf(t, tuple(w))


def root_map(lst: DecompList, uid: int) -> dict[int, int]:
    """Final root ids of ``uid`` mapped to the root ids it was created with."""
    final = lst.node(uid).template.root
    out = {}
    for v in bits(final):
        x = v
        for step in reversed(lst.steps_of(uid)):
            mapped = step.master_map[x]
            if mapped is None:
                raise DomainMismatch(f"Root node {v} of node {uid} has no parent.")
            x = mapped
        out[v] = x
    return out


@dataclass(frozen=True)
class ListSolution:
    """Tables per uid keyed in creation ids, and the leaf tables they came from."""

    lst: DecompList
    tables: Mapping[int, ServiceTable]
    leaves: Mapping[int, ServiceTable]
    root_maps: Mapping[int, Mapping[int, int]]

    def value(self, key: NodeSet = 0, uid: int = 0) -> Fraction:
        return self.tables[uid][key]

    def witness(self, key: NodeSet = 0, uid: int = 0) -> NodeSet:
        """Optimal stable set for root set ``key``: the leaf witness grown back through every step of ``uid``."""
        inverse = {initial: final for final, initial in self.root_maps[uid].items()}
        witnesses = self.leaves[uid].witnesses or {}
        s = witnesses[mask_of(inverse[v] for v in bits(key))]
        for step in reversed(self.lst.steps_of(uid)):
            inner = self.witness(hom(Grouping(step.blocks), s, step.targets), step.servant)
            kept = mask_of(x for x in (step.master_map[v] for v in bits(s)) if x is not None)
            s = kept | spread(inner & ~step.servant_root, step.servant_map)
        return s


def solve_list(lst: DecompList, leaf: LeafSolver | None = None, limits: Limits | None = None) -> ListSolution:
    """Solve every node from right to left, feeding each table into the nodes on its left."""
    leaf = leaf or brute_leaf(limits)
    tables: dict[int, ServiceTable] = {}
    leaves: dict[int, ServiceTable] = {}
    maps: dict[int, dict[int, int]] = {}
    for node in reversed(lst.nodes):
        t = resolve_regions(node.template, tables)
        w = tuple(x.evaluate(tables) for x in node.weights)
        offset = node.offset.evaluate(tables)
        table = solve_servant(t, w, leaf)
        if table.witnesses is None:
            raise DomainMismatch("Leaf solvers must return witnesses.")
        mapping = root_map(lst, node.uid)
        origin = lst.origins[node.uid]
        values = {mask_of(mapping[v] for v in bits(k)): value + offset for k, value in table.values.items()}
        out = ServiceTable(origin.graph, origin.root, values)
        if node.incoming.origin is Origin.SERVANT and all(r.link is not None for r in origin.regions):
            check_service_table(out, str(node.uid))
        tables[node.uid], leaves[node.uid], maps[node.uid] = out, table, mapping
    logger.debug(f"solved list of {len(lst)} nodes in {lst.mode.value} mode")
    return ListSolution(lst, tables, leaves, maps)


def chvatal_list(g: Graph, w: Sequence[Fraction], z: NodeSet = 0) -> DecompList:
    """0-linearized list splitting along clique cutsets until no node has one."""
    lst = start(RootedTemplate(g, z), w, ListMode.LINEARIZED01)
    i = 0
    while i < len(lst):
        t = lst.nodes[i].template
        if t.area and not near_clique(t.graph) and t.graph.is_clique(t.root):
            sep = find_clique_cutset(t.graph, avoid=t.root)
            if sep is not None:
                lst = decompose_linearized(lst, i, sep)
                continue
        i += 1
    return lst


def solve_chvatal(
    g: Graph, w: Sequence[Fraction], z: NodeSet = 0, limits: Limits | None = None, leaf: LeafSolver | None = None
) -> ListSolution:
    limits = limits or default_limits()
    lst = chvatal_list(g, w, z)
    largest = max(node.template.graph.n for node in lst.nodes)
    if largest > limits.leaf_cap:
        logger.info(f"clique cutset piece with {largest} nodes exceeds the leaf cap {limits.leaf_cap}")
    return solve_list(lst, leaf or brute_leaf(limits), limits)
