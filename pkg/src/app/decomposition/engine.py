"""Decomposition lists of rooted templates.

A list is a value. Every ``decompose_*`` call returns a new list in which the
node at ``idx`` is replaced by its master and the servant is inserted right
after it, so links from a master to its servant always point rightward.
"""

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Any

from ..core.exceptions.decomposition_exceptions import (
    BoundViolated,
    InvalidSeparation,
    NotFitting,
    NotProper,
    RootNotClique,
    RootNotInMaster,
    StructuralConditionFailed,
    UnresolvedSigma,
)
from ..core.logger import logging
from ..graphs.core import (
    Graph,
    Grouping,
    Label,
    LabelKind,
    NodeSet,
    bits,
    induced_subgraph,
    lowest,
    mask_of,
    pattern_graph,
    popcount,
    quotient_by_transversal,
    squeeze,
)
from ..graphs.recognition import near_clique
from ..graphs.separation import Separation, SeparationKind, fits, one_lin
from ..graphs.templates import Region, RootedTemplate, ServiceTable

logger = logging.getLogger(__name__)


class ListMode(str, Enum):
    TEMPLATE = "template"
    LINEARIZED01 = "linearized01"


class Origin(str, Enum):
    ROOT = "root"
    MASTER = "master"
    SERVANT = "servant"


@dataclass(frozen=True)
class Incoming:
    origin: Origin
    parent: int | None = None
    kind: SeparationKind | None = None
    step: int | None = None


# -------------- symbolic weights --------------
@dataclass(frozen=True)
class Term:
    """``coeff`` times the value of servant ``servant`` at root set ``key``."""

    servant: int
    key: NodeSet
    coeff: int = 1


@dataclass(frozen=True)
class SymbolicWeight:
    """A rational plus a signed sum of servant table entries not known yet."""

    constant: Fraction = Fraction(0)
    terms: tuple[Term, ...] = ()

    def __add__(self, other: "SymbolicWeight") -> "SymbolicWeight":
        return SymbolicWeight(self.constant + other.constant, self.terms + other.terms)

    @property
    def is_concrete(self) -> bool:
        return not self.terms

    @property
    def servants(self) -> set[int]:
        return {term.servant for term in self.terms}

    def evaluate(self, tables: Mapping[int, ServiceTable]) -> Fraction:
        total = self.constant
        for term in self.terms:
            table = tables.get(term.servant)
            if table is None:
                raise UnresolvedSigma(f"Servant {term.servant} has not been solved yet.")
            total += term.coeff * table[term.key]
        return total


ZERO = SymbolicWeight()


def concrete(value: Fraction | int) -> SymbolicWeight:
    return SymbolicWeight(Fraction(value))


def entry(servant: int, key: NodeSet) -> SymbolicWeight:
    return SymbolicWeight(terms=(Term(servant, key),))


def gap(servant: int, plus: NodeSet, minus: NodeSet) -> SymbolicWeight:
    """d(plus) - d(minus) for the table of ``servant``."""
    if plus == minus:
        return ZERO
    return SymbolicWeight(terms=(Term(servant, plus), Term(servant, minus, -1)))


# -------------- list members --------------
@dataclass(frozen=True)
class DecompNode:
    uid: int
    template: RootedTemplate
    weights: tuple[SymbolicWeight, ...]
    offset: SymbolicWeight = ZERO
    incoming: Incoming = Incoming(Origin.ROOT)

    @property
    def trivial(self) -> bool:
        return self.template.area == 0

    @property
    def pending_sigma_links(self) -> tuple[int, ...]:
        return tuple(r.link for r in self.template.regions if r.sigma is None and r.link is not None)

    @property
    def links(self) -> set[int]:
        """Uids of every servant whose table this node still reads."""
        out = set(self.pending_sigma_links) | self.offset.servants
        for w in self.weights:
            out |= w.servants
        return out


@dataclass(frozen=True)
class Potentials:
    load: int
    pos: int
    rootcount: int

    @classmethod
    def of(cls, nodes: Sequence[DecompNode]) -> "Potentials":
        positive = [node.template for node in nodes if node.template.load > 0]
        return cls(
            load=sum(t.load for t in positive),
            pos=len(positive),
            rootcount=sum(popcount(t.root) for t in positive),
        )


@dataclass(frozen=True)
class DecompStep:
    """One master/servant rewrite.

    Node ids of ``master_map`` and ``servant_map`` point into ``parent``;
    ``None`` marks the added linearizing node. ``blocks`` are the grouping
    blocks in master ids and ``targets`` their transversal nodes in the servant.
    """

    step: int
    kind: SeparationKind
    index: int
    master: int
    servant: int
    separation: Separation
    parent: Graph
    master_map: tuple[int | None, ...]
    servant_map: tuple[int, ...]
    blocks: tuple[NodeSet, ...]
    targets: tuple[int, ...]
    master_area: NodeSet
    servant_area: NodeSet
    lin: int | None = None
    before: Potentials | None = None
    after: Potentials | None = None

    @property
    def servant_root(self) -> NodeSet:
        return mask_of(self.targets)

    def to_trace(self) -> dict[str, Any]:
        out = {
            "step": self.step,
            "kind": self.kind.value,
            "idx": self.index,
            "sep": self.separation.to_trace(self.parent),
            "master_area": self.parent.names(self.master_area),
            "servant_area": self.parent.names(self.servant_area),
        }
        if self.after is not None:
            out["potentials"] = {"load": self.after.load, "pos": self.after.pos, "rootcount": self.after.rootcount}
        return out


@dataclass(frozen=True)
class DecompList:
    mode: ListMode
    nodes: tuple[DecompNode, ...]
    n: int
    steps: tuple[DecompStep, ...] = ()
    origins: Mapping[int, RootedTemplate] = field(default_factory=dict)
    next_uid: int = 1

    def __len__(self) -> int:
        return len(self.nodes)

    def position(self, uid: int) -> int:
        return next(i for i, node in enumerate(self.nodes) if node.uid == uid)

    def node(self, uid: int) -> DecompNode:
        return self.nodes[self.position(uid)]

    def pending_links(self, idx: int) -> list[int]:
        """List positions the region values of node ``idx`` will come from."""
        return [self.position(uid) for uid in self.nodes[idx].pending_sigma_links]

    def steps_of(self, uid: int) -> list[DecompStep]:
        return [s for s in self.steps if s.master == uid]

    def area(self) -> int:
        return sum(popcount(node.template.area) for node in self.nodes)


def start(
    template: RootedTemplate, weights: Sequence[Fraction | SymbolicWeight], mode: ListMode = ListMode.TEMPLATE
) -> DecompList:
    """Single-node list holding ``template`` with its weights."""
    symbolic = tuple(w if isinstance(w, SymbolicWeight) else concrete(w) for w in weights)
    if len(symbolic) != template.graph.n:
        raise ValueError("One weight per node is required.")
    template.validate()
    node = DecompNode(0, template, symbolic)
    return DecompList(mode, (node,), template.graph.n, origins={0: template})


def _replace(lst: DecompList, idx: int, master: DecompNode, servant: DecompNode, step: DecompStep) -> DecompList:
    nodes = lst.nodes[:idx] + (master, servant) + lst.nodes[idx + 1 :]
    after = Potentials.of(nodes)
    step = replace(step, before=Potentials.of(lst.nodes), after=after)
    origins = dict(lst.origins)
    origins[servant.uid] = servant.template
    return DecompList(lst.mode, nodes, lst.n, lst.steps + (step,), origins, lst.next_uid + 1)


def _check_area(parent: RootedTemplate, master: RootedTemplate, servant: RootedTemplate, added: int = 0) -> None:
    if popcount(parent.area) + added != popcount(master.area) + popcount(servant.area):
        raise BoundViolated("Areas of master and servant do not split the area of the parent.")


# -------------- template decomposition --------------
def decompose_template(lst: DecompList, idx: int, sep: Separation) -> DecompList:
    """Replace node ``idx`` by the master template and insert its servant right after it.

    Raises
    ------
    NotFitting
        If a region straddles the cutset or splits one of its blocks.
    RootNotInMaster
        If the root meets V2.
    """
    node = lst.nodes[idx]
    t = node.template
    g = t.graph
    sep.validate(g)
    if t.root & ~sep.master_side:
        raise RootNotInMaster()
    if not fits(sep, t.regions):
        raise NotFitting()
    step, servant_uid = len(lst.steps), lst.next_uid

    q = quotient_by_transversal(g, sep.v2, sep.grouping)
    servant_graph, servant_order, targets = q.graph, q.order, q.targets
    keep = sep.v2 | mask_of(servant_order)
    servant_regions = []
    master_regions = []
    order = list(bits(sep.master_side))
    for region in t.regions:
        if region.support & sep.v2:
            blocks = tuple(squeeze(block & keep, servant_order) for block in region.grouping.blocks)
            servant_regions.append(replace(region, grouping=Grouping(blocks)))
        else:
            blocks = tuple(squeeze(block, order) for block in region.grouping.blocks)
            master_regions.append(replace(region, grouping=Grouping(blocks)))
    servant_template = RootedTemplate(servant_graph, mask_of(targets), tuple(servant_regions), root_tag=f"u{step}")
    servant_weights = tuple(node.weights[v] if sep.v2 >> v & 1 else ZERO for v in servant_order)

    master_blocks = tuple(squeeze(block, order) for block in sep.grouping.blocks)
    link = Region(Grouping(master_blocks), pattern_graph(g, sep.grouping), None, servant_uid, targets, tag=f"u{step}")
    master_template = RootedTemplate(
        induced_subgraph(g, sep.master_side), squeeze(t.root, order), tuple(master_regions) + (link,), t.root_tag
    )
    _check_area(t, master_template, servant_template)

    master = DecompNode(
        node.uid,
        master_template,
        tuple(node.weights[v] for v in order),
        node.offset,
        Incoming(Origin.MASTER, node.uid, sep.kind, step),
    )
    incoming = Incoming(Origin.SERVANT, node.uid, sep.kind, step)
    servant = DecompNode(servant_uid, servant_template, servant_weights, ZERO, incoming)
    record = DecompStep(
        step=step,
        kind=sep.kind,
        index=idx,
        master=node.uid,
        servant=servant_uid,
        separation=sep,
        parent=g,
        master_map=tuple(order),
        servant_map=tuple(servant_order),
        blocks=master_blocks,
        targets=targets,
        master_area=sep.master_side & ~t.root,
        servant_area=sep.v2,
    )
    logger.debug(f"template step {step}: node {node.uid} split off servant {servant_uid} on {g.names(sep.v2)}")
    return _replace(lst, idx, master, servant, record)


# -------------- linearized decomposition --------------
def _normalize(g: Graph, sep: Separation) -> Separation:
    """A linearizable cutset with A2 empty and U not a clique is a clique cutset (V1 ∪ A1, K, V2)."""
    if sep.a2 or g.is_clique(sep.u):
        return sep
    return one_lin(g, sep.v1 | sep.a1, 0, sep.k, 0, sep.v2)


def _check_progress(before: Potentials, after: Potentials, special: bool, n: int) -> None:
    if special:
        if after.load != before.load or after.pos != before.pos or after.rootcount >= before.rootcount:
            raise BoundViolated(f"Special decomposition did not shrink the roots: {before} -> {after}.")
        return
    if after.load > before.load or after.pos < before.pos or after.rootcount > before.rootcount + n - 1:
        raise BoundViolated(f"Normal decomposition broke the potentials: {before} -> {after}.")
    if not (after.load < before.load or after.pos > before.pos):
        raise BoundViolated(f"Normal decomposition made no progress: {before} -> {after}.")


def decompose_linearized(lst: DecompList, idx: int, sep: Separation) -> DecompList:
    """0- or 1-linearized decomposition of a node with a clique root.

    The master keeps V1 ∪ U, plus the lowest node r of A2 relabelled as a
    linearizing node when U is not a clique. Weight patches read the servant
    table d through symbolic terms:

    * U a clique: σ = d(∅), γ_u = d(hom {u}) − d(∅);
    * otherwise: σ = d({ã}), γ_r = d(∅) − d({ã}), γ = 0 on A1, and
      γ_k = d({k̃}) − d({ã}) for k ~ r, d({k̃}) − d(∅) for k ≁ r.

    Raises
    ------
    RootNotClique
        If the root is not a clique.
    NotProper
        If the graph is a near-clique.
    """
    node = lst.nodes[idx]
    t = node.template
    g = t.graph
    if t.regions:
        raise InvalidSeparation("Linearized lists carry no regions.")
    if not g.is_clique(t.root):
        raise RootNotClique()
    if near_clique(g):
        raise NotProper()
    sep.validate(g)
    if t.root & ~sep.master_side:
        raise RootNotInMaster()
    sep = _normalize(g, sep)
    step, servant_uid = len(lst.steps), lst.next_uid

    q = quotient_by_transversal(g, sep.v2, sep.grouping)
    servant_graph, servant_order, targets = q.graph, q.order, q.targets
    servant_root = mask_of(targets)
    if not servant_graph.is_clique(servant_root):
        raise StructuralConditionFailed("Transversal of the cutset must be a clique.")

    def key(v: int) -> NodeSet:
        return 1 << targets[sep.grouping.block_of(v)]

    gamma: dict[int, SymbolicWeight] = {}
    r: int | None = None
    if g.is_clique(sep.u):
        sigma = entry(servant_uid, 0)
        for u in bits(sep.u):
            gamma[u] = gap(servant_uid, key(u), 0)
    else:
        if sep.a1 not in sep.grouping.blocks:
            raise StructuralConditionFailed("A1 must form a single block.")
        r = lowest(sep.a2)
        a_key = key(lowest(sep.a1))
        sigma = entry(servant_uid, a_key)
        gamma[r] = gap(servant_uid, 0, a_key)
        for k in bits(sep.k):
            gamma[k] = gap(servant_uid, key(k), a_key if g.has_edge(k, r) else 0)

    kept = sep.master_side | (0 if r is None else 1 << r)
    order = list(bits(kept))
    master_graph = induced_subgraph(g, kept)
    lin = None
    if r is not None:
        lin = order.index(r)
        master_graph = master_graph.relabel(lin, Label(LabelKind.LIN, f"r{step}"))
    master_weights = tuple(
        gamma[v] if v == r else node.weights[v] + gamma.get(v, ZERO) for v in order
    )
    master_template = RootedTemplate(master_graph, squeeze(t.root, order), (), t.root_tag)
    servant_template = RootedTemplate(servant_graph, servant_root, (), root_tag=f"u{step}")
    _check_area(t, master_template, servant_template, 0 if r is None else 1)
    servant_weights = tuple(node.weights[v] if sep.v2 >> v & 1 else ZERO for v in servant_order)

    master = DecompNode(
        node.uid,
        master_template,
        master_weights,
        node.offset + sigma,
        Incoming(Origin.MASTER, node.uid, sep.kind, step),
    )
    incoming = Incoming(Origin.SERVANT, node.uid, sep.kind, step)
    servant = DecompNode(servant_uid, servant_template, servant_weights, ZERO, incoming)
    record = DecompStep(
        step=step,
        kind=sep.kind,
        index=idx,
        master=node.uid,
        servant=servant_uid,
        separation=sep,
        parent=g,
        master_map=tuple(None if v == r else v for v in order),
        servant_map=tuple(servant_order),
        blocks=tuple(squeeze(block, order) for block in sep.grouping.blocks),
        targets=targets,
        master_area=sep.master_side & ~t.root,
        servant_area=sep.v2,
        lin=lin,
    )
    out = _replace(lst, idx, master, servant, record)
    _check_progress(Potentials.of(lst.nodes), Potentials.of(out.nodes), master_template.load == -1, lst.n)
    logger.debug(
        f"linearized step {step}: node {node.uid} split off servant {servant_uid} "
        f"({'0' if r is None else '1'}-linearized)"
    )
    return out


# -------------- bounds and trace --------------
@dataclass(frozen=True)
class BoundReport:
    mode: ListMode
    length: int
    nontrivial: int
    trivial: int
    potentials: tuple[Potentials, ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "mode": self.mode.value,
            "length": self.length,
            "nontrivial": self.nontrivial,
            "trivial": self.trivial,
            "potentials": [{"load": p.load, "pos": p.pos, "rootcount": p.rootcount} for p in self.potentials],
        }


def assert_bounds(lst: DecompList) -> BoundReport:
    """Check rightward links and the length bounds of the list.

    Raises
    ------
    BoundViolated
        If a link points leftward or the list outgrows its bound.
    """
    for i, node in enumerate(lst.nodes):
        for uid in node.links:
            if lst.position(uid) <= i:
                raise BoundViolated(f"Node {node.uid} reads servant {uid} which is not to its right.")
    n = lst.n
    trivial = sum(1 for node in lst.nodes if node.trivial)
    nontrivial = len(lst.nodes) - trivial
    if lst.mode is ListMode.TEMPLATE:
        if nontrivial > n or trivial > 2 * n * n:
            raise BoundViolated(f"{nontrivial} non-trivial and {trivial} trivial templates for {n} nodes.")
    elif len(lst.nodes) > max(n * n, 1):
        raise BoundViolated(f"Linearized list of length {len(lst.nodes)} for {n} nodes.")
    trace = [Potentials.of(lst.nodes[:1]) if not lst.steps else lst.steps[0].before] + [s.after for s in lst.steps]
    return BoundReport(lst.mode, len(lst.nodes), nontrivial, trivial, tuple(p for p in trace if p is not None))


def trace(lst: DecompList) -> list[dict[str, Any]]:
    return [step.to_trace() for step in lst.steps]
