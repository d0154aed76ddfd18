"""Graphs over dense integer ids with provenance labels, and the set algebra the engines share.

Node sets are plain ``int`` bitmasks: bit ``i`` stands for node ``i``. Python integers
are arbitrary width, so the same code serves small and large graphs.
"""

from collections.abc import Callable, Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import networkx as nx

from ..core.config import Limits, default_limits
from ..core.exceptions.graph_exceptions import CapExceeded, InvalidGraph, InvalidGrouping, RecordTooLarge

NodeSet = int


# -------------- node sets --------------
def bits(mask: NodeSet) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(nodes: Iterable[int]) -> NodeSet:
    mask = 0
    for v in nodes:
        mask |= 1 << v
    return mask


def popcount(mask: NodeSet) -> int:
    return mask.bit_count()


def lowest(mask: NodeSet) -> int:
    if not mask:
        raise ValueError("empty node set has no lowest node")
    return (mask & -mask).bit_length() - 1


def spread(mask: NodeSet, order: Sequence[int]) -> NodeSet:
    """Map a set over ``range(len(order))`` to the ids listed in ``order``."""
    return mask_of(order[i] for i in bits(mask))


def squeeze(mask: NodeSet, order: Sequence[int]) -> NodeSet:
    """Inverse of :func:`spread` for the part of ``mask`` covered by ``order``."""
    return mask_of(i for i, v in enumerate(order) if mask >> v & 1)


# -------------- labels --------------
class LabelKind(str, Enum):
    ORIGINAL = "original"
    TRANSVERSAL = "transversal"
    RECORD = "record"
    LIN = "lin"
    LIFT = "lift"
    POWER = "power"


@dataclass(frozen=True, order=True)
class Label:
    kind: LabelKind
    name: str

    def __str__(self) -> str:
        if self.kind is LabelKind.ORIGINAL:
            return self.name
        return f"{self.kind.value}:{self.name}"


def original(name: str | int) -> Label:
    return Label(LabelKind.ORIGINAL, str(name))


# -------------- graph --------------
@dataclass(frozen=True)
class Graph:
    """Finite simple undirected graph.

    Attributes
    ----------
    adjacency : tuple[int, ...]
        ``adjacency[v]`` is the neighbor set of ``v``.
    labels : tuple[Label, ...]
        Provenance of each node; unique per graph.
    """

    adjacency: tuple[NodeSet, ...]
    labels: tuple[Label, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.labels:
            object.__setattr__(self, "labels", tuple(original(v) for v in range(len(self.adjacency))))
        if len(self.labels) != len(self.adjacency):
            raise InvalidGraph("Every node needs exactly one label.")
        if len(set(self.labels)) != len(self.labels):
            raise InvalidGraph("Node labels must be unique.")
        full = (1 << len(self.adjacency)) - 1
        for v, nbrs in enumerate(self.adjacency):
            if nbrs >> v & 1:
                raise InvalidGraph(f"Self-loop on node {self.labels[v]}.")
            if nbrs & ~full:
                raise InvalidGraph(f"Node {self.labels[v]} has a neighbor outside the graph.")
            for u in bits(nbrs):
                if not self.adjacency[u] >> v & 1:
                    raise InvalidGraph(f"Edge {self.labels[v]}-{self.labels[u]} is not symmetric.")

    @classmethod
    def from_edges(
        cls, n: int, edges: Iterable[tuple[int, int]], names: Sequence[str | int | Label] | None = None
    ) -> "Graph":
        adjacency = [0] * n
        for u, v in edges:
            if u == v:
                raise InvalidGraph(f"Self-loop on node {u}.")
            adjacency[u] |= 1 << v
            adjacency[v] |= 1 << u
        labels: tuple[Label, ...] = ()
        if names is not None:
            labels = tuple(name if isinstance(name, Label) else original(name) for name in names)
        return cls(tuple(adjacency), labels)

    @property
    def n(self) -> int:
        return len(self.adjacency)

    @property
    def full(self) -> NodeSet:
        return (1 << self.n) - 1

    def neighbors(self, v: int) -> NodeSet:
        return self.adjacency[v]

    def neighborhood(self, x: NodeSet, within: NodeSet | None = None) -> NodeSet:
        """N(X) inside ``within``: nodes outside X with a neighbor in X."""
        out = 0
        for v in bits(x):
            out |= self.adjacency[v]
        out &= ~x
        return out if within is None else out & within

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def is_stable(self, x: NodeSet) -> bool:
        return all(not self.adjacency[v] & x for v in bits(x))

    def is_clique(self, x: NodeSet) -> bool:
        return all((x & ~(1 << v)) & ~self.adjacency[v] == 0 for v in bits(x))

    def fully_adjacent(self, x: NodeSet, y: NodeSet) -> bool:
        return all(y & ~self.adjacency[v] == 0 for v in bits(x))

    def anticomplete(self, x: NodeSet, y: NodeSet) -> bool:
        return all(not self.adjacency[v] & y for v in bits(x))

    def degree(self, v: int) -> int:
        return popcount(self.adjacency[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adjacency[u] >> (u + 1) << (u + 1))]

    def name(self, v: int) -> str:
        return str(self.labels[v])

    def names(self, x: NodeSet) -> list[str]:
        return [self.name(v) for v in bits(x)]

    def index(self, label: Label | str) -> int:
        if isinstance(label, str):
            label = original(label)
        return self.labels.index(label)

    def components(self, within: NodeSet | None = None) -> list[NodeSet]:
        """Connected components of the subgraph induced by ``within``, ordered by lowest node."""
        rest = self.full if within is None else within
        out = []
        while rest:
            comp = frontier = rest & -rest
            while frontier:
                frontier = self.neighborhood(frontier, rest) & ~comp
                comp |= frontier
            out.append(comp)
            rest &= ~comp
        return out

    def relabel(self, v: int, label: Label) -> "Graph":
        labels = list(self.labels)
        labels[v] = label
        return Graph(self.adjacency, tuple(labels))

    def to_networkx(self) -> nx.Graph:
        h = nx.Graph()
        h.add_nodes_from((v, {"label": str(self.labels[v])}) for v in range(self.n))
        h.add_edges_from(self.edges())
        return h


# -------------- induced subgraphs --------------
def induced_subgraph(g: Graph, s: NodeSet) -> Graph:
    """``G_S`` with nodes renumbered densely in increasing order of their old ids."""
    order = list(bits(s))
    adjacency = tuple(squeeze(g.adjacency[v] & s, order) for v in order)
    return Graph(adjacency, tuple(g.labels[v] for v in order))


def delete(g: Graph, x: NodeSet) -> Graph:
    return induced_subgraph(g, g.full & ~x)


def isomorphic(g1: Graph, g2: Graph, limits: Limits | None = None) -> bool:
    limits = limits or default_limits()
    if max(g1.n, g2.n) > limits.isomorphism_cap:
        raise CapExceeded(f"Isomorphism test limited to {limits.isomorphism_cap} nodes.")
    return bool(nx.is_isomorphic(g1.to_networkx(), g2.to_networkx()))


# -------------- stable sets --------------
def enumerate_stable_sets(
    g: Graph, within: NodeSet | None = None, limits: Limits | None = None, cap: int | None = None
) -> list[NodeSet]:
    """All stable sets of ``G_within`` in increasing bitmask order.

    Raises
    ------
    CapExceeded
        If ``within`` has more nodes than the enumeration cap.
    """
    limits = limits or default_limits()
    within = g.full if within is None else within
    cap = limits.stable_enum_cap if cap is None else cap
    if popcount(within) > cap:
        raise CapExceeded(f"Stable set enumeration limited to {cap} nodes, got {popcount(within)}.")
    sets = [0]
    for v in bits(within):
        nbrs = g.adjacency[v]
        sets += [s | 1 << v for s in sets if not s & nbrs]
    sets.sort()
    return sets


def stable_subsets(g: Graph, base: NodeSet, limit: int) -> list[NodeSet]:
    """Stable subsets of ``base`` without a node-count cap, failing once ``limit`` sets are exceeded."""
    sets = [0]
    for v in bits(base):
        nbrs = g.adjacency[v]
        sets += [s | 1 << v for s in sets if not s & nbrs]
        if len(sets) > limit:
            raise RecordTooLarge(f"More than {limit} stable sets in {g.names(base)}.")
    sets.sort()
    return sets


def weight_of(w: Sequence[Fraction], s: NodeSet) -> Fraction:
    total = Fraction(0)
    for v in bits(s):
        total += w[v]
    return total


# -------------- groups and groupings --------------
def is_group(g: Graph, x: NodeSet, within: NodeSet | None = None) -> bool:
    """True iff X is nonempty and fully adjacent to its neighborhood inside ``within``."""
    return x != 0 and g.fully_adjacent(x, g.neighborhood(x, within))


def maximal_group(g: Graph, u: NodeSet, v: int, within: NodeSet | None = None) -> NodeSet:
    """Peel U down to the largest group containing ``v``.

    Nodes whose neighbors outside the current set differ from those of ``v`` are
    removed until every remaining node agrees with ``v``.
    """
    if not u >> v & 1:
        raise ValueError("v must belong to u")
    scope = g.full if within is None else within
    x = u
    while True:
        target = g.adjacency[v] & scope & ~x
        bad = next((y for y in bits(x & ~(1 << v)) if g.adjacency[y] & scope & ~x != target), None)
        if bad is None:
            return x
        x &= ~(1 << bad)


@dataclass(frozen=True)
class Grouping:
    """Partition of ``support`` into blocks; block order is significant."""

    blocks: tuple[NodeSet, ...]

    def __post_init__(self) -> None:
        seen = 0
        for block in self.blocks:
            if not block:
                raise InvalidGrouping("Blocks must be nonempty.")
            if block & seen:
                raise InvalidGrouping("Blocks must be disjoint.")
            seen |= block

    @property
    def support(self) -> NodeSet:
        return mask_of(v for block in self.blocks for v in bits(block))

    def __len__(self) -> int:
        return len(self.blocks)

    def transversal(self) -> NodeSet:
        return mask_of(lowest(block) for block in self.blocks)

    def block_of(self, v: int) -> int:
        return next(i for i, block in enumerate(self.blocks) if block >> v & 1)

    def is_trivial(self) -> bool:
        return all(popcount(block) == 1 for block in self.blocks)


def singletons(u: NodeSet) -> Grouping:
    return Grouping(tuple(1 << v for v in bits(u)))


def validate_grouping(g: Graph, grouping: Grouping, within: NodeSet | None = None) -> None:
    """Check the group and region conditions inside the context ``G_within``."""
    for block in grouping.blocks:
        if not is_group(g, block, within):
            raise InvalidGrouping(f"{g.names(block)} is not a group.")
    for i, x in enumerate(grouping.blocks):
        for y in grouping.blocks[i + 1 :]:
            if not g.anticomplete(x, y) and not g.fully_adjacent(x, y):
                raise InvalidGrouping(f"Blocks {g.names(x)} and {g.names(y)} are adjacent but not fully adjacent.")


def coarsest_grouping(g: Graph, u: NodeSet, within: NodeSet | None = None) -> Grouping:
    if not u:
        raise InvalidGrouping("Cannot group an empty set.")
    blocks = []
    rest = u
    while rest:
        block = maximal_group(g, rest, lowest(rest), within)
        blocks.append(block)
        rest &= ~block
    return Grouping(tuple(blocks))


def pattern_graph(g: Graph, grouping: Grouping) -> Graph:
    """Quotient of the blocks: block ``i`` becomes node ``i``, edges where blocks are fully adjacent."""
    k = len(grouping)
    adjacency = [0] * k
    for i in range(k):
        for j in range(i + 1, k):
            if g.fully_adjacent(grouping.blocks[i], grouping.blocks[j]):
                adjacency[i] |= 1 << j
                adjacency[j] |= 1 << i
    labels = tuple(Label(LabelKind.TRANSVERSAL, "+".join(g.labels[v].name for v in bits(b))) for b in grouping.blocks)
    return Graph(tuple(adjacency), labels)


@dataclass(frozen=True)
class Quotient:
    graph: Graph
    order: tuple[int, ...]
    targets: tuple[int, ...]


def quotient_by_transversal(
    g: Graph, v2: NodeSet, grouping: Grouping, pick: Callable[[NodeSet], int] | None = None
) -> Quotient:
    """Servant graph on ``V2`` plus one transversal node per block.

    Returns the graph, the old id of every new node (``order``) and, per block,
    the new id of its transversal node (``targets``).
    """
    u = grouping.support
    validate_grouping(g, grouping, v2 | u)
    pick = pick or lowest
    reps = [pick(block) for block in grouping.blocks]
    sub = induced_subgraph(g, v2 | mask_of(reps))
    order = tuple(bits(v2 | mask_of(reps)))
    labels = list(sub.labels)
    targets = []
    for block, rep in zip(grouping.blocks, reps):
        i = order.index(rep)
        labels[i] = Label(LabelKind.TRANSVERSAL, "+".join(g.labels[v].name for v in bits(block)))
        targets.append(i)
    return Quotient(Graph(sub.adjacency, tuple(labels)), order, tuple(targets))


def hom(grouping: Grouping, s: NodeSet, targets: Sequence[int] | None = None) -> NodeSet:
    """Transversal nodes of the blocks met by ``s``."""
    out = 0
    for i, block in enumerate(grouping.blocks):
        if block & s:
            out |= 1 << (targets[i] if targets is not None else lowest(block))
    return out


# -------------- records and lifts --------------
def _set_name(g: Graph, t: NodeSet) -> str:
    return "{" + ",".join(g.labels[v].name for v in bits(t)) + "}"


def pattern_key(t: NodeSet) -> str:
    """Name of a set of pattern indices, e.g. ``[0,2]``."""
    return "[" + ",".join(str(i) for i in bits(t)) + "]"


@dataclass(frozen=True)
class RecordGraph:
    graph: Graph
    nodes: dict[NodeSet, int]


def add_record(
    g: Graph, a: NodeSet, tag: str = "", limits: Limits | None = None, grouping: Grouping | None = None
) -> RecordGraph:
    """G(A): a clique with one node r_T per stable T of G_A, r_T adjacent to A minus T.

    With a ``grouping`` of A the record runs over the stable sets of its
    pattern instead: keys are pattern sets and r_T sees the blocks outside T.

    Raises
    ------
    RecordTooLarge
        If G_A has more stable sets than the record cap.
    """
    limits = limits or default_limits()
    if grouping is None:
        stables = stable_subsets(g, a, limits.record_cap)
        covers = {t: t for t in stables}
        names = [_set_name(g, t) for t in stables]
    else:
        pattern = pattern_graph(g, grouping)
        stables = stable_subsets(pattern, pattern.full, limits.record_cap)
        covers = {t: mask_of(v for i in bits(t) for v in bits(grouping.blocks[i])) for t in stables}
        names = [pattern_key(t) for t in stables]
    n, k = g.n, len(stables)
    record = mask_of(range(n, n + k))
    adjacency = list(g.adjacency) + [0] * k
    nodes = {}
    for i, t in enumerate(stables):
        r = n + i
        nodes[t] = r
        outside = a & ~covers[t]
        adjacency[r] = (record & ~(1 << r)) | outside
        for v in bits(outside):
            adjacency[v] |= 1 << r
    labels = g.labels + tuple(Label(LabelKind.RECORD, f"{tag}{name}") for name in names)
    return RecordGraph(Graph(tuple(adjacency), labels), nodes)


def add_node(g: Graph, nbrs: NodeSet, label: Label) -> Graph:
    """G plus one node, numbered ``g.n``, adjacent to ``nbrs``."""
    v = g.n
    adjacency = [x | (1 << v if nbrs >> u & 1 else 0) for u, x in enumerate(g.adjacency)] + [nbrs]
    return Graph(tuple(adjacency), g.labels + (label,))


@dataclass(frozen=True)
class CliqueLift:
    graph: Graph
    order: tuple[int, ...]
    nodes: dict[NodeSet, int]


def clique_lift(g: Graph, u: NodeSet, tag: str = "", limits: Limits | None = None) -> CliqueLift:
    """Replace U by a clique with one node per stable S of G_U, S̃ adjacent to N(S) minus U.

    ``order`` lists the old ids of the kept nodes, ``nodes`` maps S to its lift node.
    """
    limits = limits or default_limits()
    stables = stable_subsets(g, u, limits.record_cap)
    order = tuple(bits(g.full & ~u))
    kept = len(order)
    k = len(stables)
    adjacency = [squeeze(g.adjacency[v] & ~u, order) for v in order] + [0] * k
    lift = mask_of(range(kept, kept + k))
    nodes = {}
    for i, s in enumerate(stables):
        r = kept + i
        nodes[s] = r
        outside = squeeze(g.neighborhood(s) & ~u, order)
        adjacency[r] = (lift & ~(1 << r)) | outside
        for v in bits(outside):
            adjacency[v] |= 1 << r
    lifted = tuple(Label(LabelKind.LIFT, f"{tag}{_set_name(g, s)}") for s in stables)
    labels = tuple(g.labels[v] for v in order) + lifted
    return CliqueLift(Graph(tuple(adjacency), labels), order, nodes)
