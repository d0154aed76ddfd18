from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import Enum
from typing import Any

from ..core.config import Limits, default_limits
from ..core.exceptions.decomposition_exceptions import InvalidSeparation, RootNotClique
from ..core.exceptions.graph_exceptions import CapExceeded, InvalidGrouping
from ..core.logger import logging
from .core import (
    Graph,
    Grouping,
    NodeSet,
    bits,
    coarsest_grouping,
    mask_of,
    popcount,
    singletons,
    validate_grouping,
)
from .recognition import induced_path, near_clique
from .templates import Region

logger = logging.getLogger(__name__)


class SeparationKind(str, Enum):
    NODE_CUT = "node_cut"
    CLIQUE_CUT = "clique_cut"
    ONE_LIN = "one_lin"
    AMALGAM = "amalgam"
    GEN_AMALGAM = "gen_amalgam"
    FAN_BASE = "fan_base"


@dataclass(frozen=True)
class Separation:
    """A typed node cutset separation.

    Every kind exposes (V1, U, V2) plus a grouping of U. Amalgams also carry
    (A1, K, A2) with U = A1 ∪ K and A2 ⊆ V2; linearizable cutsets use the same
    fields. Generalized amalgams keep their blocks in ``blocks``.
    """

    kind: SeparationKind
    v1: NodeSet
    u: NodeSet
    v2: NodeSet
    grouping: Grouping
    a1: NodeSet = 0
    k: NodeSet = 0
    a2: NodeSet = 0
    blocks: tuple[NodeSet, ...] = ()
    base: tuple[int, int, int] | None = None

    @property
    def master_side(self) -> NodeSet:
        return self.v1 | self.u

    def to_trace(self, g: Graph) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "V1": g.names(self.v1),
            "U": g.names(self.u),
            "V2": g.names(self.v2),
            "grouping": [g.names(block) for block in self.grouping.blocks],
        }

    def validate(self, g: Graph) -> None:
        if self.kind is SeparationKind.GEN_AMALGAM:
            _validate_gen_amalgam(g, self.u, self.blocks)
            return
        _validate_node_cut(g, self.v1, self.u, self.v2, self.grouping)
        if self.kind is SeparationKind.CLIQUE_CUT and not g.is_clique(self.u):
            raise InvalidSeparation("Clique cutset is not a clique.")
        if self.kind in (SeparationKind.ONE_LIN, SeparationKind.AMALGAM):
            _validate_one_lin(g, self)
        if self.kind is SeparationKind.AMALGAM:
            _validate_amalgam(g, self.v1, self.a1, self.k, self.a2, self.v2 & ~self.a2)
        if self.kind is SeparationKind.FAN_BASE and popcount(self.u) != 3:
            raise InvalidSeparation("Fan base must be a node triple.")


# -------------- constructors and checks --------------
def _validate_node_cut(g: Graph, v1: NodeSet, u: NodeSet, v2: NodeSet, grouping: Grouping) -> None:
    if v1 & u or v1 & v2 or u & v2 or v1 | u | v2 != g.full:
        raise InvalidSeparation("V1, U, V2 must partition the nodes.")
    if not g.anticomplete(v1, v2):
        raise InvalidSeparation("V1 and V2 must be nonadjacent.")
    if not v2:
        raise InvalidSeparation("V2 must be nonempty.")
    if popcount(v1 | u) <= len(grouping):
        raise InvalidSeparation("Master side must exceed the grouping size.")
    if grouping.support != u:
        raise InvalidSeparation("Grouping must partition U.")
    try:
        validate_grouping(g, grouping, v2 | u)
    except InvalidGrouping as err:
        raise InvalidSeparation(err.message) from err


def _validate_one_lin(g: Graph, sep: Separation) -> None:
    if not g.is_clique(sep.k):
        raise InvalidSeparation("K must be a clique.")
    if sep.a1 | sep.k != sep.u or sep.a1 & sep.k:
        raise InvalidSeparation("U must split into A1 and K.")
    if sep.a2 & ~sep.v2:
        raise InvalidSeparation("A2 must lie in V2.")
    if not g.fully_adjacent(sep.a1, sep.k | sep.a2):
        raise InvalidSeparation("A1 must be fully adjacent to K and A2.")
    if not g.anticomplete(sep.a1, sep.v2 & ~sep.a2):
        raise InvalidSeparation("A1 must not see V2 outside A2.")


def _validate_amalgam(g: Graph, v1: NodeSet, a1: NodeSet, k: NodeSet, a2: NodeSet, v2: NodeSet) -> None:
    if not a1 or not a2 or not g.fully_adjacent(a1, a2):
        raise InvalidSeparation("A1 and A2 must be nonempty and fully adjacent.")
    if not g.is_clique(k) or not g.fully_adjacent(k, a1 | a2):
        raise InvalidSeparation("K must be a clique fully adjacent to A1 and A2.")
    if not g.anticomplete(v1, v2 | a2) or not g.anticomplete(v2, v1 | a1):
        raise InvalidSeparation("Each V side must avoid the opposite side.")
    if popcount(v1 | a1) < 2 or popcount(v2 | a2) < 2:
        raise InvalidSeparation("Both amalgam sides need two nodes.")


def _validate_gen_amalgam(g: Graph, u: NodeSet, blocks: Sequence[NodeSet]) -> None:
    seen = u
    for w in blocks:
        if not w or w & seen:
            raise InvalidSeparation("Blocks must be nonempty and disjoint from U and each other.")
        seen |= w
    if seen != g.full:
        raise InvalidSeparation("U and the blocks must cover the graph.")
    for w in blocks:
        boundary = mask_of(v for v in bits(w) if g.adjacency[v] & ~(w | u))
        if not g.fully_adjacent(boundary, u):
            raise InvalidSeparation("Boundary nodes of a block must be fully adjacent to U.")


def node_cut(g: Graph, v1: NodeSet, u: NodeSet, v2: NodeSet, grouping: Grouping | None = None) -> Separation:
    grouping = grouping or coarsest_grouping(g, u, v2 | u)
    sep = Separation(SeparationKind.NODE_CUT, v1, u, v2, grouping)
    sep.validate(g)
    return sep


def clique_cut(g: Graph, v1: NodeSet, u: NodeSet, v2: NodeSet) -> Separation:
    sep = Separation(SeparationKind.CLIQUE_CUT, v1, u, v2, singletons(u), k=u)
    sep.validate(g)
    return sep


def one_lin(
    g: Graph, v1: NodeSet, a1: NodeSet, k: NodeSet, a2: NodeSet, v2: NodeSet, grouping: Grouping | None = None
) -> Separation:
    """Linearizable cutset U = A1 ∪ K; ``v2`` must already contain ``a2``.

    The default grouping is A1 as one block plus the singletons of K.
    """
    if grouping is None:
        grouping = Grouping(tuple(([a1] if a1 else []) + [1 << v for v in bits(k)]))
    sep = Separation(SeparationKind.ONE_LIN, v1, a1 | k, v2, grouping, a1=a1, k=k, a2=a2)
    sep.validate(g)
    return sep


def amalgam(g: Graph, v1: NodeSet, a1: NodeSet, k: NodeSet, a2: NodeSet, v2: NodeSet) -> Separation:
    """Amalgam (V1, A1, K, A2, V2) viewed from side one: U = A1 ∪ K, servant side V2 ∪ A2."""
    blocks = [a1] + [1 << v for v in bits(k)]
    sep = Separation(SeparationKind.AMALGAM, v1, a1 | k, v2 | a2, Grouping(tuple(blocks)), a1=a1, k=k, a2=a2)
    sep.validate(g)
    return sep


def gen_amalgam(g: Graph, u: NodeSet, blocks: Iterable[NodeSet]) -> Separation:
    ordered = tuple(sorted(blocks))
    grouping = singletons(u) if u else Grouping(())
    sep = Separation(SeparationKind.GEN_AMALGAM, 0, u, g.full & ~u, grouping, blocks=ordered)
    sep.validate(g)
    return sep


def fan_base(g: Graph, base: tuple[int, int, int], v1: NodeSet, v2: NodeSet) -> Separation:
    u = mask_of(base)
    sep = Separation(SeparationKind.FAN_BASE, v1, u, v2, singletons(u), base=base)
    sep.validate(g)
    return sep


# -------------- clique cutsets --------------
def minimal_separators(g: Graph) -> list[NodeSet]:
    """All minimal separators of a connected graph, by closing the seeds N(C) for C a component of G − N[v]."""
    seps: set[NodeSet] = set()
    queue: list[NodeSet] = []

    def collect(removed: NodeSet) -> None:
        for comp in g.components(g.full & ~removed):
            s = g.neighborhood(comp)
            if s and s not in seps:
                seps.add(s)
                queue.append(s)

    for v in range(g.n):
        collect(g.adjacency[v] | 1 << v)
    while queue:
        s = queue.pop()
        for x in bits(s):
            collect(s | g.adjacency[x])
    return sorted(seps)


def find_clique_cutset(g: Graph, avoid: NodeSet = 0) -> Separation | None:
    """Clique cutset whose servant V2 is the smallest component of G − U avoiding ``avoid``."""
    comps = g.components()
    if len(comps) > 1:
        free = [c for c in comps if not c & avoid]
        if free:
            v2 = min(free, key=lambda c: (popcount(c), c))
            return clique_cut(g, g.full & ~v2, 0, v2)
        return None
    best: tuple[int, NodeSet, NodeSet] | None = None
    for s in minimal_separators(g):
        if not g.is_clique(s):
            continue
        for comp in g.components(g.full & ~s):
            if comp & avoid:
                continue
            key = (popcount(comp), comp, s)
            if best is None or key < best:
                best = key
    if best is None:
        return None
    _, v2, s = best
    return clique_cut(g, g.full & ~(s | v2), s, v2)


# -------------- amalgams --------------
def cliques_within(g: Graph, x: NodeSet) -> list[NodeSet]:
    sets = [0]
    for v in bits(x):
        nbrs = g.adjacency[v]
        sets += [s | 1 << v for s in sets if s & ~nbrs == 0]
    sets.sort()
    return sets


def _split(g: Graph, a1: int, a2: int, k: NodeSet) -> tuple[NodeSet, NodeSet] | None:
    """Sides of a split of G − K through the edge a1a2 whose linked parts see all of K.

    Placing p on side one and q on side two is allowed only when p ~ q exactly
    when p ~ a2 and q ~ a1; forbidden placements propagate as implications.
    """
    rest = g.full & ~k
    seeing_k = mask_of(v for v in bits(rest) if g.fully_adjacent(k, 1 << v))
    side1, side2 = 1 << a1, 1 << a2
    for t in bits(rest & ~(side1 | side2) & ~seeing_k):
        near1, near2 = g.has_edge(t, a1), g.has_edge(t, a2)
        if near1 and near2:
            return None
        if near2:
            side2 |= 1 << t
        elif near1:
            side1 |= 1 << t

    def bad(p: int, q: int) -> bool:
        return g.has_edge(p, q) != (g.has_edge(p, a2) and g.has_edge(q, a1))

    def close(s1: NodeSet, s2: NodeSet) -> tuple[NodeSet, NodeSet] | None:
        changed = True
        while changed:
            changed = False
            for p in bits(s1):
                for q in bits(rest & ~s1):
                    if bad(p, q):
                        s1 |= 1 << q
                        changed = True
            for q in bits(s2):
                for p in bits(rest & ~s2):
                    if bad(p, q):
                        s2 |= 1 << p
                        changed = True
            if s1 & s2:
                return None
        return s1, s2

    closed = close(side1, side2)
    if closed is None:
        return None
    side1, side2 = closed
    if popcount(side2) < 2:
        for v in bits(rest & ~(side1 | side2)):
            grown = close(side1, side2 | 1 << v)
            if grown is not None and popcount(rest & ~grown[1]) >= 2:
                side1, side2 = grown
                break
        else:
            return None
    side1 = rest & ~side2
    if popcount(side1) < 2:
        return None
    return side1, side2


def find_amalgam(g: Graph, limits: Limits | None = None) -> Separation | None:
    """Amalgam with the smallest servant side, by enumeration over edges a1a2 and cliques K.

    Raises
    ------
    CapExceeded
        Above the amalgam cap.
    """
    limits = limits or default_limits()
    if g.n > limits.amalgam_cap:
        raise CapExceeded(f"Amalgam search limited to {limits.amalgam_cap} nodes, got {g.n}.")
    best: tuple[tuple[int, NodeSet, NodeSet], Separation] | None = None
    for a1, a2 in g.edges():
        for k in cliques_within(g, g.adjacency[a1] & g.adjacency[a2]):
            sides = _split(g, a1, a2, k)
            if sides is None:
                continue
            side1, side2 = sides
            if popcount(side2) > popcount(side1):
                side1, side2 = side2, side1
                x1, x2 = a2, a1
            else:
                x1, x2 = a1, a2
            part1 = side1 & g.adjacency[x2]
            part2 = side2 & g.adjacency[x1]
            try:
                sep = amalgam(g, side1 & ~part1, part1, k, part2, side2 & ~part2)
            except InvalidSeparation:
                continue
            key = (popcount(side2), side2, k)
            if best is None or key < best[0]:
                best = (key, sep)
    if best is not None:
        logger.debug(f"amalgam found with servant side {g.names(best[1].v2)}")
    return None if best is None else best[1]


def amalgam_exhaustive(g: Graph) -> bool:
    """Existence of an amalgam by trying every assignment of nodes to the five parts."""
    n = g.n
    for code in range(5**n):
        parts = [0] * 5
        c = code
        for v in range(n):
            parts[c % 5] |= 1 << v
            c //= 5
        v1, a1, k, a2, v2 = parts
        try:
            _validate_amalgam(g, v1, a1, k, a2, v2)
        except InvalidSeparation:
            continue
        return True
    return False


def find_adjacent_twins(g: Graph, z: NodeSet = 0) -> Separation | None:
    """Adjacent twins {u, v} holding the whole root, as a grouping with V1 empty."""
    for u, v in g.edges():
        pair = 1 << u | 1 << v
        if z & ~pair or g.adjacency[u] | 1 << u != g.adjacency[v] | 1 << v:
            continue
        rest = g.full & ~pair
        if rest:
            return one_lin(g, 0, 0, pair, 0, rest, Grouping((pair,)))
    return None


def linearizable_from_amalgam(g: Graph, am: Separation, z: NodeSet) -> Separation:
    """Turn an amalgam into a linearizable cutset whose master side holds the clique root Z."""
    v1, a1, k, a2, v2 = am.v1, am.a1, am.k, am.a2, am.v2 & ~am.a2
    if not z & ~(v1 | a1 | k):
        return one_lin(g, v1, a1, k, a2, v2 | a2)
    if not z & ~(v2 | a2 | k):
        return one_lin(g, v2, a2, k, a1, v1 | a1)
    # Z meets both A1 and A2
    outside = g.full & ~(k | z)
    if popcount(outside & (a2 | v2)) < 2:
        v1, a1, a2, v2 = v2, a2, a1, v1
    k2 = k | (z & a2)
    rest2 = a2 & ~z
    return one_lin(g, v1, a1, k2, rest2, v2 | rest2)


def find_one_linearizable(g: Graph, z: NodeSet = 0, limits: Limits | None = None) -> Separation | None:
    """Clique cutset (preferred) or amalgam turned into a linearizable cutset with Z on the master side."""
    if not g.is_clique(z):
        raise RootNotClique()
    if near_clique(g):
        return None
    cut = find_clique_cutset(g, avoid=z)
    if cut is not None:
        return one_lin(g, cut.v1, 0, cut.u, 0, cut.v2)
    try:
        am = find_amalgam(g, limits)
    except CapExceeded:
        logger.info(f"amalgam search skipped on {g.n} nodes")
        am = None
    if am is None:
        return None
    return linearizable_from_amalgam(g, am, z)


# -------------- fitting and fan bases --------------
def fits(sep: Separation, regions: Sequence[Region]) -> bool:
    for region in regions:
        x = region.support
        if x & ~(sep.v1 | sep.u) and x & ~(sep.v2 | sep.u):
            return False
        for block in region.grouping.blocks:
            if any(y & block and y & ~block for y in sep.grouping.blocks):
                return False
    return True


def find_fan_base(g: Graph, z: NodeSet = 0, regions: Sequence[Region] = ()) -> Separation | None:
    """Induced path u-c-v and a component W of G − {u, c, v} such that W ∪ {u, v} is an induced u..v path.

    The fan G_{W ∪ {u,c,v}} becomes the servant; the smallest W wins.
    """
    best: tuple[tuple[int, NodeSet, NodeSet], Separation] | None = None
    for c in range(g.n):
        nbrs = list(bits(g.adjacency[c]))
        for i, u in enumerate(nbrs):
            for v in nbrs[i + 1 :]:
                if g.has_edge(u, v):
                    continue
                base = 1 << u | 1 << c | 1 << v
                for w in g.components(g.full & ~base):
                    if w & z:
                        continue
                    path = induced_path(g, w | 1 << u | 1 << v)
                    if path is None or {path[0], path[-1]} != {u, v}:
                        continue
                    v1 = g.full & ~(base | w)
                    if not v1:
                        continue
                    try:
                        sep = fan_base(g, (u, c, v), v1, w)
                    except InvalidSeparation:
                        continue
                    if not fits(sep, regions):
                        continue
                    key = (popcount(w), w, base)
                    if best is None or key < best[0]:
                        best = (key, sep)
    return None if best is None else best[1]
