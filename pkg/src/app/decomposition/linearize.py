"""Linearizations [H, γ, σ] of nonlinear service terms.

A linearization of d over a node set A of H satisfies, for every stable T in A,
``max{γ(S): S stable in H, S ∩ A = T} = d(T) − σ``.
"""

from collections.abc import Callable, Mapping
from dataclasses import dataclass
from fractions import Fraction

from ..core.config import Limits
from ..core.exceptions.decomposition_exceptions import DNotMonotone, StructuralConditionFailed
from ..graphs.core import (
    Graph,
    Grouping,
    NodeSet,
    add_record,
    bits,
    enumerate_stable_sets,
    hom,
    induced_subgraph,
    mask_of,
    spread,
)
from ..graphs.templates import ServiceTable

ValueFunction = Callable[[NodeSet], Fraction]


@dataclass(frozen=True)
class Linearization:
    """Gadget graph ``h`` with node weights ``gamma`` and constant ``sigma``.

    ``origin[v]`` is the caller's id of node ``v`` of ``h`` or ``None`` for
    added nodes; ``a`` is the designated set in ``h`` ids.
    """

    h: Graph
    a: NodeSet
    gamma: tuple[Fraction, ...]
    sigma: Fraction
    origin: tuple[int | None, ...]

    def to_caller(self, s: NodeSet) -> NodeSet:
        return mask_of(self.origin[v] for v in bits(s) if self.origin[v] is not None)


def via_grouping(grouping: Grouping, table: ServiceTable) -> ValueFunction:
    """d(T) read off a pattern table through hom, block ``i`` being pattern node ``i``."""
    index = range(len(grouping))
    return lambda t: table[hom(grouping, t, index)]


def two_stable_union(h: Graph, u: NodeSet) -> NodeSet:
    """P: the nodes of U lying in some nonadjacent pair."""
    return mask_of(v for v in bits(u) if u & ~h.adjacency[v] & ~(1 << v))


def linearizable_by_one_node(h: Graph, u: NodeSet, grouping: Grouping, r: int | None) -> bool:
    """True iff P is fully adjacent to ``r`` and inside one block (or empty)."""
    p = two_stable_union(h, u)
    if not p:
        return True
    if r is None or not h.fully_adjacent(p, 1 << r):
        return False
    return any(p & ~block == 0 for block in grouping.blocks)


def linearize_from_table(
    h: Graph, u: NodeSet, grouping: Grouping, d: ServiceTable, r: int | None = None
) -> Linearization:
    """Linearize a pattern table over U with at most one extra node ``r`` of ``h``.

    With A the block holding P (or none): σ = d(Ã), γ_r = d(∅) − σ, and for
    u ∈ U, γ_u = d({ũ}) − σ when u ~ r, else d({ũ}) − d(∅).

    Raises
    ------
    DNotMonotone
        If d is negative somewhere or grows along inclusion.
    StructuralConditionFailed
        If P is not inside a block fully adjacent to ``r``.
    """
    if not d.is_monotone():
        raise DNotMonotone()
    if not linearizable_by_one_node(h, u, grouping, r):
        raise StructuralConditionFailed()
    value = via_grouping(grouping, d)
    p = two_stable_union(h, u)
    anchor = next((block for block in grouping.blocks if p and p & ~block == 0), 0)
    sigma = value(anchor)
    gamma = [Fraction(0)] * h.n
    if r is not None:
        gamma[r] = value(0) - sigma
    for v in bits(u):
        near = r is not None and h.has_edge(v, r)
        gamma[v] = value(1 << v) - (sigma if near else value(0))
    return Linearization(h, u, tuple(gamma), sigma, tuple(range(h.n)))


def verify_linearization(lin: Linearization, d: ValueFunction, limits: Limits | None = None) -> bool:
    """Check the defining identity by enumerating the stable sets of ``h``.

    ``d`` is keyed by stable sets in caller ids.
    """
    best: dict[NodeSet, Fraction] = {}
    for s in enumerate_stable_sets(lin.h, limits=limits):
        t = s & lin.a
        value = sum((lin.gamma[v] for v in bits(s)), Fraction(0))
        if t not in best or value > best[t]:
            best[t] = value
    return all(best[t] == d(lin.to_caller(t)) - lin.sigma for t in best)


def _record_gadget(
    g: Graph, a: NodeSet, limits: Limits | None
) -> tuple[Graph, dict[NodeSet, int], tuple[int | None, ...]]:
    order = list(bits(a))
    sub = induced_subgraph(g, a)
    record = add_record(sub, sub.full, limits=limits)
    origin = tuple(order) + (None,) * (record.graph.n - sub.n)
    return record.graph, record.nodes, origin


def record_linearization(g: Graph, a: NodeSet, d: ValueFunction, limits: Limits | None = None) -> Linearization:
    """G_A plus a record on A: γ = 0 on A, γ at the record node of T is d(T), σ = 0.

    Raises
    ------
    DNotMonotone
        If d is negative somewhere or grows along inclusion.
    """
    h, nodes, origin = _record_gadget(g, a, limits)
    order = [v for v in origin if v is not None]
    values = {t: d(spread(t, order)) for t in nodes}
    for t, value in values.items():
        if value < 0 or any(values[t & ~(1 << v)] < value for v in bits(t)):
            raise DNotMonotone()
    gamma = [Fraction(0)] * h.n
    for t, node in nodes.items():
        gamma[node] = values[t]
    return Linearization(h, (1 << len(order)) - 1, tuple(gamma), Fraction(0), origin)


def toggle_parts(values: Mapping[NodeSet, Fraction]) -> tuple[dict[int, Fraction], Fraction, dict[NodeSet, Fraction]]:
    """Split d into δ per node, a constant and a nonnegative non-increasing remainder.

    δ_v is the largest increase of d when v joins a stable set, which leaves
    d(T) − δ(T) non-increasing; its minimum becomes the constant.
    """
    nodes = 0
    for t in values:
        nodes |= t
    delta = {}
    for v in bits(nodes):
        delta[v] = max(values[t | 1 << v] - values[t] for t in values if not t >> v & 1 and t | 1 << v in values)

    def linear(t: NodeSet) -> Fraction:
        return sum((delta[v] for v in bits(t)), Fraction(0))

    constant = min(values[t] - linear(t) for t in values)
    return delta, constant, {t: values[t] - linear(t) - constant for t in values}


def toggle_linearization(g: Graph, a: NodeSet, d: ValueFunction, limits: Limits | None = None) -> Linearization:
    """Linearize an arbitrary d: δ on A, the constant as σ, the remainder on the record nodes."""
    h, nodes, origin = _record_gadget(g, a, limits)
    order = [v for v in origin if v is not None]
    delta, sigma, rest = toggle_parts({t: d(spread(t, order)) for t in nodes})
    gamma = [Fraction(0)] * h.n
    for v, value in delta.items():
        gamma[v] = value
    for t, node in nodes.items():
        gamma[node] = rest[t]
    return Linearization(h, (1 << len(order)) - 1, tuple(gamma), sigma, origin)
