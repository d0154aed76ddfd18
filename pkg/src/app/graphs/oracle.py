"""Brute-force ground truth: every other engine is checked against these."""

from collections.abc import Sequence
from fractions import Fraction

from ..core.config import Limits, default_limits
from ..core.exceptions.graph_exceptions import CapExceeded
from .core import Graph, NodeSet, bits, enumerate_stable_sets, weight_of
from .templates import RootedTemplate, ServiceTable

Weights = Sequence[Fraction]


def unit_weights(g: Graph) -> tuple[Fraction, ...]:
    return tuple(Fraction(1) for _ in range(g.n))


def mwss_brute(g: Graph, w: Weights, limits: Limits | None = None) -> tuple[Fraction, NodeSet]:
    """Maximum weight of a stable set and the smallest optimal bitmask."""
    best, witness = Fraction(0), 0
    for s in enumerate_stable_sets(g, limits=limits):
        value = weight_of(w, s)
        if value > best:
            best, witness = value, s
    return best, witness


def rooted_mwss_brute(g: Graph, z: NodeSet, w: Weights, limits: Limits | None = None) -> ServiceTable:
    return template_mwss_brute(RootedTemplate(g, z), w, limits)


def template_mwss_brute(t: RootedTemplate, w: Weights, limits: Limits | None = None) -> ServiceTable:
    """Per stable R of the root: max of w(S) plus every region term, over stable S with S ∩ Z = R."""
    values: dict[NodeSet, Fraction] = {}
    witnesses: dict[NodeSet, NodeSet] = {}
    for s in enumerate_stable_sets(t.graph, limits=limits):
        r = s & t.root
        value = weight_of(w, s) + t.correction(s)
        if r not in values or value > values[r]:
            values[r], witnesses[r] = value, s
    return ServiceTable(t.graph, t.root, values, witnesses)


def polytope_vertices(g: Graph, limits: Limits | None = None) -> set[tuple[int, ...]]:
    limits = limits or default_limits()
    if g.n > limits.polytope_cap:
        raise CapExceeded(f"Vertex enumeration limited to {limits.polytope_cap} nodes.")
    out = set()
    for s in enumerate_stable_sets(g, cap=limits.polytope_cap):
        out.add(tuple(1 if s >> v & 1 else 0 for v in range(g.n)))
    return out


def maximum_stable_sets(g: Graph, limits: Limits | None = None) -> list[NodeSet]:
    stables = enumerate_stable_sets(g, limits=limits)
    alpha = max(len(list(bits(s))) for s in stables)
    return [s for s in stables if len(list(bits(s))) == alpha]
