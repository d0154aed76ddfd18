"""Composition rules for stable set polytopes across node cutsets.

Each rule takes formulations of smaller graphs and glues them on shared
node variables. Records and clique lifts are ordinary nodes with their own
labels, so the gluing is done by variable name.
"""

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from ..core.config import Limits, default_limits
from ..core.exceptions.decomposition_exceptions import InvalidSeparation
from ..core.exceptions.graph_exceptions import CapExceeded, RecordTooLarge
from ..core.exceptions.polytope_exceptions import ShapeMismatch, SpaceMismatch
from ..core.logger import logging
from ..graphs.core import (
    CliqueLift,
    Graph,
    Label,
    LabelKind,
    NodeSet,
    add_node,
    add_record,
    bits,
    clique_lift,
    delete,
    induced_subgraph,
    mask_of,
    squeeze,
)
from ..graphs.separation import Separation, SeparationKind, find_clique_cutset, gen_amalgam
from .formulation import (
    CliqueFamily,
    ExtendedFormulation,
    Relation,
    Row,
    at_least,
    balas_union,
    face,
    fix,
    intersect,
    is_auxiliary,
    leaf_formulation,
    make_row,
    node_variables,
    point_formulation,
    record_cliques,
    var_name,
)

logger = logging.getLogger(__name__)

Builder = Callable[[Graph], ExtendedFormulation]


# -------------- clique cutsets --------------
def chvatal_formulation(g: Graph, limits: Limits | None = None) -> ExtendedFormulation:
    """pol(G) from leaf formulations of the pieces left by repeated clique cutsets.

    Pieces above the leaf cap without a clique cutset fall back to a leaf
    formulation limited by the polytope cap.

    Raises
    ------
    CapExceeded
        If such a piece exceeds the polytope cap too.
    """
    limits = limits or default_limits()
    if g.n <= limits.leaf_cap:
        return leaf_formulation(g, limits)
    cut = find_clique_cutset(g)
    if cut is None:
        if g.n > limits.polytope_cap:
            raise CapExceeded(f"No clique cutset in a {g.n}-node piece above the polytope cap.")
        logger.info(f"{g.n}-node piece has no clique cutset, enumerating its stable sets")
        return leaf_formulation(g, limits, cap=limits.polytope_cap)
    parts = [chvatal_formulation(induced_subgraph(g, side | cut.u), limits) for side in (cut.v1, cut.v2)]
    return intersect(parts, node_variables(g), f"clique cutset {g.names(cut.u)}")


def compose_across_cutset(
    f1: ExtendedFormulation, f2: ExtendedFormulation, shared: Sequence[str]
) -> ExtendedFormulation:
    """Both systems at once, identified on ``shared``.

    Raises
    ------
    SpaceMismatch
        If one of the systems lacks a shared variable.
    """
    for f in (f1, f2):
        missing = set(shared) - set(f.variables)
        if missing:
            raise SpaceMismatch(f"Shared variables {sorted(missing)} are missing from a side.")
    original = dict.fromkeys(f1.original)
    original.update(dict.fromkeys(f2.original))
    return intersect([f1, f2], tuple(original), f"composed on {len(shared)} shared variables")


def cutset_formulation(
    g: Graph, sep: Separation, tag: str = "c", limits: Limits | None = None, build: Builder | None = None
) -> ExtendedFormulation:
    """pol(G) across any node cutset (V1, U, V2) through the record of U.

    Each side G_i(U) is formulated by ``build`` (clique cutsets by default) and
    restricted to the face where the cliques of ℒ(U) are tight.
    """
    limits = limits or default_limits()
    build = build or (lambda h: chvatal_formulation(h, limits))
    sides = []
    shared: tuple[str, ...] = ()
    for side in (sep.v1, sep.v2):
        within = side | sep.u
        order = list(bits(within))
        u = squeeze(sep.u, order)
        record = add_record(induced_subgraph(g, within), u, tag, limits)
        h = record.graph
        sides.append(face(build(h), record_cliques(h, u, record.nodes)))
        shared = node_variables(h, u | mask_of(record.nodes.values()))
    f = compose_across_cutset(sides[0], sides[1], shared)
    return f.with_original(node_variables(g))


# -------------- universal nodes --------------
def universal_formulation(g: Graph, u: int, rest: ExtendedFormulation) -> ExtendedFormulation:
    """conv of the single point χ^{u} and pol(G − u) with x_u = 0; ``rest`` formulates pol(G − u)."""
    names = node_variables(g)
    point = point_formulation(names, {names[u]: 1})
    without = fix(rest, {names[u]: 0}).with_original(names)
    return balas_union([point, without], tag="w")


# -------------- clique lifts --------------
def clique_lift_projection(f: ExtendedFormulation, lift: CliqueLift, g: Graph) -> ExtendedFormulation:
    """pol(G) from a formulation of its clique lift: x_v is the sum of the lift nodes S̃ with v in S.

    Lift nodes missing from ``f`` count as zero.
    """
    names = node_variables(g)
    known = set(f.variables)
    rows = []
    u = mask_of(v for s in lift.nodes for v in bits(s))
    for v in bits(u):
        coeffs = {names[v]: 1}
        for s, node in lift.nodes.items():
            lifted = var_name(lift.graph.labels[node])
            if s >> v & 1 and lifted in known:
                coeffs[lifted] = -1
        rows.append(make_row(coeffs, Relation.EQ, 0, "lift"))
    return f.with_rows(rows, f"clique lift of {g.names(u)}").with_original(names)


# -------------- amalgams --------------
@dataclass(frozen=True)
class AmalgamBlocks:
    """The two blocks of an amalgam, each side plus a node ∅ᵢ adjacent to Aᵢ ∪ K."""

    g1: Graph
    g2: Graph
    k: tuple[str, ...]
    empty1: str
    empty2: str


def amalgam_blocks(g: Graph, sep: Separation, tag: str = "a") -> AmalgamBlocks:
    if sep.kind is not SeparationKind.AMALGAM:
        raise InvalidSeparation(f"Expected an amalgam, got {sep.kind.value}.")
    v2 = sep.v2 & ~sep.a2
    graphs = []
    for i, (side, a) in enumerate(((sep.v1, sep.a1), (v2, sep.a2)), start=1):
        within = side | a | sep.k
        order = list(bits(within))
        label = Label(LabelKind.POWER, f"{tag}empty{i}")
        graphs.append(add_node(induced_subgraph(g, within), squeeze(a | sep.k, order), label))
    g1, g2 = graphs
    return AmalgamBlocks(g1, g2, node_variables(g, sep.k), var_name(g1.labels[-1]), var_name(g2.labels[-1]))


def amalgam_compose(
    f1: ExtendedFormulation, f2: ExtendedFormulation, blocks: AmalgamBlocks, g: Graph
) -> ExtendedFormulation:
    """pol(G) from pol(G1) and pol(G2) plus ``x(K) + x∅1 + x∅2 ≥ 1``.

    Raises
    ------
    SpaceMismatch
        If a system misses the node variables of its block.
    """
    for f, block in ((f1, blocks.g1), (f2, blocks.g2)):
        missing = set(node_variables(block)) - set(f.variables)
        if missing:
            raise SpaceMismatch(f"Block system lacks {sorted(missing)}.")
    f = intersect([f1, f2], node_variables(g), "amalgam blocks")
    row = at_least(dict.fromkeys(blocks.k + (blocks.empty1, blocks.empty2), 1), 1, "amalgam")
    return f.with_rows([row], "amalgam")


def burlet_fonlupt_eliminate(
    sys1: ExtendedFormulation, sys2: ExtendedFormulation, k: Sequence[str], empty1: str, empty2: str
) -> ExtendedFormulation:
    """Project ∅1 and ∅2 out of the amalgam system given facet-shaped block systems.

    Each block system may hold nonnegativity rows, rows free of its ∅ node and
    rows ``x∅ + c·x ≤ γ``. Every pair of the latter becomes
    ``(c1 + c2)·x − x(K) ≤ γ1 + γ2 − 1``.

    Raises
    ------
    ShapeMismatch
        If a system holds any other kind of row or auxiliary variables.
    """
    kept: list[Row] = []
    seen: set[tuple] = set()
    tops: list[list[tuple[dict[str, Fraction], Fraction]]] = []
    for f, empty in ((sys1, empty1), (sys2, empty2)):
        if empty not in f.variables:
            raise ShapeMismatch(f"Block system lacks its node {empty}.")
        if any(is_auxiliary(v) for v in f.variables):
            raise ShapeMismatch("Block systems must live in the node space of their block.")
        top = []
        for row in f.rows:
            if row.relation is not Relation.LE:
                raise ShapeMismatch(f"Row {row.name} is an equality.")
            a = row.coefficient(empty)
            if row.is_nonnegativity() and a:
                continue
            if not a:
                if row.key not in seen:
                    seen.add(row.key)
                    kept.append(row)
            elif a == 1:
                top.append((row.without(empty), row.rhs))
            else:
                raise ShapeMismatch(f"Row {row.name} has coefficient {a} on {empty}.")
        tops.append(top)
    composed = []
    for c1, g1 in tops[0]:
        for c2, g2 in tops[1]:
            coeffs = dict(c1)
            for v, c in c2.items():
                coeffs[v] = coeffs.get(v, Fraction(0)) + c
            for v in k:
                coeffs[v] = coeffs.get(v, Fraction(0)) - 1
            composed.append(make_row(coeffs, Relation.LE, g1 + g2 - 1, "bf"))
    variables = dict.fromkeys(v for f in (sys1, sys2) for v in f.variables if v not in (empty1, empty2))
    original = dict.fromkeys(v for f in (sys1, sys2) for v in f.original if v not in (empty1, empty2))
    meta = (f"{len(tops[0])}x{len(tops[1])} composed rows",)
    return ExtendedFormulation(tuple(variables), tuple(kept + composed), tuple(original), meta)


# -------------- generalized amalgams --------------
@dataclass(frozen=True)
class GeneralizedAmalgam:
    """One graph G(K, W) per block and the connector with its tight cliques ℒ(K, 𝒲)."""

    parts: tuple[Graph, ...]
    connector: Graph
    family: CliqueFamily


def boundary_classes(g: Graph, k: NodeSet, w: NodeSet) -> list[NodeSet]:
    """Boundary nodes of W in G − K grouped by their neighbors outside W."""
    classes: dict[NodeSet, NodeSet] = {}
    for v in bits(w):
        outside = g.adjacency[v] & ~(w | k)
        if outside:
            classes[outside] = classes.get(outside, 0) | 1 << v
    return sorted(classes.values())


def generalized_amalgam_graphs(
    g: Graph, k: NodeSet, blocks: Sequence[NodeSet], tag: str = "g", limits: Limits | None = None
) -> GeneralizedAmalgam:
    """G(K, W) for every block W and the connector Ĝ(K, 𝒲); K must be a clique.

    Raises
    ------
    RecordTooLarge
        If a block has more subcollections of boundary classes than the record cap.
    """
    limits = limits or default_limits()
    if not g.is_clique(k):
        raise InvalidSeparation("K must be a clique; lift it first.")
    parts = []
    powers: list[list[tuple[Label, NodeSet]]] = []
    for i, w in enumerate(blocks):
        classes = boundary_classes(g, k, w)
        if 1 << len(classes) > limits.record_cap:
            raise RecordTooLarge(f"Block {i} has {len(classes)} boundary classes.")
        boundary = mask_of(v for c in classes for v in bits(c))
        within = k | w
        order = list(bits(within))
        h = induced_subgraph(g, within)
        power = []
        first = h.n
        for x in range(1 << len(classes)):
            union = mask_of(v for j in bits(x) for v in bits(classes[j]))
            label = Label(LabelKind.POWER, f"{tag}w{i}[" + ",".join(str(j) for j in bits(x)) + "]")
            nbrs = squeeze((boundary & ~union) | k, order) | mask_of(range(first, h.n))
            h = add_node(h, nbrs, label)
            power.append((label, union))
        parts.append(h)
        powers.append(power)

    kk = list(bits(k))
    n = len(kk) + sum(len(p) for p in powers)
    adjacency = [0] * n
    labels = [g.labels[v] for v in kk]
    ids: list[list[int]] = []
    nxt = len(kk)
    for power in powers:
        ids.append(list(range(nxt, nxt + len(power))))
        labels += [label for label, _ in power]
        nxt += len(power)
    everything = (1 << n) - 1
    for a in range(len(kk)):
        adjacency[a] = everything & ~(1 << a)
    for i, power in enumerate(powers):
        own = mask_of(ids[i])
        for j, (_, union) in enumerate(power):
            v = ids[i][j]
            nbrs = mask_of(range(len(kk))) | (own & ~(1 << v))
            for i2, other in enumerate(powers):
                if i2 == i:
                    continue
                for j2, (_, union2) in enumerate(other):
                    if g.neighborhood(union) & union2:
                        nbrs |= 1 << ids[i2][j2]
            adjacency[v] = nbrs
    connector = Graph(tuple(adjacency), tuple(labels))
    family = CliqueFamily(connector, tuple(mask_of(range(len(kk))) | mask_of(i) for i in ids))
    return GeneralizedAmalgam(tuple(parts), connector, family)


def generalized_amalgam_compose(
    parts: Sequence[ExtendedFormulation], connector: ExtendedFormulation, family: CliqueFamily
) -> ExtendedFormulation:
    """Formulations of every G(K, W) glued with the connector on the face where ℒ(K, 𝒲) is tight."""
    glued = face(connector, family)
    return intersect(list(parts) + [glued], note=f"generalized amalgam over {len(parts)} blocks")


def generalized_amalgam_formulation(
    g: Graph, sep: Separation, tag: str = "g", limits: Limits | None = None, build: Builder | None = None
) -> ExtendedFormulation:
    """pol(G) along a generalized amalgam (U, 𝒲), or an amalgam read as one.

    A U that is not a clique is replaced by its clique lift without the node of
    the empty set first.
    """
    limits = limits or default_limits()
    build = build or (lambda h: chvatal_formulation(h, limits))
    if sep.kind is SeparationKind.AMALGAM:
        sep = gen_amalgam(g, sep.k, (sep.v1 | sep.a1, sep.v2))
    elif sep.kind is not SeparationKind.GEN_AMALGAM:
        raise InvalidSeparation(f"Expected a generalized amalgam, got {sep.kind.value}.")
    if g.is_clique(sep.u):
        pieces = generalized_amalgam_graphs(g, sep.u, sep.blocks, tag, limits)
        parts = [build(h) for h in pieces.parts]
        f = generalized_amalgam_compose(parts, build(pieces.connector), pieces.family)
        return f.with_original(node_variables(g))
    lift = clique_lift(g, sep.u, f"{tag}L", limits)
    lifted = delete(lift.graph, 1 << lift.nodes[0])
    kept = len(lift.order)
    k = lifted.full & ~mask_of(range(kept))
    blocks = [squeeze(w, lift.order) for w in sep.blocks]
    pieces = generalized_amalgam_graphs(lifted, k, blocks, tag, limits)
    parts = [build(h) for h in pieces.parts]
    f = generalized_amalgam_compose(parts, build(pieces.connector), pieces.family)
    return clique_lift_projection(f, lift, g)
