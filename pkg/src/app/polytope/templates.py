"""Formulations over template decomposition lists.

Every list node becomes a graph H: its template graph with one record per
region. Records are named after the servant they link to and keyed by
pattern sets, so a master and its servant meet on the same record variables.
A servant is described by the union, over the stable sets T of its pattern,
of the faces where its root spells T and the record says r_T.
"""

from collections.abc import Mapping

from ..core.config import Limits, default_limits
from ..core.exceptions.decomposition_exceptions import NotGoodFan
from ..core.exceptions.polytope_exceptions import MissingLeaf, SizeBoundViolated
from ..core.logger import logging
from ..decomposition.engine import DecompList, DecompNode
from ..decomposition.fans import good_fan_base
from ..decomposition.solver import root_map
from ..graphs.core import (
    Graph,
    Label,
    LabelKind,
    add_record,
    bits,
    delete,
    enumerate_stable_sets,
    induced_subgraph,
    pattern_graph,
    pattern_key,
)
from ..graphs.templates import RootedTemplate
from .composition import chvatal_formulation
from .formulation import (
    ExtendedFormulation,
    Relation,
    balas_union,
    fix,
    intersect,
    make_row,
    node_variables,
    var_name,
)

logger = logging.getLogger(__name__)


def record_variables(lst: DecompList, uid: int, prefix: str = "") -> dict[int, str]:
    """Record variable per stable set of the pattern the servant ``uid`` was split off with."""
    step = next(s for s in lst.steps if s.servant == uid)
    pattern = pattern_graph(step.parent, step.separation.grouping)
    stables = enumerate_stable_sets(pattern, cap=pattern.n)
    return {t: var_name(Label(LabelKind.RECORD, f"{prefix}s{uid}{pattern_key(t)}")) for t in stables}


def record_graph(t: RootedTemplate, prefix: str = "", limits: Limits | None = None) -> Graph:
    """The template graph with a pattern record per region; template nodes keep their ids."""
    h = t.graph
    for i, region in enumerate(t.regions):
        tag = f"{prefix}s{region.link}" if region.link is not None else f"{prefix}{region.tag or 'w'}{i}"
        h = add_record(h, region.support, tag, limits, grouping=region.grouping).graph
    return h


def apex_union(h: Graph, c: int, limits: Limits | None = None) -> ExtendedFormulation:
    """pol(H) as conv of pol(H − c) with x_c = 0 and of χ^{c} with pol(H − N[c])."""
    names = node_variables(h)
    nbrs = h.adjacency[c]
    without = fix(chvatal_formulation(delete(h, 1 << c), limits), {names[c]: 0})
    rest = induced_subgraph(h, h.full & ~nbrs & ~(1 << c))
    values = {names[c]: 1} | {names[v]: 0 for v in bits(nbrs)}
    with_apex = fix(chvatal_formulation(rest, limits), values)
    return balas_union([without.with_original(names), with_apex.with_original(names)], tag="apex")


def fan_record_formulation(t: RootedTemplate, limits: Limits | None = None, prefix: str = "") -> ExtendedFormulation:
    """pol of a good fan-template with its region records, split on the apex.

    Raises
    ------
    NotGoodFan
        If ``t`` is not a good fan-template.
    """
    base = good_fan_base(t)
    if base is None:
        raise NotGoodFan()
    return apex_union(record_graph(t, prefix, limits), base[1], limits)


def _scoped_roots(node: DecompNode, prefix: str) -> RootedTemplate:
    t = node.template
    g = t.graph
    for v in bits(t.root):
        label = g.labels[v]
        g = g.relabel(v, Label(label.kind, f"{prefix}n{node.uid}.{label.name}"))
    return RootedTemplate(g, t.root, t.regions, t.root_tag)


def template_leaves(lst: DecompList, limits: Limits | None = None, prefix: str = "") -> dict[int, ExtendedFormulation]:
    """One formulation per list node over its record graph.

    Servant roots are renamed into the node's own scope, and a servant is
    restricted to the union of its root faces.
    """
    limits = limits or default_limits()
    out = {}
    for node in lst.nodes:
        t = node.template if node.uid == 0 else _scoped_roots(node, prefix)
        h = record_graph(t, prefix, limits)
        if t.area and good_fan_base(t) is not None:
            base = good_fan_base(t)
            f = apex_union(h, base[1], limits)
            logger.debug(f"node {node.uid}: fan with apex {h.name(base[1])}")
        else:
            f = chvatal_formulation(h, limits)
        if node.uid != 0:
            f = _root_faces(lst, node, h, f, prefix)
        out[node.uid] = f
    return out


def _root_faces(
    lst: DecompList, node: DecompNode, h: Graph, f: ExtendedFormulation, prefix: str
) -> ExtendedFormulation:
    step = next(s for s in lst.steps if s.servant == node.uid)
    created = root_map(lst, node.uid)
    index = {v: step.targets.index(created[v]) for v in bits(node.template.root)}
    records = record_variables(lst, node.uid, prefix)
    names = node_variables(h)
    faces = []
    for t in records:
        values = {names[v]: t >> i & 1 for v, i in index.items()}
        values |= {r: int(key == t) for key, r in records.items()}
        faces.append(fix(f, values).with_original(f.original + tuple(records.values())))
    return balas_union(faces, tag="root")


def template_formulation(
    lst: DecompList,
    leaves: Mapping[int, ExtendedFormulation],
    g: Graph,
    limits: Limits | None = None,
    prefix: str = "",
) -> ExtendedFormulation:
    """pol(G) from the leaf formulations of a template list, glued by ``x(R) = 1`` per record.

    Raises
    ------
    MissingLeaf
        If a list node has no leaf formulation.
    SizeBoundViolated
        If the result exceeds ``C·k`` plus the leaf sizes.
    """
    limits = limits or default_limits()
    missing = [node.uid for node in lst.nodes if node.uid not in leaves]
    if missing:
        raise MissingLeaf(f"No leaf formulation for list nodes {missing}.")
    parts = [leaves[node.uid] for node in lst.nodes]
    f = intersect(parts, note=f"template list of length {len(lst)}")
    glue = [
        make_row(dict.fromkeys(record_variables(lst, step.servant, prefix).values(), 1), Relation.EQ, 1, "record")
        for step in lst.steps
    ]
    f = f.with_rows(glue, f"{len(glue)} records glued").with_original(node_variables(g))
    k = len(lst)
    leaf_size = sum(part.size for part in parts)
    if f.size > limits.template_size_constant * k + leaf_size:
        raise SizeBoundViolated(f"Size {f.size} exceeds {limits.template_size_constant}·{k} + {leaf_size}.")
    logger.info(f"template formulation of size {f.size}: {leaf_size} in leaves, {f.size - leaf_size} for {k} nodes")
    return f
