from dataclasses import dataclass

import networkx as nx

from ..core.config import Limits, default_limits
from ..core.exceptions.graph_exceptions import CapExceeded
from ..core.logger import logging
from .core import Graph, NodeSet, bits, mask_of, popcount

logger = logging.getLogger(__name__)

Cycle = tuple[int, ...]


@dataclass(frozen=True)
class ClassReport:
    has_triangle: bool
    even_hole: Cycle | None
    cap: tuple[Cycle, int] | None
    is_cube: bool
    universal_node: int | None
    is_near_clique: bool

    @property
    def in_class(self) -> bool:
        return self.even_hole is None and self.cap is None


def _normalize(cycle: list[int]) -> Cycle:
    i = cycle.index(min(cycle))
    rotated = cycle[i:] + cycle[:i]
    if len(rotated) > 2 and rotated[-1] < rotated[1]:
        rotated = [rotated[0]] + rotated[:0:-1]
    return tuple(rotated)


def holes(g: Graph, limits: Limits | None = None) -> list[Cycle]:
    """Every chordless cycle of length at least four, by length then node order."""
    limits = limits or default_limits()
    if g.n > limits.hole_search_cap:
        raise CapExceeded(f"Hole search limited to {limits.hole_search_cap} nodes, got {g.n}.")
    found = {_normalize(list(c)) for c in nx.chordless_cycles(g.to_networkx()) if len(c) >= 4}
    return sorted(found, key=lambda c: (len(c), c))


def has_triangle(g: Graph) -> bool:
    return any(g.adjacency[u] & g.adjacency[v] for u, v in g.edges())


def find_even_hole(g: Graph, limits: Limits | None = None) -> Cycle | None:
    return next((c for c in holes(g, limits) if len(c) % 2 == 0), None)


def find_cap(g: Graph, limits: Limits | None = None) -> tuple[Cycle, int] | None:
    if not has_triangle(g):
        return None
    for hole in holes(g, limits):
        on_hole = mask_of(hole)
        for c in bits(g.full & ~on_hole):
            touch = g.adjacency[c] & on_hole
            if popcount(touch) == 2:
                a, b = bits(touch)
                if g.has_edge(a, b):
                    return hole, c
    return None


def is_cube(g: Graph) -> bool:
    if g.n != 8 or len(g.edges()) != 12 or any(g.degree(v) != 3 for v in range(8)):
        return False
    if not nx.is_bipartite(g.to_networkx()):
        return False
    # girth four: some pair shares two neighbors
    return any(popcount(g.adjacency[u] & g.adjacency[v]) >= 2 for u in range(8) for v in range(u + 1, 8))


def induced_path(g: Graph, x: NodeSet) -> list[int] | None:
    """Order of the nodes of X along an induced path of at least two nodes, or None."""
    size = popcount(x)
    if size < 2:
        return None
    degrees = {v: popcount(g.adjacency[v] & x) for v in bits(x)}
    if any(d == 0 or d > 2 for d in degrees.values()):
        return None
    if sum(degrees.values()) != 2 * (size - 1):
        return None
    ends = [v for v, d in degrees.items() if d == 1]
    if len(ends) != 2:
        return None
    path, prev, cur = [ends[0]], -1, ends[0]
    while len(path) < size:
        nxt = [v for v in bits(g.adjacency[cur] & x) if v != prev]
        if not nxt:
            return None
        prev, cur = cur, nxt[0]
        path.append(cur)
    return path


def fan_path(g: Graph, c: int) -> list[int] | None:
    """The u..v path of a fan with apex ``c``, oriented so that u < v."""
    path = induced_path(g, g.full & ~(1 << c))
    if path is None or not (g.has_edge(c, path[0]) and g.has_edge(c, path[-1])):
        return None
    return path if path[0] < path[-1] else path[::-1]


def is_fan(g: Graph) -> tuple[int, int, int] | None:
    """Base (u, c, v) if G is an induced u..v path plus an apex c adjacent to both ends."""
    for c in range(g.n):
        path = fan_path(g, c)
        if path is not None:
            return path[0], c, path[-1]
    return None


def fan_holes(g: Graph, base: tuple[int, int, int]) -> list[NodeSet]:
    """The apex together with each path segment between consecutive apex neighbors."""
    _, c, _ = base
    path = fan_path(g, c)
    if path is None:
        return []
    stops = [i for i, v in enumerate(path) if g.has_edge(c, v)]
    return [mask_of(path[a : b + 1]) | 1 << c for a, b in zip(stops, stops[1:])]


def near_clique(g: Graph) -> bool:
    if g.n <= 2 or g.is_clique(g.full):
        return True
    return any(g.is_clique(g.full & ~(1 << a) & ~(1 << b)) for a in range(g.n) for b in range(a + 1, g.n))


def universal_node(g: Graph) -> int | None:
    return next((v for v in range(g.n) if g.adjacency[v] == g.full & ~(1 << v)), None)


def recognize(g: Graph, limits: Limits | None = None) -> ClassReport:
    report = ClassReport(
        has_triangle=has_triangle(g),
        even_hole=find_even_hole(g, limits),
        cap=find_cap(g, limits),
        is_cube=is_cube(g),
        universal_node=universal_node(g),
        is_near_clique=near_clique(g),
    )
    logger.info(
        f"recognized graph on {g.n} nodes: triangle={report.has_triangle} even_hole={report.even_hole is not None} "
        f"cap={report.cap is not None} cube={report.is_cube}"
    )
    return report
