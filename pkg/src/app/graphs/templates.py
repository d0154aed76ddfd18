from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field
from fractions import Fraction

from ..core.exceptions.decomposition_exceptions import DomainMismatch, UnresolvedSigma
from .core import Graph, Grouping, NodeSet, bits, enumerate_stable_sets, hom, pattern_graph, popcount, stable_subsets


@dataclass(frozen=True)
class ServiceTable:
    """Rational values keyed by the stable subsets of ``support`` in ``graph``.

    ``witnesses`` (optional) holds, per key, an optimal stable set of the graph
    the table was solved on.
    """

    graph: Graph
    support: NodeSet
    values: Mapping[NodeSet, Fraction]
    witnesses: Mapping[NodeSet, NodeSet] | None = None

    def __post_init__(self) -> None:
        expected = stable_subsets(self.graph, self.support, 1 << popcount(self.support))
        if sorted(self.values) != expected:
            raise DomainMismatch(f"Table keys differ from the stable sets of {self.graph.names(self.support)}.")

    def __getitem__(self, key: NodeSet) -> Fraction:
        return self.values[key]

    def __iter__(self) -> Iterator[NodeSet]:
        return iter(sorted(self.values))

    def __len__(self) -> int:
        return len(self.values)

    def is_monotone(self) -> bool:
        """Nonnegative and inclusion-wise non-increasing."""
        keys = sorted(self.values)
        if any(self.values[t] < 0 for t in keys):
            return False
        return all(
            self.values[small] >= self.values[big] for small in keys for big in keys if small & big == small
        )

    def relabel(self, graph: Graph, mapping: Mapping[int, int]) -> "ServiceTable":
        """Move the keys onto ``graph`` through a node map ``old -> new``; witnesses are dropped."""
        values = {}
        for key, value in self.values.items():
            values[sum(1 << mapping[v] for v in bits(key))] = value
        support = sum(1 << mapping[v] for v in bits(self.support))
        return ServiceTable(graph, support, values)


def constant_table(graph: Graph, support: NodeSet, value: Fraction = Fraction(0)) -> ServiceTable:
    return ServiceTable(graph, support, {t: value for t in stable_subsets(graph, support, 1 << popcount(support))})


@dataclass(frozen=True)
class Region:
    """A grouping of template nodes carrying a value function on its pattern.

    Block ``i`` corresponds to pattern node ``i``. ``sigma`` is ``None`` while the
    value still has to come from the servant ``link``, whose root node
    ``targets[i]`` stands for block ``i``.
    """

    grouping: Grouping
    pattern: Graph
    sigma: ServiceTable | None = None
    link: int | None = None
    targets: tuple[int, ...] = ()
    tag: str = ""

    @property
    def support(self) -> NodeSet:
        return self.grouping.support

    def trace(self, s: NodeSet) -> NodeSet:
        return hom(self.grouping, s, range(len(self.grouping)))

    def value(self, s: NodeSet) -> Fraction:
        if self.sigma is None:
            raise UnresolvedSigma(f"Region {self.tag or self.pattern.names(self.pattern.full)} has no value yet.")
        return self.sigma[self.trace(s)]


def make_region(
    g: Graph,
    grouping: Grouping,
    sigma: ServiceTable | None = None,
    link: int | None = None,
    targets: tuple[int, ...] = (),
    tag: str = "",
) -> Region:
    return Region(grouping, pattern_graph(g, grouping), sigma, link, targets, tag)


@dataclass(frozen=True)
class RootedTemplate:
    graph: Graph
    root: NodeSet = 0
    regions: tuple[Region, ...] = field(default=())
    root_tag: str = ""

    @property
    def area(self) -> NodeSet:
        return self.graph.full & ~self.root

    @property
    def load(self) -> int:
        return popcount(self.area) - 1

    def validate(self) -> None:
        for region in self.regions:
            if region.pattern.adjacency != pattern_graph(self.graph, region.grouping).adjacency:
                raise DomainMismatch("Region pattern differs from the quotient of its blocks.")
            if region.sigma is not None:
                keys = enumerate_stable_sets(region.pattern, cap=len(region.grouping))
                if sorted(region.sigma.values) != keys:
                    raise DomainMismatch("Region value is not keyed by the pattern's stable sets.")

    def correction(self, s: NodeSet) -> Fraction:
        return sum((region.value(s) for region in self.regions), Fraction(0))
