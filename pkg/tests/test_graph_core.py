import pytest

from src.app.core.config import Limits
from src.app.core.exceptions.graph_exceptions import CapExceeded, InvalidGraph, InvalidGrouping, RecordTooLarge
from src.app.graphs.core import (
    Graph,
    Grouping,
    Label,
    LabelKind,
    add_node,
    add_record,
    bits,
    clique_lift,
    coarsest_grouping,
    enumerate_stable_sets,
    hom,
    induced_subgraph,
    is_group,
    isomorphic,
    mask_of,
    maximal_group,
    pattern_graph,
    pattern_key,
    quotient_by_transversal,
    spread,
    squeeze,
    validate_grouping,
)

from .helpers import generators


def test_bitmask_helpers() -> None:
    assert list(bits(0b1011)) == [0, 1, 3]
    assert mask_of([0, 3]) == 0b1001
    assert spread(0b11, [2, 5]) == 0b100100
    assert squeeze(0b100100, [2, 5]) == 0b11
    assert pattern_key(0b101) == "[0,2]"


def test_graph_rejects_loops_and_asymmetry() -> None:
    with pytest.raises(InvalidGraph):
        Graph.from_edges(2, [(1, 1)])
    with pytest.raises(InvalidGraph):
        Graph((0b10, 0))
    with pytest.raises(InvalidGraph):
        Graph.from_edges(2, [(0, 1)], names=["a", "a"])


def test_induced_subgraph_renumbers_densely() -> None:
    g = generators.path(4)
    sub = induced_subgraph(g, 0b1101)
    assert sub.n == 3
    assert sub.edges() == [(1, 2)]
    assert [sub.name(v) for v in range(3)] == ["1", "3", "4"]


def test_stable_sets_of_a_path() -> None:
    assert enumerate_stable_sets(generators.path(3)) == [0, 1, 2, 4, 5]


def test_stable_set_enumeration_is_capped() -> None:
    with pytest.raises(CapExceeded):
        enumerate_stable_sets(generators.path(5), cap=3)


def test_record_of_three_node_path_has_five_nodes() -> None:
    g = generators.path(3)
    record = add_record(g, g.full, tag="r")
    assert len(record.nodes) == 5
    assert record.graph.n == 8
    r = mask_of(record.nodes.values())
    assert record.graph.is_clique(r)
    assert record.graph.adjacency[record.nodes[0]] & g.full == g.full
    assert record.graph.adjacency[record.nodes[0b101]] & g.full == 0b010
    assert all(record.graph.labels[v].kind is LabelKind.RECORD for v in bits(r))


def test_record_respects_cap() -> None:
    g = generators.cycle(5)
    with pytest.raises(RecordTooLarge):
        add_record(g, g.full, limits=Limits(record_cap=3))


def test_record_over_grouping_is_keyed_by_pattern_sets() -> None:
    g = generators.cycle(4)
    grouping = Grouping((0b0101, 0b1010))
    record = add_record(g, g.full, tag="s", grouping=grouping)
    # the pattern is an edge: stable sets {}, {0}, {1}
    assert sorted(record.nodes) == [0, 1, 2]
    assert record.graph.labels[record.nodes[1]] == Label(LabelKind.RECORD, "s[0]")
    assert record.graph.adjacency[record.nodes[1]] & g.full == 0b1010


def test_clique_lift_replaces_u_by_a_clique() -> None:
    g = generators.path(3)
    lift = clique_lift(g, 0b101, tag="l")
    assert lift.order == (1,)
    assert lift.graph.n == 5
    assert lift.nodes[0] == 1
    assert lift.graph.is_clique(mask_of(lift.nodes.values()))
    assert lift.graph.has_edge(0, lift.nodes[0b101])
    assert not lift.graph.has_edge(0, lift.nodes[0])


def test_add_node() -> None:
    g = add_node(generators.path(2), 0b11, Label(LabelKind.POWER, "p"))
    assert g.n == 3
    assert g.is_clique(g.full)


def test_grouping_blocks_are_disjoint() -> None:
    with pytest.raises(InvalidGrouping):
        Grouping((0b11, 0b1))
    with pytest.raises(InvalidGrouping):
        Grouping((0,))


def test_coarsest_grouping_merges_twins() -> None:
    g = generators.cycle(4)
    assert coarsest_grouping(g, 0b1010).blocks == (0b1010,)
    assert coarsest_grouping(generators.path(4), 0b0101).blocks == (0b0001, 0b0100)


def test_validate_grouping_rejects_a_non_group() -> None:
    with pytest.raises(InvalidGrouping):
        validate_grouping(generators.path(4), Grouping((0b0101,)))


def test_maximal_group_needs_v_in_u() -> None:
    with pytest.raises(ValueError):
        maximal_group(generators.path(3), 0b001, 2)


def test_pattern_graph_of_singletons_is_the_induced_graph() -> None:
    g = generators.path(3)
    pattern = pattern_graph(g, Grouping((1, 2, 4)))
    assert pattern.adjacency == g.adjacency
    assert all(label.kind is LabelKind.TRANSVERSAL for label in pattern.labels)


def test_quotient_by_transversal() -> None:
    g = generators.amalgam_example()
    quotient = quotient_by_transversal(g, 0b11000, Grouping((0b00010, 0b00100)))
    assert quotient.order == (1, 2, 3, 4)
    assert quotient.targets == (0, 1)
    assert quotient.graph.labels[0] == Label(LabelKind.TRANSVERSAL, "2")
    assert quotient.graph.has_edge(0, 1)


def test_hom_maps_blocks_to_transversals() -> None:
    grouping = Grouping((0b011, 0b100))
    assert hom(grouping, 0b010) == 0b001
    assert hom(grouping, 0b110, targets=[5, 7]) == 1 << 5 | 1 << 7


def test_isomorphic() -> None:
    g = generators.cycle(5)
    h = Graph.from_edges(5, [(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)])
    assert isomorphic(g, h)
    assert not isomorphic(g, generators.path(5))
    with pytest.raises(CapExceeded):
        isomorphic(g, h, Limits(isomorphism_cap=4))


def test_groups() -> None:
    assert is_group(generators.path(3), 0b001)
    assert is_group(generators.path(3), 0b101)
    assert not is_group(generators.path(4), 0b0011)
    assert not is_group(generators.path(3), 0)
