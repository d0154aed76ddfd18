import pytest

from src.app.core.config import Limits
from src.app.core.exceptions.decomposition_exceptions import InvalidSeparation, RootNotClique
from src.app.core.exceptions.graph_exceptions import CapExceeded
from src.app.graphs.core import Graph, singletons
from src.app.graphs.separation import (
    SeparationKind,
    amalgam,
    amalgam_exhaustive,
    clique_cut,
    find_adjacent_twins,
    find_amalgam,
    find_clique_cutset,
    find_fan_base,
    find_one_linearizable,
    fits,
    gen_amalgam,
    linearizable_from_amalgam,
    minimal_separators,
)
from src.app.graphs.templates import make_region

from .helpers import generators


def five_node_amalgam():
    g = generators.amalgam_example()
    return g, amalgam(g, 0b00001, 0b00010, 0b00100, 0b01000, 0b10000)


def test_amalgam_constructor_and_trace() -> None:
    g, sep = five_node_amalgam()
    assert sep.kind is SeparationKind.AMALGAM
    assert sep.u == 0b00110
    assert sep.v2 == 0b11000
    assert sep.to_trace(g) == {
        "kind": "amalgam",
        "V1": ["1"],
        "U": ["2", "3"],
        "V2": ["4", "5"],
        "grouping": [["2"], ["3"]],
    }


def test_amalgam_needs_two_nodes_per_side() -> None:
    g = generators.amalgam_example()
    with pytest.raises(InvalidSeparation):
        amalgam(g, 0, 0b00011, 0b00100, 0b01000, 0b10000)


def test_find_amalgam_picks_the_smallest_servant_side() -> None:
    g = generators.amalgam_example()
    sep = find_amalgam(g)
    assert sep is not None
    assert sep.kind is SeparationKind.AMALGAM
    assert sep.v2 == 0b00011
    sep.validate(g)


def test_find_amalgam_agrees_with_exhaustive_search() -> None:
    assert amalgam_exhaustive(generators.amalgam_example())
    assert not amalgam_exhaustive(generators.cycle(5))
    assert find_amalgam(generators.cycle(5)) is None


def test_find_amalgam_is_capped() -> None:
    with pytest.raises(CapExceeded):
        find_amalgam(generators.cube(), Limits(amalgam_cap=4))


def test_minimal_separators_of_c4() -> None:
    assert minimal_separators(generators.cycle(4)) == [0b0101, 0b1010]


def test_find_clique_cutset() -> None:
    g = generators.path(3)
    cut = find_clique_cutset(g)
    assert cut is not None
    assert (cut.v1, cut.u, cut.v2) == (0b100, 0b010, 0b001)
    assert find_clique_cutset(g, avoid=0b001).v2 == 0b100
    assert find_clique_cutset(generators.cycle(5)) is None


def test_find_clique_cutset_of_a_fan() -> None:
    cut = find_clique_cutset(generators.fan(7, [1, 4, 7]))
    assert cut is not None
    assert cut.u == 1 << 3 | 1 << 7
    assert cut.v2 == 0b111


def test_disconnected_graph_has_an_empty_cutset() -> None:
    cut = find_clique_cutset(Graph.from_edges(3, [(0, 1)]))
    assert cut is not None
    assert (cut.u, cut.v2) == (0, 0b100)


def test_clique_cut_validation() -> None:
    with pytest.raises(InvalidSeparation):
        clique_cut(generators.path(3), 0b001, 0, 0b110)
    with pytest.raises(InvalidSeparation):
        clique_cut(generators.cycle(4), 0b0001, 0b1010, 0b0100)


def test_adjacent_twins() -> None:
    sep = find_adjacent_twins(generators.clique(3))
    assert sep is not None
    assert sep.kind is SeparationKind.ONE_LIN
    assert (sep.v1, sep.u, sep.v2) == (0, 0b011, 0b100)
    assert find_adjacent_twins(generators.path(3)) is None


def test_one_linearizable_needs_a_clique_root() -> None:
    with pytest.raises(RootNotClique):
        find_one_linearizable(generators.path(3), 0b101)
    assert find_one_linearizable(generators.clique(4)) is None
    assert find_one_linearizable(generators.cycle(5)) is None


def test_linearizable_from_amalgam_keeps_the_root_on_the_master_side() -> None:
    g, am = five_node_amalgam()
    left = linearizable_from_amalgam(g, am, 0b00001)
    assert left.kind is SeparationKind.ONE_LIN
    assert left.u == 0b00110
    right = linearizable_from_amalgam(g, am, 0b10000)
    assert right.u == 0b01100
    assert right.v1 == 0b10000


def test_find_fan_base() -> None:
    sep = find_fan_base(generators.fan(7, [1, 4, 7]))
    assert sep is not None
    # W = {0, 1} ties with {1, 2} under base (0, 7, 3); the lower mask wins
    assert sep.base == (2, 3, 7)
    assert sep.v2 == 0b00000011
    assert find_fan_base(generators.cycle(5)) is None


def test_generalized_amalgam() -> None:
    g = generators.three_block_star()
    sep = gen_amalgam(g, 0b1, [0b1100000, 0b0000110, 0b0011000])
    assert sep.blocks == (0b0000110, 0b0011000, 0b1100000)
    with pytest.raises(InvalidSeparation):
        gen_amalgam(g, 0b1, [0b0000110, 0b0011000])


def test_regions_must_stay_on_one_side() -> None:
    g = generators.path(3)
    sep = clique_cut(g, 0b100, 0b010, 0b001)
    assert fits(sep, [make_region(g, singletons(0b011))])
    assert not fits(sep, [make_region(g, singletons(0b101))])
