from fractions import Fraction

import pytest

from src.app.core.exceptions.decomposition_exceptions import DNotMonotone, StructuralConditionFailed
from src.app.decomposition.linearize import (
    linearizable_by_one_node,
    linearize_from_table,
    record_linearization,
    toggle_linearization,
    toggle_parts,
    two_stable_union,
    verify_linearization,
    via_grouping,
)
from src.app.graphs.core import Grouping, popcount
from src.app.graphs.templates import ServiceTable

from .helpers import generators


def shrinking(t: int) -> Fraction:
    return Fraction(3 - popcount(t))


def growing(t: int) -> Fraction:
    return Fraction(popcount(t))


def test_two_stable_union() -> None:
    assert two_stable_union(generators.clique(3), 0b111) == 0
    assert two_stable_union(generators.path(3), 0b111) == 0b101


class TestOneNode:
    grouping = Grouping((0b101,))
    table = ServiceTable(generators.path(1), 1, {0: Fraction(2), 1: Fraction(1)})

    def test_middle_node_linearizes_the_ends(self) -> None:
        g = generators.path(3)
        assert linearizable_by_one_node(g, 0b101, self.grouping, 1)
        lin = linearize_from_table(g, 0b101, self.grouping, self.table, 1)
        assert lin.sigma == 1
        assert lin.gamma == (0, 1, 0)
        assert verify_linearization(lin, via_grouping(self.grouping, self.table))

    def test_needs_a_node_next_to_the_pair(self) -> None:
        with pytest.raises(StructuralConditionFailed):
            linearize_from_table(generators.path(3), 0b101, self.grouping, self.table)

    def test_rejects_growing_tables(self) -> None:
        table = ServiceTable(generators.path(1), 1, {0: Fraction(0), 1: Fraction(1)})
        with pytest.raises(DNotMonotone):
            linearize_from_table(generators.path(3), 0b101, self.grouping, table, 1)


class TestRecords:
    def test_record_linearization(self) -> None:
        g = generators.path(3)
        lin = record_linearization(g, g.full, shrinking)
        assert lin.h.n == 8
        assert lin.sigma == 0
        assert verify_linearization(lin, shrinking)

    def test_record_linearization_needs_monotone_values(self) -> None:
        g = generators.path(3)
        with pytest.raises(DNotMonotone):
            record_linearization(g, g.full, growing)

    def test_toggle_handles_growing_values(self) -> None:
        g = generators.cycle(4)
        lin = toggle_linearization(g, 0b0111, growing)
        assert lin.to_caller(lin.a) == 0b0111
        assert verify_linearization(lin, growing)


def test_toggle_parts() -> None:
    delta, constant, rest = toggle_parts({0: Fraction(1), 1: Fraction(4), 2: Fraction(0)})
    assert delta == {0: 3, 1: -1}
    assert constant == 1
    assert rest == {0: 0, 1: 0, 2: 0}
